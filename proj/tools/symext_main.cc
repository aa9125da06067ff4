#include <iostream>
#include <string>
#include <vector>

#include "symext/cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return symext::cli::run(args, std::cout, std::cerr);
}
