#include "symext/serialize.h"

#include <charconv>
#include <cmath>
#include <ostream>

namespace symext {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void write_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

void write_value(std::string& out, const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                write_string(out, it.key());
                out += ':';
                write_value(out, it.value());
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                write_value(out, j[i]);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (std::isnan(x)) {
                out += "null";
            } else if (std::isinf(x)) {
                out += x > 0 ? "\"+inf\"" : "\"-inf\"";
            } else {
                out += format_double(x);
            }
            break;
        }
        default: out += j.dump(); break;
    }
}

Json vec(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    write_value(out, j);
    return out;
}

Json to_json(const BellProbs& p) {
    const auto q = p.p();
    return {{"p", {q[0], q[1], q[2], q[3]}}};
}

Json to_json(const AlphaCoords& a) { return {{"alpha", {a.alpha0, a.alpha1, a.alpha2, a.alpha3}}}; }

Json to_json(const HermMat& m) {
    bool real = true;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) real = real && m(i, j).imag() == 0;
    Json re = Json::array(), im = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json rr = Json::array(), ri = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            rr.push_back(m(i, j).real());
            ri.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    if (real) return re;
    return {{"re", re}, {"im", im}};
}

Json to_json(const ExtCertificate& c) {
    Json j = {{"kind", to_string(c.kind)}, {"Z", to_json(c.z)}, {"trace", c.trace()}};
    if (c.witness_x) {
        j["witness_x"] = {(*c.witness_x)[0], (*c.witness_x)[1], (*c.witness_x)[2]};
    } else {
        j["witness_x"] = nullptr;
    }
    return j;
}

Json to_json(const LiftReport& r) {
    return {{"min_eigenvalue", r.min_eigenvalue},
            {"trace_error", r.trace_error},
            {"swap_residual", r.swap_residual},
            {"marginal_error", r.marginal_error},
            {"ok", r.ok()}};
}

Json to_json(const SdpVerdict& v) {
    return {{"status", to_string(v.status)},
            {"objective", v.objective},
            {"margin", v.margin},
            {"gap", v.gap},
            {"slackness_residual", v.slackness_residual},
            {"iterations", v.iterations},
            {"converged", v.converged},
            {"dual_solution", vec(v.dual_solution)}};
}

Json to_json(const TraceRecord& r) {
    const auto q = r.p.p();
    return {{"kind", to_string(r.kind)},
            {"p", {q[0], q[1], q[2], q[3]}},
            {"alpha", {r.alpha.alpha0, r.alpha.alpha1, r.alpha.alpha2, r.alpha.alpha3}},
            {"d_c", r.d_c},
            {"success_prob", r.success_prob},
            {"total_success", r.total_success},
            {"extendible", r.extendible}};
}

Json to_json(const ScanRecord& r) {
    return {{"alpha1", r.verdict.alpha1},
            {"alpha2", r.verdict.alpha2},
            {"region", to_string(r.verdict.region)},
            {"d_c", r.d_c},
            {"symext", r.symext}};
}

void write_jsonl(std::ostream& out, const DistillTrace& trace) {
    for (const auto& r : trace.steps) out << dump_json(to_json(r)) << '\n';
    out << dump_json({{"terminated", to_string(trace.terminated)}}) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
    out << kScanCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_double(r.verdict.alpha1) << ',' << format_double(r.verdict.alpha2) << ','
            << to_string(r.verdict.region) << ',' << format_double(r.d_c) << ',' << (r.symext ? "true" : "false")
            << '\n';
    }
}

void write_jsonl(std::ostream& out, const std::vector<ScanRecord>& records) {
    for (const auto& r : records) out << dump_json(to_json(r)) << '\n';
}

}  // namespace symext
