#include "symext/cli.h"

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symext/analytic.h"
#include "symext/bell_state.h"
#include "symext/distill.h"
#include "symext/errors.h"
#include "symext/qkd.h"
#include "symext/sdp.h"
#include "symext/serialize.h"

namespace symext::cli {

namespace {

struct UsageError : DomainError {
    using DomainError::DomainError;
};

double parse_number(const std::string& flag, std::string_view text, std::size_t position = 0) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != last) {
        std::string where = position ? "element " + std::to_string(position) + " " : "";
        throw UsageError(flag + ": " + where + "'" + std::string(text) + "' is not a number");
    }
    if (!std::isfinite(v)) throw UsageError(flag + ": " + (position ? "element " + std::to_string(position) + " " : "") + "must be finite");
    return v;
}

std::vector<double> parse_list(const std::string& flag, const std::string& text, std::size_t n) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const auto piece = std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_number(flag, piece, out.size() + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() != n) {
        throw UsageError(flag + ": expected " + std::to_string(n) + " comma-separated values, got " + std::to_string(out.size()));
    }
    return out;
}

struct StateArgs {
    std::string p, alpha, scheme, q, t;
};

void add_state_options(CLI::App* app, StateArgs& s) {
    app->add_option("--p", s.p, "Bell-diagonal probabilities p_I,p_x,p_y,p_z");
    app->add_option("--alpha", s.alpha, "coordinates alpha1,alpha2,alpha3");
    app->add_option("--scheme", s.scheme, "six-state or bb84");
    app->add_option("--q", s.q, "QBER for --scheme");
    app->add_option("--t", s.t, "bb84 free parameter in [0, q/2]; default: worst case");
}

struct ResolvedState {
    BellProbs p;
    std::optional<SchemeState> scheme;
};

bool given(const std::string& s) { return !s.empty(); }

ResolvedState resolve_state(const StateArgs& s) {
    const int forms = given(s.p) + given(s.alpha) + given(s.scheme);
    if (forms != 1) throw UsageError("give exactly one of --p, --alpha or --scheme");
    if (!given(s.scheme) && (given(s.q) || given(s.t))) throw UsageError("--q and --t go with --scheme");
    if (given(s.p)) {
        const auto v = parse_list("--p", s.p, 4);
        return {BellProbs::from_p({v[0], v[1], v[2], v[3]}), std::nullopt};
    }
    if (given(s.alpha)) {
        const auto v = parse_list("--alpha", s.alpha, 3);
        return {alpha_to_p({1, v[0], v[1], v[2]}), std::nullopt};
    }
    if (!given(s.q)) throw UsageError("--scheme needs --q");
    SchemeState st{parse_scheme(s.scheme), parse_number("--q", s.q), 0};
    if (given(s.t)) {
        st.t = parse_number("--t", s.t);
    } else if (st.scheme == Scheme::bb84) {
        st.t = bb84_worst_t(st.q);
    }
    return {scheme_state(st), st};
}

double dc_or_nan(const BellProbs& p) {
    try {
        return d_c(p);
    } catch (const DomainError&) {
        return std::nan("");
    }
}

Json p_array(const BellProbs& p) {
    const auto q = p.p();
    return {q[0], q[1], q[2], q[3]};
}

Json alpha_array(const AlphaCoords& a) { return {a.alpha1, a.alpha2, a.alpha3}; }

Json scheme_json(const SchemeState& s) { return {{"name", to_string(s.scheme)}, {"q", s.q}, {"t", s.t}}; }

std::string csv_bool(bool b) { return b ? "true" : "false"; }

// -1 stands for "never"
std::string opt_int(int r) { return r >= 0 ? std::to_string(r) : ""; }

// analyze

struct AnalyzeArgs {
    StateArgs state;
    std::string output = "json";
};

int do_analyze(const AnalyzeArgs& args, std::ostream& out) {
    const auto in = resolve_state(args.state);
    const BellProbs& p = in.p;
    const AlphaCoords al = p_to_alpha(p);
    const auto qb = qber(p);
    const double dc = dc_or_nan(p);
    const bool sep = is_separable(p);
    const bool ext = has_symext(p);
    const auto terms = symext_terms(p);
    const auto region = classify_region(al.alpha1, al.alpha2).region;
    const int rounds = std::isnan(dc) ? -1 : rounds_to_break(p).value_or(-1);
    std::optional<ExtCertificate> cert;
    if (ext) cert = extension_certificate(al);

    if (args.output == "csv") {
        const auto q = p.p();
        out << "p_I,p_x,p_y,p_z,alpha1,alpha2,alpha3,q_x,q_y,q_z,d_c,separable,extendible,region,rounds_to_break,"
               "certificate,certificate_trace\n";
        for (double x : q) out << format_double(x) << ',';
        out << format_double(al.alpha1) << ',' << format_double(al.alpha2) << ',' << format_double(al.alpha3) << ',';
        for (double x : qb) out << format_double(x) << ',';
        out << format_double(dc) << ',' << csv_bool(sep) << ',' << csv_bool(ext) << ',' << to_string(region) << ','
            << opt_int(rounds) << ',' << (cert ? to_string(cert->kind) : "") << ','
            << (cert ? format_double(cert->trace()) : "") << '\n';
        return kExitOk;
    }

    Json j;
    if (in.scheme) j["scheme"] = scheme_json(*in.scheme);
    j["p"] = p_array(p);
    j["alpha"] = alpha_array(al);
    j["qber"] = {qb[0], qb[1], qb[2]};
    j["d_c"] = dc;
    j["separable"] = sep;
    j["extendible"] = ext;
    j["terms"] = {{"a", terms.a}, {"b", terms.b}, {"c", terms.c}};
    j["region"] = to_string(region);
    j["rounds_to_break"] = rounds >= 0 ? Json(rounds) : Json(nullptr);
    if (cert) {
        j["certificate"] = {{"kind", to_string(cert->kind)}, {"trace", cert->trace()}};
    } else {
        j["certificate"] = nullptr;
    }
    out << dump_json(j) << '\n';
    return kExitOk;
}

// distill

struct DistillArgs {
    StateArgs state;
    std::string output = "json";
    int max_rounds = 20;
    int block = 2;
    bool psteps = false;
};

int do_distill(const DistillArgs& args, std::ostream& out) {
    if (args.max_rounds < 0) throw UsageError("--max-rounds must be >= 0");
    if (args.block < 2) throw UsageError("--block must be >= 2");
    const auto in = resolve_state(args.state);
    const DistillTrace trace = distill(in.p, {args.max_rounds, args.block, args.psteps});
    if (args.output == "csv") {
        out << "step,kind,p_I,p_x,p_y,p_z,d_c,success_prob,total_success,extendible,terminated\n";
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& r = trace.steps[i];
            out << i << ',' << to_string(r.kind) << ',';
            for (double x : r.p.p()) out << format_double(x) << ',';
            out << format_double(r.d_c) << ',' << format_double(r.success_prob) << ','
                << format_double(r.total_success) << ',' << csv_bool(r.extendible) << ','
                << (i + 1 == trace.steps.size() ? to_string(trace.terminated) : "") << '\n';
        }
        return kExitOk;
    }
    write_jsonl(out, trace);
    return kExitOk;
}

// threshold

struct ThresholdArgs {
    std::string scheme;
    std::string tol = "1e-9";
    std::string output = "text";
};

int do_threshold(const ThresholdArgs& args, std::ostream& out) {
    const Scheme s = parse_scheme(args.scheme);
    const double tol = parse_number("--tol", args.tol);
    const double q = threshold(s, tol);
    if (args.output == "json") {
        out << dump_json({{"scheme", to_string(s)}, {"tol", tol}, {"q_max", q}}) << '\n';
    } else if (args.output == "csv") {
        out << "scheme,tol,q_max\n" << to_string(s) << ',' << format_double(tol) << ',' << format_double(q) << '\n';
    } else {
        out << format_double(q) << '\n';
    }
    return kExitOk;
}

// region-scan

struct ScanArgs {
    std::string output = "csv";
    int resolution = 0;
    int n1 = 256;
    int n2 = 256;
    bool both_signs = false;
    unsigned threads = 0;
};

int do_region_scan(const ScanArgs& args, std::ostream& out) {
    ScanOptions o;
    o.n_alpha1 = args.resolution ? args.resolution : args.n1;
    o.n_alpha2 = args.resolution ? args.resolution : args.n2;
    o.both_signs = args.both_signs;
    o.threads = args.threads;
    const auto records = region_scan(o);
    if (args.output == "json") {
        write_jsonl(out, records);
    } else {
        write_csv(out, records);
    }
    return kExitOk;
}

// verify-sdp

struct VerifyArgs {
    StateArgs state;
    std::string output = "json";
    std::string tol = "1e-7";
    int samples = 0;
    std::uint64_t seed = 1;
};

struct Triple {
    bool analytic;
    double analytic_margin;
    SdpVerdict primal, dual, full;

    bool undecided() const {
        return primal.status == VerdictStatus::undecided || dual.status == VerdictStatus::undecided ||
               full.status == VerdictStatus::undecided;
    }
    bool consistent() const {
        for (const auto* v : {&primal, &dual, &full}) {
            if (v->status != VerdictStatus::undecided && v->extendible() != analytic) return false;
        }
        return true;
    }
};

Triple verify_one(const BellProbs& p, double tol) {
    const AlphaCoords al = p_to_alpha(p);
    Triple t{has_symext(al), 1 - analytic_primal_optimum(al), {}, {}, {}};
    t.primal = solve_simplified_primal(al, tol);
    t.dual = solve_simplified_dual(al, tol);
    t.full = check_extendible_numeric(to_density_matrix(p), tol);
    return t;
}

Json verdict_summary(const SdpVerdict& v) {
    return {{"status", to_string(v.status)}, {"margin", v.margin}, {"objective", v.objective}, {"gap", v.gap}};
}

std::string status_word(bool ext) { return ext ? "extendible" : "not_extendible"; }

int do_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    const double tol = parse_number("--tol", args.tol);
    if (!(tol > 0)) throw UsageError("--tol must be positive");

    if (args.samples > 0) {
        if (given(args.state.p) || given(args.state.alpha) || given(args.state.scheme)) {
            throw UsageError("--samples replaces the state input");
        }
        std::mt19937_64 rng(args.seed);
        int undecided = 0, disagree = 0;
        if (args.output == "csv") out << "index,alpha1,alpha2,alpha3,analytic,analytic_margin,primal,dual,full\n";
        for (int i = 0; i < args.samples; ++i) {
            const AlphaCoords al = sample_uniform_alpha(rng);
            const Triple t = verify_one(alpha_to_p(al), tol);
            undecided += t.undecided();
            disagree += !t.consistent();
            if (args.output == "csv") {
                out << i << ',' << format_double(al.alpha1) << ',' << format_double(al.alpha2) << ','
                    << format_double(al.alpha3) << ',' << status_word(t.analytic) << ','
                    << format_double(t.analytic_margin) << ',' << to_string(t.primal.status) << ','
                    << to_string(t.dual.status) << ',' << to_string(t.full.status) << '\n';
            } else {
                out << dump_json({{"index", i},
                                  {"alpha", alpha_array(al)},
                                  {"analytic", status_word(t.analytic)},
                                  {"analytic_margin", t.analytic_margin},
                                  {"primal", to_string(t.primal.status)},
                                  {"dual", to_string(t.dual.status)},
                                  {"full", to_string(t.full.status)}})
                    << '\n';
            }
        }
        if (args.output != "csv") {
            out << dump_json({{"samples", args.samples}, {"seed", args.seed}, {"undecided", undecided}, {"disagree", disagree}})
                << '\n';
        }
        if (undecided) {
            err << "verify-sdp: " << undecided << " undecided solve(s)\n";
            return kExitNoConvergence;
        }
        if (disagree) err << "verify-sdp: " << disagree << " disagreement(s) between analytic and numeric verdicts\n";
        return kExitOk;
    }

    const auto in = resolve_state(args.state);
    BellProbs p = in.p;
    int r = 0;
    // for a scheme, look at the state where the extension is expected to break
    if (in.scheme) {
        if (const auto rounds = rounds_to_break(p)) {
            r = *rounds;
            for (int k = 0; k < r; ++k) p = bstep(p).p;
        }
    }
    const Triple t = verify_one(p, tol);
    if (args.output == "csv") {
        out << "rounds,alpha1,alpha2,alpha3,analytic,analytic_margin,primal,primal_margin,dual,dual_margin,full,full_margin,"
               "consistent\n";
        const AlphaCoords al = p_to_alpha(p);
        out << r << ',' << format_double(al.alpha1) << ',' << format_double(al.alpha2) << ','
            << format_double(al.alpha3) << ',' << status_word(t.analytic) << ',' << format_double(t.analytic_margin);
        for (const auto* v : {&t.primal, &t.dual, &t.full}) out << ',' << to_string(v->status) << ',' << format_double(v->margin);
        out << ',' << csv_bool(t.consistent()) << '\n';
    } else {
        Json j;
        if (in.scheme) j["scheme"] = scheme_json(*in.scheme);
        j["rounds"] = r;
        j["p"] = p_array(p);
        j["alpha"] = alpha_array(p_to_alpha(p));
        j["analytic"] = {{"status", status_word(t.analytic)}, {"margin", t.analytic_margin}};
        j["simplified_primal"] = verdict_summary(t.primal);
        j["simplified_dual"] = verdict_summary(t.dual);
        j["full"] = verdict_summary(t.full);
        j["consistent"] = t.consistent();
        out << dump_json(j) << '\n';
    }
    if (t.undecided()) {
        err << "verify-sdp: a numeric solve did not reach a verdict\n";
        return kExitNoConvergence;
    }
    if (!t.consistent()) err << "verify-sdp: analytic and numeric verdicts differ\n";
    return kExitOk;
}

// certificate

struct CertificateArgs {
    StateArgs state;
    std::string output = "json";
    std::string tol = "1e-7";
    bool matrix = false;
};

int do_certificate(const CertificateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.output != "json") throw UsageError("certificate: only --output json is available");
    const double tol = parse_number("--tol", args.tol);
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    const auto in = resolve_state(args.state);
    const AlphaCoords al = p_to_alpha(in.p);
    Json j;
    if (in.scheme) j["scheme"] = scheme_json(*in.scheme);
    j["p"] = p_array(in.p);
    j["alpha"] = alpha_array(al);
    if (has_symext(al)) {
        const ExtCertificate cert = extension_certificate(al);
        const HermMat rho = lift_extension(cert, in.p);
        const LiftReport rep = check_lift(rho, in.p);
        j["extendible"] = true;
        j["certificate"] = to_json(cert);
        j["moment_residual"] = moment_residual(cert.z, al);
        j["lift"] = to_json(rep);
        if (args.matrix) j["rho_abb"] = to_json(rho);
    } else {
        const SdpVerdict v = check_extendible_numeric(to_density_matrix(in.p), tol);
        j["extendible"] = false;
        j["analytic_primal_optimum"] = analytic_primal_optimum(al);
        j["terms"] = {{"a", symext_terms(al).a}, {"b", symext_terms(al).b}, {"c", symext_terms(al).c}};
        j["full_sdp"] = to_json(v);
        out << dump_json(j) << '\n';
        if (v.status == VerdictStatus::undecided) {
            err << "certificate: the full program did not certify infeasibility\n";
            return kExitNoConvergence;
        }
        return kExitOk;
    }
    out << dump_json(j) << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric extendibility of Bell-diagonal states", "symext"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "symext 0.1.0");

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "state summary and extendibility verdict");
    add_state_options(a, analyze.state);
    a->add_option("--output", analyze.output)->check(CLI::IsMember({"json", "csv"}));

    DistillArgs dist;
    auto* d = app.add_subcommand("distill", "advantage distillation trace (JSON lines)");
    add_state_options(d, dist.state);
    d->add_option("--output", dist.output)->check(CLI::IsMember({"json", "csv"}));
    d->add_option("--max-rounds", dist.max_rounds, "rounds before giving up");
    d->add_option("--block", dist.block, "block size; 2 means B-steps");
    d->add_flag("--psteps", dist.psteps, "mark a P-step after each round");

    ThresholdArgs thr;
    auto* t = app.add_subcommand("threshold", "largest QBER with positive d_c");
    t->add_option("--scheme", thr.scheme, "six-state or bb84")->required();
    t->add_option("--tol", thr.tol, "bisection tolerance");
    t->add_option("--output", thr.output)->check(CLI::IsMember({"text", "json", "csv"}));

    ScanArgs scan;
    auto* s = app.add_subcommand("region-scan", "region labels on an (alpha1, alpha2) grid");
    s->add_option("--output", scan.output)->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--resolution", scan.resolution, "points per axis (overrides --n1/--n2)");
    s->add_option("--n1", scan.n1, "points along alpha1");
    s->add_option("--n2", scan.n2, "points along alpha2");
    s->add_flag("--both-signs", scan.both_signs, "alpha2 over [-sqrt2, sqrt2]");
    s->add_option("--threads", scan.threads, "worker threads (0: SYMEXT_THREADS or all cores)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify-sdp", "analytic vs reduced vs full SDP verdicts");
    add_state_options(v, ver.state);
    v->add_option("--output", ver.output)->check(CLI::IsMember({"json", "csv"}));
    v->add_option("--tol", ver.tol, "verdict tolerance");
    v->add_option("--samples", ver.samples, "check this many random states instead");
    v->add_option("--seed", ver.seed, "seed for --samples");

    CertificateArgs cer;
    auto* c = app.add_subcommand("certificate", "extension certificate and lift check");
    add_state_options(c, cer.state);
    c->add_option("--output", cer.output)->check(CLI::IsMember({"json"}));
    c->add_option("--tol", cer.tol, "tolerance for the infeasibility report");
    c->add_flag("--matrix", cer.matrix, "include the 8x8 extension");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    }

    try {
        if (a->parsed()) return do_analyze(analyze, out);
        if (d->parsed()) return do_distill(dist, out);
        if (t->parsed()) return do_threshold(thr, out);
        if (s->parsed()) return do_region_scan(scan, out);
        if (v->parsed()) return do_verify(ver, out, err);
        if (c->parsed()) return do_certificate(cer, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << "internal error: no subcommand ran\n";
    return kExitInternal;
}

}  // namespace symext::cli
