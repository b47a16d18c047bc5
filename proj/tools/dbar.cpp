// dbar: command-line front end for the product-domain dbar solver.
//
// Exit codes: 0 success, 1 a verification tolerance was missed,
// 2 bad input, 3 numerical failure (too many near-boundary exclusions).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "dbar/io.hpp"
#include "dbar/suites.hpp"

namespace {

using namespace dbar;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kSpecError = 2;
constexpr int kNumericalFailure = 3;

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("dbar");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("DBAR_LOG");
    const std::string level = env ? env : "info";
    if (level == "quiet") {
        spdlog::set_level(spdlog::level::off);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        spdlog::set_level(spdlog::level::info);
        if (level != "info") spdlog::warn("DBAR_LOG={} not recognised, using info", level);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_p(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw SpecError("bad number \"" + s + "\"");
    }
    if (pos != s.size()) throw SpecError("bad number \"" + s + "\"");
    return v;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
        spdlog::info("wrote {}", path);
    }
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string spec;
    int grid = 0;
    int quad = 0;
    int boundary_quad = 256;
    int threads = 1;
    int max_dim = kDefaultMaxDim;
    std::string out = "field.csv";
    std::string report;
    std::uint64_t seed = 42;
};

int cmd_solve(const SolveArgs& a) {
    ProblemSpec spec = load_problem(a.spec);
    if (a.grid > 0) spec.grid = a.grid;
    if (a.quad > 0) spec.quad = a.quad;
    TOptions o;
    o.path = spec.mode;
    o.area_m = spec.quad;
    o.boundary_m = a.boundary_quad;
    o.max_dim = a.max_dim;
    if (spec.boundary_margin) o.boundary_margin = *spec.boundary_margin;

    const TOperator T(spec.form, spec.domain, o);
    const Grid grid = tensor_grid(spec.domain, spec.grid);
    spdlog::info("solving on {} points, {} path, {} subset terms", grid.size(), to_string(o.path), T.subsets().size());
    const FieldResult fr = solve_field(T, grid, a.threads);

    std::ostringstream csv;
    write_field_csv(csv, fr.field);
    emit(a.out, csv.str());

    const double frac = grid.size() ? static_cast<double>(fr.excluded.size()) / static_cast<double>(grid.size()) : 0.0;
    const bool failed = frac > 0.01;
    json subsets = json::array();
    for (SubsetIndex s : fr.subsets) subsets.push_back(s.to_string());
    json rep = {{"spec", problem_to_json(spec)},
                {"path", to_string(o.path)},
                {"boundary_quad", o.boundary_m},
                {"points", grid.size()},
                {"excluded", fr.excluded.size()},
                {"excluded_fraction", frac},
                {"subsets", subsets},
                {"term_sup", fr.term_sup},
                {"status", failed ? "numerical_failure" : "ok"}};
    if (o.path == EvalPath::Exact) rep["solution"] = poly_to_json(T.exact_solution());
    const std::string report = a.report.empty() ? (a.out.empty() || a.out == "-" ? "" : a.out + ".json") : a.report;
    if (!report.empty()) emit(report, dump_json(rep));
    if (failed) {
        spdlog::error("{} of {} points lie too close to the boundary", fr.excluded.size(), grid.size());
        return kNumericalFailure;
    }
    return kOk;
}

struct VerifyArgs {
    std::string which;
    std::string spec;
    std::string report;
    VerifyConfig cfg;
};

int cmd_verify(VerifyArgs a) {
    const auto& names = verify_case_names();
    if (std::find(names.begin(), names.end(), a.which) == names.end()) {
        spdlog::error("unknown case \"{}\"", a.which);
        return kSpecError;
    }
    if (!a.spec.empty()) a.cfg.spec = load_problem(a.spec);
    const std::string report = a.report.empty() ? "verify_" + a.which + ".json" : a.report;
    json rep;
    int code = kOk;
    try {
        rep = run_verify_case(a.which, a.cfg);
        code = rep.at("pass").get<bool>() ? kOk : kCheckFailed;
    } catch (const NearBoundaryError& e) {
        rep = {{"case", a.which}, {"pass", false}, {"error", e.what()}};
        code = kNumericalFailure;
    } catch (const SpecError& e) {
        rep = {{"case", a.which}, {"pass", false}, {"error", e.what()}};
        code = kSpecError;
    }
    emit(report, dump_json(rep));
    for (const json& c : rep.value("checks", json::array())) {
        spdlog::info("{}: {} {}", c.at("pass").get<bool>() ? "PASS" : "FAIL", c.at("name").get<std::string>(),
                     c.at("value").dump());
    }
    for (const json& c : rep.value("controls", json::array())) {
        spdlog::info("{}: control {} {}", c.at("flagged").get<bool>() ? "FLAGGED" : "MISSED",
                     c.at("name").get<std::string>(), c.at("value").dump());
    }
    return code;
}

struct CounterexampleArgs {
    int n = 2;
    std::string I;
    int K = 10;
    int threads = 1;
    int radial = 48;
    int angular = 16;
    std::string out = "-";
    std::string report;
};

int cmd_counterexample(const CounterexampleArgs& a) {
    std::vector<int> elems;
    for (const auto& s : split(a.I, ',')) {
        const double v = parse_p(s);
        if (v != std::floor(v) || v < 1 || v > a.n) throw SpecError("entries of I must lie in 1..n");
        elems.push_back(static_cast<int>(v) - 1);
    }
    if (elems.empty()) throw SpecError("the subset I must be nonempty");
    CounterexampleOptions o;
    o.radial_nodes = a.radial;
    o.angular_nodes = a.angular;
    o.threads = a.threads;
    const CounterexampleReport rep = counterexample_run(a.n, SubsetIndex::from_elements(elems), a.K, o);
    emit(a.out, counterexample_csv(rep));
    const json summary = counterexample_json(rep);
    if (!a.report.empty()) emit(a.report, dump_json(summary));
    return summary.at("pass").get<bool>() ? kOk : kCheckFailed;
}

struct NormsArgs {
    std::string spec;
    std::string p = "1,2,inf";
    std::string alpha = "0.5,0.5";
    int grid = 8;
    int threads = 1;
    std::string out = "-";
};

int cmd_norms(const NormsArgs& a) {
    const ProblemSpec spec = load_problem(a.spec);
    NormsConfig cfg;
    cfg.p.clear();
    for (const auto& s : split(a.p, ',')) {
        const double p = parse_p(s);
        if (!(p >= 1.0)) throw SpecError("p must be >= 1");
        cfg.p.push_back(p);
    }
    const auto al = split(a.alpha, ',');
    if (al.size() != 2) throw SpecError("--alpha needs two values");
    for (std::size_t i = 0; i < 2; ++i) {
        cfg.alpha[i] = parse_p(al[i]);
        if (!(cfg.alpha[i] > 0.0 && cfg.alpha[i] < 1.0)) throw SpecError("alpha must lie in (0, 1)");
    }
    cfg.grid = a.grid;
    cfg.threads = a.threads;
    emit(a.out, norms_csv(spec, cfg));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Explicit dbar solutions on product domains"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Evaluate T(f) on a tensor grid; writes CSV and a JSON report");
    solve->add_option("--spec", sa.spec, "problem spec (JSON)")->required();
    solve->add_option("--grid", sa.grid, "points per factor axis (overrides the problem file)");
    solve->add_option("--quad", sa.quad, "area quadrature order (overrides the problem file)");
    solve->add_option("--boundary-quad", sa.boundary_quad, "boundary quadrature order");
    solve->add_option("--threads", sa.threads, "worker threads");
    solve->add_option("--max-dim", sa.max_dim, "largest accepted dimension");
    solve->add_option("--out", sa.out, "CSV output path, - for stdout");
    solve->add_option("--report", sa.report, "JSON report path (default: <out>.json)");
    solve->add_option("--seed", sa.seed, "random seed (unused by solve)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a check suite; exit 0 iff every tolerance is met");
    verify->add_option("--case", va.which, "representation|stokes|residual|orthogonality|recursion|commutator")
        ->required();
    verify->add_option("--spec", va.spec, "problem spec (JSON)");
    verify->add_option("--n", va.cfg.n, "dimension for random trials");
    verify->add_option("--trials", va.cfg.trials, "random trials");
    verify->add_option("--points", va.cfg.points, "random points per trial");
    verify->add_option("--seed", va.cfg.seed, "random seed");
    verify->add_option("--threads", va.cfg.threads, "worker threads");
    verify->add_option("--grid", va.cfg.grid, "finite-difference grid size per factor axis");
    verify->add_option("--quad", va.cfg.quad, "area quadrature order");
    verify->add_option("--boundary-quad", va.cfg.boundary_quad, "boundary quadrature order");
    verify->add_option("--step", va.cfg.h, "finite-difference step");
    verify->add_flag("--negative-control", va.cfg.negative_control, "also run the negative control");
    verify->add_option("--report", va.report, "JSON report path (default: verify_<case>.json)");

    CounterexampleArgs ca;
    auto* counter = app.add_subcommand("counterexample", "Partial sums of the divergent example");
    counter->add_option("--n", ca.n, "dimension")->required();
    counter->add_option("--I", ca.I, "comma-separated subset, 1-based")->required();
    counter->add_option("--K", ca.K, "truncation")->required();
    counter->add_option("--threads", ca.threads, "worker threads");
    counter->add_option("--radial", ca.radial, "radial Gauss nodes for L1 integrals");
    counter->add_option("--angular", ca.angular, "angular nodes for L1 integrals");
    counter->add_option("--out", ca.out, "CSV output path, - for stdout");
    counter->add_option("--report", ca.report, "JSON summary path");

    NormsArgs na;
    auto* norms = app.add_subcommand("norms", "Norm reports for T(f) and the data");
    norms->add_option("--spec", na.spec, "problem spec (JSON)")->required();
    norms->add_option("--p", na.p, "comma-separated exponents, inf allowed");
    norms->add_option("--alpha", na.alpha, "Hoelder exponents a1,a2");
    norms->add_option("--grid", na.grid, "points per factor axis");
    norms->add_option("--threads", na.threads, "worker threads");
    norms->add_option("--out", na.out, "CSV output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kSpecError;
    }

    try {
        if (*solve) return cmd_solve(sa);
        if (*verify) return cmd_verify(va);
        if (*counter) return cmd_counterexample(ca);
        if (*norms) return cmd_norms(na);
    } catch (const SpecError& e) {
        spdlog::error("{}", e.what());
        return kSpecError;
    } catch (const NearBoundaryError& e) {
        spdlog::error("{}", e.what());
        return kNumericalFailure;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kCheckFailed;
    }
    return kSpecError;
}
