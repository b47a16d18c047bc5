#include "dbar/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbar/cauchy1d.hpp"
#include "dbar/parallel.hpp"
#include "dbar/random.hpp"

namespace dbar {

namespace {

json check(const std::string& name, double value, double tol) {
    const bool ok = value <= tol;  // NaN fails
    return {{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", ok}};
}

json exact_check(const std::string& name, double value) {
    return {{"name", name}, {"value", value}, {"tolerance", 0.0}, {"pass", value == 0.0}};
}

json control(const std::string& name, double value, bool flagged) {
    return {{"name", name}, {"value", value}, {"expected", "nonzero"}, {"flagged", flagged}};
}

json finish(const std::string& name, const VerifyConfig& cfg, json checks, json controls) {
    bool pass = true;
    for (const json& c : checks) pass = pass && c.at("pass").get<bool>();
    for (const json& c : controls) pass = pass && c.at("flagged").get<bool>();
    json params = {{"n", cfg.n}, {"trials", cfg.trials}, {"points", cfg.points}, {"seed", cfg.seed},
                   {"quad", cfg.quad}, {"boundary_quad", cfg.boundary_quad}, {"grid", cfg.grid},
                   {"h", cfg.h}, {"negative_control", cfg.negative_control},
                   {"spec", cfg.spec ? problem_to_json(*cfg.spec) : json(nullptr)}};
    return {{"case", name}, {"pass", pass}, {"checks", std::move(checks)}, {"controls", std::move(controls)},
            {"parameters", std::move(params)}};
}

ProductDomain domain_of(const VerifyConfig& cfg) {
    if (cfg.spec) return cfg.spec->domain;
    if (cfg.n < 1 || cfg.n > kMaxDim) throw SpecError("n must lie in [1, 8]");
    return ProductDomain::polydisc(cfg.n);
}

TOptions options_of(const VerifyConfig& cfg, EvalPath path, int n) {
    TOptions o;
    o.path = path;
    o.area_m = cfg.quad;
    o.boundary_m = cfg.boundary_quad;
    o.max_dim = std::max(kDefaultMaxDim, n);
    if (cfg.spec && cfg.spec->boundary_margin) o.boundary_margin = *cfg.spec->boundary_margin;
    return o;
}

/// The problem file's form, or cfg.trials random closed forms with the domain's blocks.
std::vector<OneForm> forms_of(const VerifyConfig& cfg, const ProductDomain& dom, Rng& rng) {
    if (cfg.spec) return {cfg.spec->form};
    std::vector<OneForm> out;
    for (int t = 0; t < cfg.trials; ++t) out.push_back(random_closed_form(dom.blocks(), rng));
    return out;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = nan_max(m, x);
    return m;
}

// ---------------------------------------------------------------------------

json case_representation(const VerifyConfig& cfg) {
    const ProductDomain dom = domain_of(cfg);
    const int n = dom.dimension();
    Rng rng(cfg.seed);
    std::vector<MultiIndexPoly> us;
    std::vector<std::vector<cplx>> zs;
    for (int t = 0; t < cfg.trials; ++t) {
        us.push_back(random_poly(n, rng));
        for (int p = 0; p < cfg.points; ++p) zs.push_back(random_interior_point(dom, rng, 0.9));
    }
    const EvalPath path = cfg.spec ? cfg.spec->mode : EvalPath::Quadrature;
    const TOptions o = options_of(cfg, path, n);
    std::vector<double> res(zs.size());
    parallel_for(zs.size(), cfg.threads, [&](std::size_t k) {
        res[k] = representation_residual(us[k / static_cast<std::size_t>(cfg.points)], dom, zs[k], o);
    }, 1);
    json checks = json::array();
    checks.push_back(check("representation residual (" + to_string(path) + ")", max_of(res), 1e-8));
    json per = json::array();
    for (int t = 0; t < cfg.trials; ++t) {
        const auto b = res.begin() + t * cfg.points;
        per.push_back(max_of(std::vector<double>(b, b + cfg.points)));
    }
    checks.back()["per_trial"] = per;
    return finish("representation", cfg, checks, json::array());
}

json case_stokes(const VerifyConfig& cfg) {
    Rng rng(cfg.seed);
    const std::vector<PlanarDomain> doms{PlanarDomain::unit_disc(),
                                         PlanarDomain::rectangle({-1.0, -0.5}, {1.5, 1.0})};
    json checks = json::array();
    for (const PlanarDomain& d : doms) {
        const ProductDomain pd({d});
        std::vector<MultiIndexPoly> gs;
        std::vector<cplx> zs;
        for (int t = 0; t < cfg.trials; ++t) {
            gs.push_back(random_poly(1, rng));
            for (int p = 0; p < cfg.points; ++p) zs.push_back(random_interior_point(pd, rng, 0.9)[0]);
        }
        std::vector<double> res(zs.size());
        parallel_for(zs.size(), cfg.threads, [&](std::size_t k) {
            res[k] = stokes_residual(gs[k / static_cast<std::size_t>(cfg.points)], d, zs[k], cfg.boundary_quad,
                                     cfg.quad);
        }, 1);
        checks.push_back(check(std::string("stokes residual on ") + (d.is_disc() ? "unit disc" : "rectangle"),
                               max_of(res), 1e-9));
    }
    // Closed-form solid transforms against the singular rule, bidegree <= (4, 4), m = 64.
    std::vector<cplx> zs;
    const ProductDomain disc = ProductDomain::polydisc(1);
    for (int p = 0; p < 20; ++p) zs.push_back(random_interior_point(disc, rng, 0.9)[0]);
    std::vector<double> err(zs.size());
    parallel_for(zs.size(), cfg.threads, [&](std::size_t k) {
        const QuadratureRule rule = singular_area_quadrature(PlanarDomain::unit_disc(), 64, zs[k]);
        double e = 0.0;
        for (int a = 0; a <= 4; ++a) {
            for (int b = 0; b <= 4; ++b) {
                const cplx q = cauchy_solid([a, b](cplx w) { return std::pow(w, a) * std::pow(std::conj(w), b); },
                                            rule, zs[k]);
                e = nan_max(e, std::abs(q - disc_monomial_solid(a, b, zs[k])));
            }
        }
        err[k] = e;
    }, 1);
    checks.push_back(check("monomial solid transform vs singular quadrature", max_of(err), 1e-8));
    return finish("stokes", cfg, checks, json::array());
}

json case_residual(const VerifyConfig& cfg) {
    const ProductDomain dom = domain_of(cfg);
    const int n = dom.dimension();
    Rng rng(cfg.seed);
    const std::vector<OneForm> forms = forms_of(cfg, dom, rng);
    const EvalPath path = cfg.spec ? cfg.spec->mode : EvalPath::Exact;
    const TOptions o = options_of(cfg, path, n);
    const Grid grid = tensor_grid(dom, cfg.grid);
    std::vector<double> sups;
    json warnings = json::array();
    for (const OneForm& f : forms) {
        const TOperator T(f, dom, o);
        const FdResidual r = dbar_residual_fd([&T](std::span<const cplx> z) { return T(z); }, grid, dom, f, cfg.h,
                                              cfg.threads);
        sups.push_back(r.sup);
        for (const auto& w : r.warnings) warnings.push_back(w);
    }
    json checks = json::array();
    checks.push_back(check("finite-difference dbar residual of T(f)", max_of(sups), 5e-6));
    checks.back()["per_trial"] = sups;
    checks.back()["grid_points"] = grid.size();
    json rep = finish("residual", cfg, checks, json::array());
    rep["warnings"] = warnings;
    return rep;
}

json case_orthogonality(const VerifyConfig& cfg) {
    const ProductDomain dom = domain_of(cfg);
    if (!dom.is_unit_polydisc()) throw SpecError("orthogonality needs the unit polydisc");
    const int n = dom.dimension();
    Rng rng(cfg.seed);
    const std::vector<OneForm> forms = forms_of(cfg, dom, rng);
    HardyOptions ho;
    ho.seed = cfg.seed;
    ho.threads = cfg.threads;
    std::vector<double> coef, cauchy;
    for (const OneForm& f : forms) {
        const TOperator T(f, dom, options_of(cfg, EvalPath::Exact, n));
        const HardyReport r = hardy_orthogonality(as_point_fn(T.exact_solution()), n, ho);
        coef.push_back(r.max_coefficient);
        cauchy.push_back(r.cauchy_max);
    }
    json checks = json::array();
    checks.push_back(check("max Fourier coefficient with k >= 0", max_of(coef), 1e-7));
    checks.back()["per_trial"] = coef;
    checks.push_back(check("multi-Cauchy transform at random points", max_of(cauchy), 1e-8));
    checks.back()["per_trial"] = cauchy;
    json controls = json::array();
    if (cfg.negative_control) {
        const HardyReport r = hardy_orthogonality(as_point_fn(MultiIndexPoly::z(n, 0)), n, ho);
        const double dev = std::abs(r.coefficient_e1 - cplx(1.0, 0.0));
        json c = control("holomorphic u = z1", r.max_coefficient, dev <= 1e-10);
        c["coefficient_e1"] = {r.coefficient_e1.real(), r.coefficient_e1.imag()};
        controls.push_back(c);
    }
    return finish("orthogonality", cfg, checks, controls);
}

std::vector<ProductDomain> recursion_shapes(const VerifyConfig& cfg) {
    if (cfg.spec) return {cfg.spec->domain};
    std::vector<ProductDomain> out;
    for (const auto& groups : std::vector<std::vector<std::vector<int>>>{{{0}, {1}}, {{0, 1}, {2}}, {{0}, {1}, {2}}}) {
        int n = 0;
        for (const auto& g : groups) n += static_cast<int>(g.size());
        out.push_back(ProductDomain::polydisc(n).with_blocks(BlockPartition::from_groups(groups)));
    }
    return out;
}

std::string shape_name(const BlockPartition& bp) {
    std::string s;
    for (int b = 0; b < bp.block_count(); ++b) {
        if (b) s += " ";
        s += SubsetIndex::from_elements(bp.coords(b)).to_string();
    }
    return s;
}

OneForm control_form(const BlockPartition& blocks) {
    const int n = blocks.dimension();
    return dbar_apply(MultiIndexPoly::zbar(n, 0) * MultiIndexPoly::zbar(n, n - 1), blocks);
}

json case_recursion(const VerifyConfig& cfg) {
    Rng rng(cfg.seed);
    json checks = json::array();
    for (const ProductDomain& dom : recursion_shapes(cfg)) {
        const std::string tag = " [" + shape_name(dom.blocks()) + "]";
        const std::vector<OneForm> forms = forms_of(cfg, dom, rng);
        const std::vector<FactorSolver> solvers = disc_solvers(dom);
        double defect = 0.0, vanish = 0.0, remainder = 0.0;
        for (const OneForm& f : forms) {
            const RecursionResult r = recursive_solve(f, dom, solvers);
            defect = std::max(defect, dbar_defect(r.u, f));
            vanish = std::max(vanish, vanishing_check(r.trace));
            remainder = std::max(remainder, r.trace.remainder.max_abs_coefficient());
        }
        checks.push_back(exact_check("dbar u - f" + tag, defect));
        checks.push_back(exact_check("vanishing of earlier projections" + tag, vanish));
        checks.push_back(exact_check("remainder" + tag, remainder));

        if (dom.blocks().all_singletons()) {
            std::vector<FactorSolver> ortho;
            for (const auto& s : solvers) ortho.push_back(make_orthogonal_solver(s, dom));
            double odefect = 0.0, proj = 0.0, mismatch = 0.0;
            for (const OneForm& f : forms) {
                const RecursionResult r = recursive_solve(f, dom, ortho);
                odefect = std::max(odefect, dbar_defect(r.u, f));
                for (std::size_t j = 0; j < r.trace.steps.size(); ++j) {
                    proj = std::max(proj, disc_bergman_project(r.trace.steps[j].v, static_cast<int>(j))
                                              .max_abs_coefficient());
                }
                const MultiIndexPoly rec = recursive_solve(f, dom, solvers).u;
                mismatch = std::max(mismatch, (rec - operator_T_exact(f)).max_abs_coefficient());
            }
            checks.push_back(exact_check("dbar u - f with orthogonal solvers" + tag, odefect));
            checks.push_back(exact_check("Bergman projection of orthogonal steps" + tag, proj));
            checks.push_back(exact_check("recursion equals T" + tag, mismatch));
        }
    }
    json controls = json::array();
    if (cfg.negative_control) {
        const ProductDomain dom = recursion_shapes(cfg).front();
        if (dom.blocks().block_count() < 2) throw SpecError("the negative control needs at least two blocks");
        std::vector<FactorSolver> mocks;
        for (int b = 0; b < dom.blocks().block_count(); ++b) mocks.push_back(noncommuting_mock_solver(dom, b));
        const OneForm f = control_form(dom.blocks());
        const RecursionResult r = recursive_solve(f, dom, mocks);
        const double v = std::max(vanishing_check(r.trace), dbar_defect(r.u, f));
        controls.push_back(control("non-commuting solvers [" + shape_name(dom.blocks()) + "]", v, v > 0.0));
    }
    return finish("recursion", cfg, checks, controls);
}

json case_commutator(const VerifyConfig& cfg) {
    Rng rng(cfg.seed);
    json checks = json::array();
    for (const ProductDomain& dom : recursion_shapes(cfg)) {
        const BlockPartition& bp = dom.blocks();
        if (bp.block_count() < 2) continue;
        const std::string tag = " [" + shape_name(bp) + "]";
        const std::vector<OneForm> forms = forms_of(cfg, dom, rng);
        const std::vector<FactorSolver> solvers = disc_solvers(dom);
        double worst = 0.0, worst_ortho = 0.0;
        for (const OneForm& f : forms) {
            for (int b = 0; b < bp.block_count(); ++b) {
                for (int nu = 0; nu < bp.dimension(); ++nu) {
                    if (bp.block_of(nu) == b) continue;
                    worst = std::max(worst, commutator_residual(solvers[static_cast<std::size_t>(b)], f, nu));
                    if (bp.size(b) == 1) {
                        const FactorSolver S = make_orthogonal_solver(solvers[static_cast<std::size_t>(b)], dom);
                        worst_ortho = std::max(worst_ortho, commutator_residual(S, f, nu));
                    }
                }
            }
        }
        checks.push_back(exact_check("commutator of disc solvers" + tag, worst));
        checks.push_back(exact_check("commutator of orthogonal solvers" + tag, worst_ortho));
    }
    json controls = json::array();
    if (cfg.negative_control) {
        const ProductDomain dom = recursion_shapes(cfg).front();
        if (dom.blocks().block_count() < 2) throw SpecError("the negative control needs at least two blocks");
        const FactorSolver mock = noncommuting_mock_solver(dom, 0);
        const int nu = dom.blocks().coords(1).front();
        const double v = commutator_residual(mock, control_form(dom.blocks()), nu);
        controls.push_back(control("mock solver commutator [" + shape_name(dom.blocks()) + "]", v, v > 0.0));
    }
    return finish("commutator", cfg, checks, controls);
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

const std::vector<std::string>& verify_case_names() {
    static const std::vector<std::string> names{"representation", "stokes", "residual",
                                                "orthogonality", "recursion", "commutator"};
    return names;
}

json run_verify_case(const std::string& name, const VerifyConfig& cfg) {
    if (cfg.trials < 1 || cfg.points < 1) throw SpecError("trials and points must be positive");
    if (name == "representation") return case_representation(cfg);
    if (name == "stokes") return case_stokes(cfg);
    if (name == "residual") return case_residual(cfg);
    if (name == "orthogonality") return case_orthogonality(cfg);
    if (name == "recursion") return case_recursion(cfg);
    if (name == "commutator") return case_commutator(cfg);
    throw SpecError("unknown case \"" + name + "\"");
}

// ---------------------------------------------------------------------------

std::string counterexample_csv(const CounterexampleReport& rep) {
    std::string out = "K,T_at_0,minus_harmonic_partial,L1_fI_partial,L1_fI_exact_partial";
    for (SubsetIndex J : rep.proper) {
        std::string label = J.to_string();
        std::replace(label.begin(), label.end(), ',', '_');
        out += ",L1_fJ_partial" + label;
    }
    out += '\n';
    for (const auto& r : rep.rows) {
        out += std::to_string(r.K) + "," + format_double(r.T_at_0) + "," + format_double(r.minus_harmonic) + "," +
               format_double(r.l1_fI) + "," + format_double(r.l1_fI_exact);
        for (double v : r.l1_fJ) out += "," + format_double(v);
        out += '\n';
    }
    return out;
}

json counterexample_json(const CounterexampleReport& rep) {
    const int K = rep.rows.empty() ? 0 : rep.rows.back().K;
    double partial_rel = 0.0;
    for (const auto& r : rep.rows) {
        partial_rel = nan_max(partial_rel, std::abs(r.l1_fI - r.l1_fI_exact) / r.l1_fI_exact);
    }
    json checks = json::array();
    checks.push_back(check("|T(f)(0) + H_K|", rep.max_T_error, 1e-6));
    checks.push_back(check("per-term L1 relative error of f_I", rep.max_term_rel_error, 0.03));
    checks.push_back(check("L1 partial sums of f_I vs closed form", partial_rel, 0.03));
    checks.push_back({{"name", "f_J vanishes for J not inside I"}, {"value", rep.zero_outside},
                      {"pass", rep.zero_outside}});
    json informative = json::array();
    if (K >= 4) {
        const double q = rep.slope / rep.slope_theory;
        informative.push_back({{"name", "slope of L1 partial sums of f_I against log K / pi^n"},
                               {"value", q}, {"range", {0.8, 1.2}}, {"pass", q >= 0.8 && q <= 1.2}});
    }
    for (std::size_t s = 0; s < rep.proper.size() && K >= 1; ++s) {
        informative.push_back({{"name", "Cauchy tail K/2..K of f_J, J = " + rep.proper[s].to_string()},
                               {"value", rep.tail_ratio[s]}, {"tolerance", 0.05},
                               {"pass", rep.tail_ratio[s] < 0.05}});
    }
    bool pass = true;
    for (const json& c : checks) pass = pass && c.at("pass").get<bool>();
    return {{"n", rep.n}, {"I", rep.I.to_string()}, {"K", K}, {"pass", pass}, {"checks", checks},
            {"asymptotic", informative}, {"slope", rep.slope}, {"slope_theory", rep.slope_theory}};
}

// ---------------------------------------------------------------------------

std::string norms_csv(const ProblemSpec& spec, const NormsConfig& cfg) {
    const ProductDomain& dom = spec.domain;
    const int n = dom.dimension();
    const OneForm f = spec.form.with_blocks(dom.blocks());
    const BlockPartition& bp = dom.blocks();
    const Grid grid = tensor_grid(dom, cfg.grid);

    GridField u;
    if (bp.all_singletons()) {
        TOptions o;
        o.path = spec.mode;
        o.area_m = spec.quad;
        o.max_dim = std::max(kDefaultMaxDim, n);
        if (spec.boundary_margin) o.boundary_margin = *spec.boundary_margin;
        u = solve_field(TOperator(f, dom, o), grid, cfg.threads).field;
    } else {
        u = sample_field(as_point_fn(recursive_solve(f, dom, disc_solvers(dom)).u), grid, cfg.threads);
    }

    std::ostringstream os;
    os << "norm_kind,parameters,value\n";
    const auto row = [&os](const std::string& kind, const std::string& params, double v) {
        os << kind << ',' << quote(params) << ',' << format_double(v) << '\n';
    };
    for (double p : cfg.p) row("lp", "field=u;p=" + format_double(p), lp_norm(u, p, cfg.threads));
    for (SubsetIndex B : nonempty_subsets(bp.block_count())) {
        const auto fam = subscript_family(f, B);
        for (double p : cfg.p) {
            double s = 0.0;
            for (const auto& m : fam) {
                if (!m.value.is_zero()) s += lp_norm(sample_field(as_point_fn(m.value), grid, cfg.threads), p, cfg.threads);
            }
            row("lp", "field=f_" + B.to_string() + ";p=" + format_double(p), s);
        }
    }
    for (SubsetIndex I : nonempty_subsets(n)) {
        if (I == SubsetIndex::full(n)) continue;
        for (double r : cfg.p) {
            for (double p : cfg.p) {
                if (!admissible_exponents(r, p)) continue;
                row("mixed_H", "field=u;I=" + I.to_string() + ";r=" + format_double(r) + ";p=" + format_double(p),
                    mixed_H_norm(u, I, r, p));
            }
        }
    }
    const std::string alpha = format_double(cfg.alpha[0]) + "/" + format_double(cfg.alpha[1]);
    if (bp.block_count() == 2) {
        row("iterated_holder", "field=u;alpha=" + alpha, iterated_holder_seminorm(u, bp, cfg.alpha, cfg.sampling));
    }
    if (dom.is_unit_polydisc()) {
        for (double p : cfg.p) {
            const LpRatio lr = lp_ratio_report(f, dom, p, cfg.grid, !bp.all_singletons(), cfg.threads);
            row("lp_ratio", "p=" + format_double(p), lr.ratio);
        }
        if (bp.block_count() == 2) {
            const HolderTheoremReport hr = holder_theorem_report(f, dom, cfg.alpha, cfg.grid, cfg.sampling, cfg.threads);
            row("holder_ratio", "alpha=" + alpha, hr.ratio);
            row("holder_rhs", "alpha=" + alpha, hr.rhs);
        }
    }
    return os.str();
}

}  // namespace dbar
