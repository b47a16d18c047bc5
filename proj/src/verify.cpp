#include "dbar/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dbar/parallel.hpp"

namespace dbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxCounterexampleGrid = 4'000'000;

MultiIndexPoly barred_derivative(MultiIndexPoly u, SubsetIndex J) {
    for (int j : J.elements()) u = wirtinger_dbar(u, j);
    return u;
}

std::vector<SubsetIndex> nonempty_subsets_of(SubsetIndex I) {
    std::vector<SubsetIndex> out;
    for (std::uint32_t m = 1; m <= I.mask(); ++m) {
        if ((m & ~I.mask()) == 0) out.emplace_back(m);
    }
    return out;
}

}  // namespace

GridField sample_field(const PointFn& p, const Grid& grid, int threads) {
    GridField f;
    f.grid = grid;
    f.values.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t k) {
        thread_local std::vector<cplx> z;
        z.resize(static_cast<std::size_t>(grid.dimension()));
        grid.point(k, z);
        f.values[k] = p(z);
    }, 1024);
    return f;
}

// ---------------------------------------------------------------------------

FdResidual dbar_residual_fd(const PointFn& u, const Grid& grid, const ProductDomain& dom,
                            const OneForm& f, double h, int threads) {
    const int n = dom.dimension();
    if (grid.dimension() != n || f.dimension() != n) throw SpecError("dimension mismatch");
    if (!(h > 0.0)) throw SpecError("finite-difference step must be positive");
    FdResidual res;
    for (int j = 0; j < n; ++j) {
        const double diam = dom.factor(j).diameter();
        if (h < 1e-6 * diam || h > 1e-2 * diam) {
            std::ostringstream os;
            os << "step " << h << " is outside [1e-6, 1e-2] * diam for factor " << (j + 1);
            res.warnings.push_back(os.str());
        }
        for (const cplx& p : grid.factor(j).points) {
            if (!(dom.factor(j).distance_to_boundary(p) > 2.0 * h)) {
                throw SpecError("finite-difference stencil leaves the domain; reduce the step");
            }
        }
    }
    std::vector<NumericPoly> fj;
    for (int j = 0; j < n; ++j) fj.emplace_back(f.component(j));
    const std::size_t npts = grid.size();
    std::vector<double> per_point(npts * static_cast<std::size_t>(n));
    parallel_for(npts, threads, [&](std::size_t k) {
        std::vector<cplx> z(static_cast<std::size_t>(n));
        grid.point(k, z);
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            const cplx z0 = z[jj];
            z[jj] = z0 + h;
            const cplx xp = u(z);
            z[jj] = z0 - h;
            const cplx xm = u(z);
            z[jj] = z0 + cplx(0.0, h);
            const cplx yp = u(z);
            z[jj] = z0 - cplx(0.0, h);
            const cplx ym = u(z);
            z[jj] = z0;
            const cplx d = ((xp - xm) + cplx(0.0, 1.0) * (yp - ym)) / (4.0 * h);
            per_point[k * static_cast<std::size_t>(n) + jj] = std::abs(d - fj[jj](z));
        }
    }, 256);
    res.points = npts;
    res.per_component.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < npts; ++k) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            res.per_component[j] = nan_max(res.per_component[j], per_point[k * static_cast<std::size_t>(n) + j]);
        }
    }
    for (double v : res.per_component) res.sup = nan_max(res.sup, v);
    return res;
}

// ---------------------------------------------------------------------------

HardyReport hardy_orthogonality(const PointFn& u, int n, const HardyOptions& opts) {
    if (n < 1 || n > kMaxDim) throw SpecError("dimension out of range");
    if (opts.K < 0) throw SpecError("coefficient cutoff must be nonnegative");
    if (opts.M < 4 * opts.K || opts.M < 1) throw SpecError("need M >= 4K samples per circle to avoid aliasing");
    const auto M = static_cast<std::size_t>(opts.M);
    const auto K1 = static_cast<std::size_t>(opts.K + 1);
    const auto nn = static_cast<std::size_t>(n);

    std::size_t total = 1;
    for (std::size_t j = 0; j < nn; ++j) total *= M;
    std::vector<cplx> circle(M);
    for (std::size_t m = 0; m < M; ++m) circle[m] = std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / opts.M);

    std::vector<cplx> data(total);
    parallel_for(total, opts.threads, [&](std::size_t k) {
        std::vector<cplx> z(nn);
        std::size_t rem = k;
        for (std::size_t j = nn; j-- > 0;) {
            z[j] = circle[rem % M];
            rem /= M;
        }
        data[k] = u(z);
    }, 1024);

    // twiddle[k * M + m] = e^{-2πi k m / M} / M
    std::vector<cplx> twiddle(K1 * M);
    for (std::size_t k = 0; k < K1; ++k) {
        for (std::size_t m = 0; m < M; ++m) {
            twiddle[k * M + m] =
                std::polar(1.0 / opts.M, -2.0 * kPi * static_cast<double>((k * m) % M) / opts.M);
        }
    }
    std::vector<std::size_t> dims(nn, M);
    for (std::size_t j = 0; j < nn; ++j) {
        std::size_t outer = 1;
        for (std::size_t i = 0; i < j; ++i) outer *= dims[i];
        std::size_t inner = 1;
        for (std::size_t i = j + 1; i < nn; ++i) inner *= dims[i];
        std::vector<cplx> next(outer * K1 * inner, cplx(0.0, 0.0));
        parallel_for(outer, opts.threads, [&](std::size_t o) {
            for (std::size_t k = 0; k < K1; ++k) {
                cplx* dst = next.data() + (o * K1 + k) * inner;
                for (std::size_t m = 0; m < M; ++m) {
                    const cplx w = twiddle[k * M + m];
                    const cplx* src = data.data() + (o * M + m) * inner;
                    for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
                }
            }
        }, 1);
        data = std::move(next);
        dims[j] = K1;
    }

    HardyReport rep;
    rep.argmax.assign(nn, 0);
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double a = std::abs(data[k]);
        if (a > rep.max_coefficient || std::isnan(a)) {
            rep.max_coefficient = a;
            std::size_t rem = k;
            for (std::size_t j = nn; j-- > 0;) {
                rep.argmax[j] = static_cast<int>(rem % K1);
                rem /= K1;
            }
        }
    }
    if (opts.K >= 1) {
        std::size_t e1 = 1;
        for (std::size_t j = 1; j < nn; ++j) e1 *= K1;
        rep.coefficient_e1 = data[e1];
    }

    const ProductDomain dom = ProductDomain::polydisc(n);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < opts.cauchy_points; ++t) {
        std::vector<cplx> z(nn);
        for (auto& c : z) c = std::polar(0.7 * std::sqrt(unif(rng)), 2.0 * kPi * unif(rng));
        rep.cauchy_max = nan_max(rep.cauchy_max, std::abs(multi_cauchy_boundary(u, dom, z, opts.cauchy_m)));
    }
    return rep;
}

// ---------------------------------------------------------------------------

double counterexample_l1_term(int n, int l, int j, int k) {
    // f^k_J = k^{j-1} Π_{J} z_i |z_i|^{2k-2} Π_{I\J} |z_i|^{2k}; integrate factor by factor.
    const double in_j = 2.0 * kPi / (2.0 * k + 1.0);
    const double in_rest = kPi / (k + 1.0);
    return std::pow(static_cast<double>(k), j - 1) * std::pow(in_j, j) * std::pow(in_rest, l - j) *
           std::pow(kPi, n - l);
}

double harmonic_number(int K) {
    Rational h(0);
    for (int k = 1; k <= K; ++k) h += ratio(1, k);
    return h.get_d();
}

CounterexampleReport counterexample_run(int n, SubsetIndex I, int K, const CounterexampleOptions& opts) {
    if (n < 1 || n > kMaxDim) throw SpecError("dimension out of range");
    if (I.empty()) throw SpecError("the subset I must be nonempty");
    if (!I.subset_of(SubsetIndex::full(n))) throw SpecError("I must be a subset of {1..n}");
    if (K < 0 || K > 200) throw SpecError("truncation K must lie in [0, 200]");

    CounterexampleReport rep;
    rep.n = n;
    rep.I = I;
    const int l = I.size();
    const std::vector<SubsetIndex> subs = nonempty_subsets_of(I);
    for (SubsetIndex J : subs) {
        if (J != I) rep.proper.push_back(J);
    }
    rep.slope_theory = std::pow(kPi, n);

    // L¹ integrals run over the factors in I only; f_J does not depend on the others,
    // which contribute π each.
    const std::vector<int> elems = I.elements();
    std::vector<FactorGrid> fgs;
    for (std::size_t t = 0; t < elems.size(); ++t) {
        fgs.push_back(quadrature_factor_grid(PlanarDomain::unit_disc(), opts.radial_nodes, opts.angular_nodes));
    }
    const Grid grid(std::move(fgs));
    if (grid.size() > kMaxCounterexampleGrid) {
        throw SpecError("L1 grid has " + std::to_string(grid.size()) +
                        " points; lower the radial or angular node count");
    }
    const double outside = std::pow(kPi, n - l);
    const std::size_t npts = grid.size();
    const auto nn = static_cast<std::size_t>(n);
    std::vector<cplx> pts(npts * nn, cplx(0.0, 0.0));
    std::vector<double> vol(npts);
    for (std::size_t k = 0; k < npts; ++k) {
        const std::vector<cplx> p = grid.point(k);
        for (std::size_t t = 0; t < elems.size(); ++t) pts[k * nn + static_cast<std::size_t>(elems[t])] = p[t];
        vol[k] = grid.volume(k);
    }
    std::vector<std::vector<cplx>> acc(subs.size(), std::vector<cplx>(npts, cplx(0.0, 0.0)));
    std::vector<cplx> term_values(npts);

    TOptions topts;
    topts.path = EvalPath::Exact;
    topts.max_dim = std::max(n, kDefaultMaxDim);
    const ProductDomain dom = ProductDomain::polydisc(n);
    const std::vector<cplx> origin(nn, cplx(0.0, 0.0));
    MultiIndexPoly u(n);
    // T is linear, so T(f^{(K)})(0) is the running sum of T(f^k)(0); each T(f^k) is a
    // polynomial with exact rational coefficients and its value at 0 is its constant term.
    ExactComplex T0;

    for (int k = 1; k <= K; ++k) {
        std::vector<int> a(nn, 0);
        for (int i : elems) a[static_cast<std::size_t>(i)] = k;
        const MultiIndexPoly uk = MultiIndexPoly::monomial(n, a, a, ExactComplex(ratio(1, k)));
        u += uk;
        const OneForm fk = dbar_apply(uk, BlockPartition::singletons(n));
        const MultiIndexPoly Tk = TOperator(fk, dom, topts).exact_solution();
        const auto c0 = Tk.terms().find(Monomial{});
        if (c0 != Tk.terms().end()) T0 += c0->second;

        CounterexampleRow row;
        row.K = k;
        row.T_at_0 = T0.to_complex().real();
        row.minus_harmonic = -harmonic_number(k);
        rep.max_T_error = std::max(rep.max_T_error, std::abs(row.T_at_0 - row.minus_harmonic));

        for (std::size_t s = 0; s < subs.size(); ++s) {
            const NumericPoly term(barred_derivative(uk, subs[s]));
            auto& field = acc[s];
            parallel_for(npts, opts.threads, [&](std::size_t q) {
                term_values[q] = term(std::span<const cplx>(pts.data() + q * nn, nn));
                field[q] += term_values[q];
            }, 4096);
            const double l1 = outside * deterministic_sum<double>(npts, opts.threads, [&](std::size_t q) {
                                  return std::abs(field[q]) * vol[q];
                              });
            if (subs[s] == I) {
                row.l1_fI = l1;
                const double single = outside * deterministic_sum<double>(npts, opts.threads, [&](std::size_t q) {
                                          return std::abs(term_values[q]) * vol[q];
                                      });
                const double exact = counterexample_l1_term(n, l, l, k);
                row.term_rel_error = std::abs(single - exact) / exact;
                rep.max_term_rel_error = std::max(rep.max_term_rel_error, row.term_rel_error);
                row.l1_fI_exact = (rep.rows.empty() ? 0.0 : rep.rows.back().l1_fI_exact) + exact;
            } else {
                row.l1_fJ.push_back(l1);
            }
        }
        rep.rows.push_back(std::move(row));
    }

    if (K >= 1) {
        const OneForm f = dbar_apply(u, BlockPartition::singletons(n));
        for (SubsetIndex J : nonempty_subsets(n)) {
            if (J.subset_of(I)) continue;
            if (!subscript_derivative(f, J).is_zero()) rep.zero_outside = false;
        }
    }

    // Slope of the partial sums against log K over the upper half of the range.
    const int lo = std::max(1, K / 2);
    if (K - lo >= 1) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int cnt = 0;
        for (const auto& r : rep.rows) {
            if (r.K < lo) continue;
            const double x = std::log(static_cast<double>(r.K));
            sx += x;
            sy += r.l1_fI;
            sxx += x * x;
            sxy += x * r.l1_fI;
            ++cnt;
        }
        rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    }
    rep.tail_ratio.assign(rep.proper.size(), 0.0);
    if (K >= 1) {
        const auto& last = rep.rows.back();
        const int half = K / 2;
        for (std::size_t s = 0; s < rep.proper.size(); ++s) {
            const double at_half = half >= 1 ? rep.rows[static_cast<std::size_t>(half - 1)].l1_fJ[s] : 0.0;
            rep.tail_ratio[s] = (last.l1_fJ[s] - at_half) / last.l1_fJ[s];
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

/// Σ over nonempty block subsets B and over the family members of f_B of a norm.
template <class Norm>
double family_norm_sum(const OneForm& f, SubsetIndex blocks_subset, Norm&& norm) {
    double s = 0.0;
    for (const auto& m : subscript_family(f, blocks_subset)) s += norm(m.value);
    return s;
}

}  // namespace

LpRatio lp_ratio_report(const OneForm& f, const ProductDomain& dom, double p, int N, bool use_recursion,
                        int threads) {
    const OneForm fb = f.with_blocks(dom.blocks());
    MultiIndexPoly u;
    if (use_recursion) {
        u = recursive_solve(fb, dom, disc_solvers(dom)).u;
    } else {
        if (!dom.blocks().all_singletons()) throw SpecError("T needs one-dimensional blocks; use the recursion");
        TOptions o;
        o.max_dim = std::max(kDefaultMaxDim, dom.dimension());
        u = TOperator(fb, dom, o).exact_solution();
    }
    const Grid grid = tensor_grid(dom, N);
    LpRatio r;
    r.p = p;
    r.lhs = lp_norm(sample_field(as_point_fn(u), grid, threads), p, threads);
    for (SubsetIndex B : nonempty_subsets(dom.blocks().block_count())) {
        r.rhs += family_norm_sum(fb, B, [&](const MultiIndexPoly& g) {
            return g.is_zero() ? 0.0 : lp_norm(sample_field(as_point_fn(g), grid, threads), p, threads);
        });
    }
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? kInf : 0.0);
    return r;
}

HolderTheoremReport holder_theorem_report(const OneForm& f, const ProductDomain& dom,
                                          std::array<double, 2> alpha, int N,
                                          const HolderSampling& sampling, int threads) {
    if (dom.blocks().block_count() != 2) throw SpecError("the Hölder report needs exactly two blocks");
    const OneForm fb = f.with_blocks(dom.blocks());
    const MultiIndexPoly u = recursive_solve(fb, dom, disc_solvers(dom)).u;
    const Grid grid = tensor_grid(dom, N);
    const BlockPartition& blocks = dom.blocks();
    HolderTheoremReport r;
    const GridField uf = sample_field(as_point_fn(u), grid, threads);
    r.seminorm = iterated_holder_seminorm(uf, blocks, alpha, sampling);
    r.sup_u = lp_norm(uf, kInf, threads);
    r.lhs = r.seminorm + r.sup_u;
    auto field = [&](const MultiIndexPoly& g) { return sample_field(as_point_fn(g), grid, threads); };
    r.f1_term = family_norm_sum(fb, SubsetIndex(0b01u), [&](const MultiIndexPoly& g) {
        return g.is_zero() ? 0.0 : linf_holder_norm(field(g), blocks, 1, alpha[1], sampling);
    });
    r.f2_term = family_norm_sum(fb, SubsetIndex(0b10u), [&](const MultiIndexPoly& g) {
        return g.is_zero() ? 0.0 : linf_holder_norm(field(g), blocks, 0, alpha[0], sampling);
    });
    r.f12_term = family_norm_sum(fb, SubsetIndex(0b11u), [&](const MultiIndexPoly& g) {
        return g.is_zero() ? 0.0 : lp_norm(field(g), kInf, threads);
    });
    r.rhs = r.f1_term + r.f2_term + r.f12_term;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? kInf : 0.0);
    return r;
}

}  // namespace dbar
