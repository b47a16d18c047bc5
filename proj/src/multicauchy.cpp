#include "dbar/multicauchy.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>

#include "dbar/parallel.hpp"

namespace dbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

void require_point(const ProductDomain& dom, std::span<const cplx> z) {
    if (static_cast<int>(z.size()) != dom.dimension()) {
        throw SpecError("point has " + std::to_string(z.size()) + " coordinates, domain has " +
                        std::to_string(dom.dimension()));
    }
}

void require_unit_discs(const ProductDomain& dom, SubsetIndex I) {
    for (int j : I.elements()) {
        if (!dom.factor(j).is_unit_disc()) {
            throw SpecError("exact path requires unit disc factors (factor " + std::to_string(j + 1) +
                            " is not)");
        }
    }
}

cplx ipow(cplx z, int k) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

/// Σ_terms c Π_{i∈I} M_i(a_i, b_i) Π_{i∉I} z_i^{a_i} z̄_i^{b_i}.
cplx contract(const MultiIndexPoly& h, SubsetIndex I, const std::vector<const MomentTable*>& tables,
              std::span<const cplx> z) {
    cplx acc{0.0, 0.0};
    const int n = h.dimension();
    for (const auto& [m, c] : h.terms()) {
        cplx v = c.to_complex();
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (I.contains(i)) {
                v *= (*tables[k])(m.a[k], m.b[k]);
            } else {
                if (m.a[k]) v *= ipow(z[k], m.a[k]);
                if (m.b[k]) v *= ipow(std::conj(z[k]), m.b[k]);
            }
        }
        acc += v;
    }
    return acc;
}

int max_exponent_a(const MultiIndexPoly& p, int j) { return p.is_zero() ? 0 : p.max_a(j); }
int max_exponent_b(const MultiIndexPoly& p, int j) { return p.is_zero() ? 0 : p.max_b(j); }

/// Recursive tensor-product sum over the rules of the factors listed in elems.
cplx nested_sum(const PointFn& h, const std::vector<int>& elems, std::size_t level,
                const std::vector<QuadratureRule>& rules, const std::vector<cplx>& scale_kernel_z,
                std::vector<cplx>& pt, bool solid) {
    if (level == elems.size()) return h(pt);
    const auto i = static_cast<std::size_t>(elems[level]);
    const QuadratureRule& rule = rules[level];
    const cplx zi = scale_kernel_z[level];
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < rule.size(); ++k) {
        pt[i] = rule.nodes[k];
        const cplx w = solid ? cplx(rule.weights[k].real(), 0.0) : rule.weights[k];
        acc += w / (rule.nodes[k] - zi) * nested_sum(h, elems, level + 1, rules, scale_kernel_z, pt, solid);
    }
    pt[i] = zi;
    return solid ? acc / kPi : acc / kTwoPiI;
}

/// The |I|-fold barred derivative of u over the elements of I.
MultiIndexPoly barred_derivative(MultiIndexPoly u, SubsetIndex I) {
    for (int j : I.elements()) u = wirtinger_dbar(u, j);
    return u;
}

int reduced_order(int m, int l) {
    const int shift = std::max(0, l - 2);
    return std::max(8, m >> shift);
}

}  // namespace

std::string to_string(EvalPath path) {
    switch (path) {
        case EvalPath::Exact: return "exact";
        case EvalPath::Quadrature: return "quadrature";
        case EvalPath::Sampled: return "sampled";
    }
    return "unknown";
}

EvalPath parse_eval_path(const std::string& name) {
    if (name == "exact") return EvalPath::Exact;
    if (name == "quadrature") return EvalPath::Quadrature;
    if (name == "sampled") return EvalPath::Sampled;
    throw SpecError("unknown mode '" + name + "' (expected exact, quadrature or sampled)");
}

PointFn as_point_fn(const MultiIndexPoly& p) {
    return [np = NumericPoly(p)](std::span<const cplx> z) { return np(z); };
}

// ---------------------------------------------------------------------------

cplx multi_cauchy_boundary(const PointFn& u, const ProductDomain& dom, std::span<const cplx> z,
                           int m, double margin) {
    require_point(dom, z);
    check_interior(dom, z, margin);
    std::vector<int> elems;
    std::vector<QuadratureRule> rules;
    std::vector<cplx> zs;
    for (int j = 0; j < dom.dimension(); ++j) {
        elems.push_back(j);
        rules.push_back(boundary_quadrature(dom.factor(j), m));
        zs.push_back(z[static_cast<std::size_t>(j)]);
    }
    std::vector<cplx> pt(z.begin(), z.end());
    return nested_sum(u, elems, 0, rules, zs, pt, false);
}

cplx multi_cauchy_boundary(const MultiIndexPoly& u, const ProductDomain& dom,
                           std::span<const cplx> z, int m, double margin) {
    require_point(dom, z);
    check_interior(dom, z, margin);
    const int n = dom.dimension();
    std::vector<MomentTable> tables;
    std::vector<const MomentTable*> ptrs;
    tables.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        tables.push_back(boundary_moments(boundary_quadrature(dom.factor(j), m), z[k],
                                          max_exponent_a(u, j), max_exponent_b(u, j)));
    }
    for (const auto& t : tables) ptrs.push_back(&t);
    return contract(u, SubsetIndex::full(n), ptrs, z);
}

MultiIndexPoly multi_cauchy_boundary_exact(const MultiIndexPoly& u) {
    MultiIndexPoly out = u;
    for (int j = 0; j < u.dimension(); ++j) out = disc_boundary_transform(out, j);
    return out;
}

cplx partial_solid_cauchy(SubsetIndex I, const PointFn& h, const ProductDomain& dom,
                          std::span<const cplx> z, int m, double margin) {
    require_point(dom, z);
    check_interior(dom, z, margin);
    std::vector<int> elems = I.elements();
    std::vector<QuadratureRule> rules;
    std::vector<cplx> zs;
    for (int j : elems) {
        const cplx zj = z[static_cast<std::size_t>(j)];
        rules.push_back(singular_area_quadrature(dom.factor(j), m, zj, margin));
        zs.push_back(zj);
    }
    std::vector<cplx> pt(z.begin(), z.end());
    return nested_sum(h, elems, 0, rules, zs, pt, true);
}

cplx partial_solid_cauchy(SubsetIndex I, const MultiIndexPoly& h, const ProductDomain& dom,
                          std::span<const cplx> z, int m, double margin) {
    require_point(dom, z);
    check_interior(dom, z, margin);
    const int n = dom.dimension();
    std::vector<MomentTable> tables(static_cast<std::size_t>(n));
    std::vector<const MomentTable*> ptrs(static_cast<std::size_t>(n), nullptr);
    for (int j : I.elements()) {
        const auto k = static_cast<std::size_t>(j);
        tables[k] = solid_moments(singular_area_quadrature(dom.factor(j), m, z[k], margin), z[k],
                                  max_exponent_a(h, j), max_exponent_b(h, j));
        ptrs[k] = &tables[k];
    }
    return contract(h, I, ptrs, z);
}

MultiIndexPoly partial_solid_cauchy_exact(SubsetIndex I, const MultiIndexPoly& h) {
    MultiIndexPoly out = h;
    for (int j : I.elements()) out = disc_solid_transform(out, j);
    return out;
}

// ---------------------------------------------------------------------------

PointFn sampled_subscript_derivative(const SampledForm& f, std::span<const int> presentation) {
    if (presentation.empty()) throw SpecError("f_I is undefined for the empty set");
    for (int i : presentation) {
        if (i < 0 || i >= f.n) throw SpecError("subset element out of range");
    }
    PointFn g = f.components.at(static_cast<std::size_t>(presentation[0]));
    const double h = f.step;
    for (std::size_t t = 1; t < presentation.size(); ++t) {
        const auto j = static_cast<std::size_t>(presentation[t]);
        g = [g, j, h](std::span<const cplx> z) {
            std::vector<cplx> p(z.begin(), z.end());
            const cplx z0 = p[j];
            p[j] = z0 + h;
            const cplx xp = g(p);
            p[j] = z0 - h;
            const cplx xm = g(p);
            p[j] = z0 + cplx(0.0, h);
            const cplx yp = g(p);
            p[j] = z0 - cplx(0.0, h);
            const cplx ym = g(p);
            return ((xp - xm) + cplx(0.0, 1.0) * (yp - ym)) / (4.0 * h);
        };
    }
    return g;
}

TOperator::TOperator(const OneForm& f, ProductDomain dom, TOptions opts)
    : dom_(std::move(dom)), opts_(opts) {
    const int n = dom_.dimension();
    if (f.dimension() != n) throw SpecError("form dimension does not match domain dimension");
    if (n > opts_.max_dim) {
        throw SpecError("dimension " + std::to_string(n) + " exceeds the configured maximum " +
                        std::to_string(opts_.max_dim));
    }
    const ClosedCheck chk = dbar_closed_check(f);
    if (!chk.closed) throw NotClosedError(chk.residual);

    subsets_ = nonempty_subsets(n);
    for (SubsetIndex I : subsets_) {
        const std::vector<int> e = I.elements();
        data_.push_back(detail::subscript_derivative_unchecked(f, e));
    }
    switch (opts_.path) {
        case EvalPath::Exact: {
            require_unit_discs(dom_, SubsetIndex::full(n));
            exact_solution_ = MultiIndexPoly(n);
            for (std::size_t s = 0; s < subsets_.size(); ++s) {
                exact_terms_.push_back(partial_solid_cauchy_exact(subsets_[s], data_[s]));
                exact_numeric_.emplace_back(exact_terms_.back());
                exact_solution_ -= exact_terms_.back();
            }
            break;
        }
        case EvalPath::Quadrature:
            break;
        case EvalPath::Sampled:
            for (const auto& d : data_) sampled_.push_back(as_point_fn(d));
            break;
    }
}

TOperator::TOperator(const SampledForm& f, ProductDomain dom, TOptions opts)
    : dom_(std::move(dom)), opts_(opts) {
    opts_.path = EvalPath::Sampled;
    const int n = dom_.dimension();
    if (f.n != n || static_cast<int>(f.components.size()) != n) {
        throw SpecError("sampled form dimension does not match domain dimension");
    }
    if (n > opts_.max_dim) throw SpecError("dimension exceeds the configured maximum");
    subsets_ = nonempty_subsets(n);
    for (SubsetIndex I : subsets_) {
        const std::vector<int> e = I.elements();
        sampled_.push_back(sampled_subscript_derivative(f, e));
    }
}

void TOperator::validate(std::span<const cplx> z) const {
    require_point(dom_, z);
    check_interior(dom_, z, opts_.boundary_margin);
}

cplx TOperator::term(std::size_t s, std::span<const cplx> z) const {
    const SubsetIndex I = subsets_[s];
    switch (opts_.path) {
        case EvalPath::Exact:
            return exact_numeric_[s](z);
        case EvalPath::Quadrature:
            return partial_solid_cauchy(I, data_[s], dom_, z, opts_.area_m, opts_.boundary_margin);
        case EvalPath::Sampled:
            return partial_solid_cauchy(I, sampled_[s], dom_, z, reduced_order(opts_.area_m, I.size()),
                                        opts_.boundary_margin);
    }
    return {};
}

void TOperator::terms(std::span<const cplx> z, std::span<cplx> out) const {
    validate(z);
    if (opts_.path != EvalPath::Quadrature) {
        for (std::size_t s = 0; s < subsets_.size(); ++s) out[s] = term(s, z);
        return;
    }
    // Share one moment table per factor across all subsets.
    const int n = dom_.dimension();
    std::vector<MomentTable> tables(static_cast<std::size_t>(n));
    std::vector<const MomentTable*> ptrs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        int ma = 0;
        int mb = 0;
        for (const auto& d : data_) {
            ma = std::max(ma, max_exponent_a(d, j));
            mb = std::max(mb, max_exponent_b(d, j));
        }
        const auto k = static_cast<std::size_t>(j);
        tables[k] = solid_moments(
            singular_area_quadrature(dom_.factor(j), opts_.area_m, z[k], opts_.boundary_margin), z[k],
            ma, mb);
        ptrs[k] = &tables[k];
    }
    for (std::size_t s = 0; s < subsets_.size(); ++s) out[s] = contract(data_[s], subsets_[s], ptrs, z);
}

SolveReport TOperator::evaluate(std::span<const cplx> z) const {
    validate(z);
    SolveReport rep;
    rep.path = opts_.path;
    rep.boundary_m = opts_.boundary_m;
    rep.area_m = opts_.area_m;
    rep.subsets = subsets_;
    rep.terms.resize(subsets_.size());
    rep.term_seconds.resize(subsets_.size());
    for (std::size_t s = 0; s < subsets_.size(); ++s) {
        const auto t0 = std::chrono::steady_clock::now();
        rep.terms[s] = term(s, z);
        rep.term_seconds[s] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rep.value = -pairwise_sum(rep.terms);
    return rep;
}

cplx TOperator::operator()(std::span<const cplx> z) const {
    std::vector<cplx> t(subsets_.size());
    terms(z, t);
    return -pairwise_sum(t);
}

const MultiIndexPoly& TOperator::exact_solution() const {
    if (opts_.path != EvalPath::Exact) throw SpecError("exact solution requires the exact path");
    return exact_solution_;
}

const std::vector<MultiIndexPoly>& TOperator::exact_terms() const {
    if (opts_.path != EvalPath::Exact) throw SpecError("exact terms require the exact path");
    return exact_terms_;
}

SolveReport operator_T(const OneForm& f, const ProductDomain& dom, std::span<const cplx> z,
                       const TOptions& opts) {
    return TOperator(f, dom, opts).evaluate(z);
}

MultiIndexPoly operator_T_exact_over(const OneForm& f, std::span<const int> coords) {
    const int n = f.dimension();
    for (std::size_t x = 0; x < coords.size(); ++x) {
        for (std::size_t y = x + 1; y < coords.size(); ++y) {
            const MultiIndexPoly d = wirtinger_dbar(f.component(coords[x]), coords[y]) -
                                     wirtinger_dbar(f.component(coords[y]), coords[x]);
            if (!d.is_zero()) throw NotClosedError(d.max_abs_coefficient());
        }
    }
    MultiIndexPoly out(n);
    const auto l = static_cast<std::uint32_t>(coords.size());
    for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
        std::vector<int> pres;
        for (std::uint32_t t = 0; t < l; ++t) {
            if ((mask >> t) & 1u) pres.push_back(coords[t]);
        }
        const SubsetIndex I = SubsetIndex::from_elements(pres);
        out -= partial_solid_cauchy_exact(I, detail::subscript_derivative_unchecked(f, pres));
    }
    return out;
}

MultiIndexPoly operator_T_exact(const OneForm& f) {
    std::vector<int> all(static_cast<std::size_t>(f.dimension()));
    for (int j = 0; j < f.dimension(); ++j) all[static_cast<std::size_t>(j)] = j;
    return operator_T_exact_over(f, all);
}

double representation_residual(const MultiIndexPoly& u, const ProductDomain& dom,
                               std::span<const cplx> z, const TOptions& opts) {
    require_point(dom, z);
    if (u.dimension() != dom.dimension()) throw SpecError("polynomial dimension mismatch");
    check_interior(dom, z, opts.boundary_margin);
    const int n = dom.dimension();
    const std::vector<SubsetIndex> subsets = all_subsets(n);
    switch (opts.path) {
        case EvalPath::Exact: {
            require_unit_discs(dom, SubsetIndex::full(n));
            MultiIndexPoly diff = multi_cauchy_boundary_exact(u);
            for (SubsetIndex I : subsets) diff -= partial_solid_cauchy_exact(I, barred_derivative(u, I));
            return std::abs(diff.evaluate(z));
        }
        case EvalPath::Quadrature: {
            const cplx lhs = multi_cauchy_boundary(u, dom, z, opts.boundary_m, opts.boundary_margin);
            std::vector<cplx> terms;
            for (SubsetIndex I : subsets) {
                terms.push_back(partial_solid_cauchy(I, barred_derivative(u, I), dom, z, opts.area_m,
                                                     opts.boundary_margin));
            }
            return std::abs(lhs - pairwise_sum(terms));
        }
        case EvalPath::Sampled: {
            const cplx lhs = multi_cauchy_boundary(as_point_fn(u), dom, z, opts.boundary_m,
                                                   opts.boundary_margin);
            std::vector<cplx> terms;
            for (SubsetIndex I : subsets) {
                terms.push_back(partial_solid_cauchy(I, as_point_fn(barred_derivative(u, I)), dom, z,
                                                     reduced_order(opts.area_m, I.size()),
                                                     opts.boundary_margin));
            }
            return std::abs(lhs - pairwise_sum(terms));
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------

FieldResult solve_field(const TOperator& T, const Grid& grid, int threads) {
    if (grid.dimension() != T.domain().dimension()) throw SpecError("grid dimension mismatch");
    const std::size_t npts = grid.size();
    const std::size_t nsub = T.subsets().size();
    FieldResult res;
    res.subsets = T.subsets();
    res.field.grid = grid;
    res.field.values.assign(npts, cplx(std::nan(""), std::nan("")));

    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (npts + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> block_sup(blocks, std::vector<double>(nsub, 0.0));
    std::vector<std::vector<std::size_t>> block_excluded(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
        std::vector<cplx> z(static_cast<std::size_t>(grid.dimension()));
        std::vector<cplx> t(nsub);
        const std::size_t end = std::min(npts, (b + 1) * kBlock);
        for (std::size_t k = b * kBlock; k < end; ++k) {
            grid.point(k, z);
            try {
                T.terms(z, t);
            } catch (const NearBoundaryError&) {
                block_excluded[b].push_back(k);
                continue;
            }
            for (std::size_t s = 0; s < nsub; ++s) {
                block_sup[b][s] = nan_max(block_sup[b][s], std::abs(t[s]));
            }
            res.field.values[k] = -pairwise_sum(t);
        }
    }, 1);
    res.term_sup.assign(nsub, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t s = 0; s < nsub; ++s) res.term_sup[s] = nan_max(res.term_sup[s], block_sup[b][s]);
        res.excluded.insert(res.excluded.end(), block_excluded[b].begin(), block_excluded[b].end());
    }
    return res;
}

}  // namespace dbar
