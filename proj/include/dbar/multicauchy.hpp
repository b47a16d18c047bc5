#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dbar/cauchy1d.hpp"
#include "dbar/forms.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

/// How transforms are evaluated.
///   Exact: closed-form monomial transforms, unit polydisc only.
///   Quadrature: per-factor moment tables from the quadrature rules (polynomial data).
///   Sampled: nested quadrature over callables.
enum class EvalPath { Exact, Quadrature, Sampled };

std::string to_string(EvalPath path);
EvalPath parse_eval_path(const std::string& name);

struct TOptions {
    EvalPath path = EvalPath::Exact;
    int boundary_m = 256;
    int area_m = 96;
    int max_dim = kDefaultMaxDim;
    /// Relative distance to a factor boundary below which evaluation is refused.
    double boundary_margin = 1e-8;
};

using PointFn = std::function<cplx(std::span<const cplx>)>;

/// NumericPoly as a PointFn.
PointFn as_point_fn(const MultiIndexPoly& p);

// ---------------------------------------------------------------------------
// Multi-Cauchy and partial solid transforms
// ---------------------------------------------------------------------------

/// 𝒞ₙ(u)(z) as nested boundary quadrature.
cplx multi_cauchy_boundary(const PointFn& u, const ProductDomain& dom, std::span<const cplx> z,
                           int m, double margin = 1e-8);
/// 𝒞ₙ(u)(z) for polynomial u from per-factor boundary moments.
cplx multi_cauchy_boundary(const MultiIndexPoly& u, const ProductDomain& dom,
                           std::span<const cplx> z, int m, double margin = 1e-8);
/// 𝒞ₙ(u) on the unit polydisc as a polynomial.
MultiIndexPoly multi_cauchy_boundary_exact(const MultiIndexPoly& u);

/// C^I(h)(z) as nested singular quadrature over the factors in I; the other
/// coordinates stay at z. The empty set returns h(z).
cplx partial_solid_cauchy(SubsetIndex I, const PointFn& h, const ProductDomain& dom,
                          std::span<const cplx> z, int m, double margin = 1e-8);
/// C^I(h)(z) for polynomial h from per-factor solid moments.
cplx partial_solid_cauchy(SubsetIndex I, const MultiIndexPoly& h, const ProductDomain& dom,
                          std::span<const cplx> z, int m, double margin = 1e-8);
/// C^I(h) on unit-disc factors as a polynomial in all variables.
MultiIndexPoly partial_solid_cauchy_exact(SubsetIndex I, const MultiIndexPoly& h);

// ---------------------------------------------------------------------------
// The solution operator
// ---------------------------------------------------------------------------

/// One evaluation of T(f)(z) with its subset terms C^I(f_I^{I^c})(z).
struct SolveReport {
    cplx value{0.0, 0.0};
    std::vector<SubsetIndex> subsets;
    std::vector<cplx> terms;
    std::vector<double> term_seconds;
    EvalPath path = EvalPath::Exact;
    int boundary_m = 0;
    int area_m = 0;
};

/// A (0,1)-form given by callables; barred derivatives by central differences.
struct SampledForm {
    int n = 0;
    std::vector<PointFn> components;
    double step = 1e-5;
};

/// (l-1)-fold barred difference quotient of component presentation[0].
PointFn sampled_subscript_derivative(const SampledForm& f, std::span<const int> presentation);

/// T(f) = -Σ_{∅≠I} C^I(f_I^{I^c}) prepared for repeated evaluation.
class TOperator {
public:
    /// Polynomial data. Throws NotClosedError for data that is not ∂̄-closed.
    TOperator(const OneForm& f, ProductDomain dom, TOptions opts = {});
    /// Callable data; always evaluated on the sampled path.
    TOperator(const SampledForm& f, ProductDomain dom, TOptions opts = {});

    const ProductDomain& domain() const noexcept { return dom_; }
    const TOptions& options() const noexcept { return opts_; }
    const std::vector<SubsetIndex>& subsets() const noexcept { return subsets_; }
    /// f_I for each subset (polynomial data only).
    const std::vector<MultiIndexPoly>& subset_data() const noexcept { return data_; }

    SolveReport evaluate(std::span<const cplx> z) const;
    cplx operator()(std::span<const cplx> z) const;
    /// Subset terms only, no timing; the hot path of solve_field.
    void terms(std::span<const cplx> z, std::span<cplx> out) const;

    /// T(f) as a polynomial (exact path only).
    const MultiIndexPoly& exact_solution() const;
    /// C^I(f_I) as polynomials (exact path only).
    const std::vector<MultiIndexPoly>& exact_terms() const;

private:
    cplx term(std::size_t s, std::span<const cplx> z) const;
    void validate(std::span<const cplx> z) const;

    ProductDomain dom_;
    TOptions opts_;
    std::vector<SubsetIndex> subsets_;
    std::vector<MultiIndexPoly> data_;
    std::vector<PointFn> sampled_;
    std::vector<MultiIndexPoly> exact_terms_;
    std::vector<NumericPoly> exact_numeric_;
    MultiIndexPoly exact_solution_;
};

SolveReport operator_T(const OneForm& f, const ProductDomain& dom, std::span<const cplx> z,
                       const TOptions& opts = {});

/// T restricted to the coordinates in coords, the rest acting as parameters,
/// on unit-disc factors: -Σ_{∅≠I⊆coords} C^I(f_I). Requires f closed in coords.
MultiIndexPoly operator_T_exact_over(const OneForm& f, std::span<const int> coords);
MultiIndexPoly operator_T_exact(const OneForm& f);

/// |𝒞ₙ(u)(z) - Σ_{I⊆[n]} C^I(u_I^{I^c})(z)| with u_I the |I|-fold barred derivative.
double representation_residual(const MultiIndexPoly& u, const ProductDomain& dom,
                               std::span<const cplx> z, const TOptions& opts = {});

// ---------------------------------------------------------------------------

struct FieldResult {
    GridField field;
    /// Flat indices refused by the near-boundary check; their values are NaN.
    std::vector<std::size_t> excluded;
    std::vector<SubsetIndex> subsets;
    /// max over evaluated points of |C^I(f_I)(z)| per subset.
    std::vector<double> term_sup;
};

/// T(f) at every grid point, row-major over factors.
FieldResult solve_field(const TOperator& T, const Grid& grid, int threads = 1);

}  // namespace dbar
