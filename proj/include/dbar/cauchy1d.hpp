#pragma once

#include <functional>
#include <vector>

#include "dbar/forms.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

using ScalarFn = std::function<cplx(cplx)>;

/// Boundary transform (1/2πi) ∮ g(ζ) dζ / (ζ - z).
cplx cauchy_boundary(const ScalarFn& g, const PlanarDomain& dom, cplx z, int m,
                     double margin = 1e-8);
/// Same with a prebuilt boundary rule; z must already be checked interior.
cplx cauchy_boundary(const ScalarFn& g, const QuadratureRule& rule, cplx z);

/// Solid transform (1/π) ∫ h(ζ) / (ζ - z) dA.
cplx cauchy_solid(const ScalarFn& h, const PlanarDomain& dom, cplx z, int m,
                  double margin = 1e-8);
/// Same with a prebuilt singular rule centred at z.
cplx cauchy_solid(const ScalarFn& h, const QuadratureRule& rule, cplx z);

/// Absolute transform (1/π) ∫ |h(ζ)| / |ζ - z| dA.
double cauchy_solid_abs(const ScalarFn& h, const PlanarDomain& dom, cplx z, int m,
                        double margin = 1e-8);

/// Closed form of the solid transform of ζ^a ζ̄^b over the unit disc.
cplx disc_monomial_solid(int a, int b, cplx z);

/// Exact solid transform on the unit disc in variable j, the other variables
/// carried along as parameters.
MultiIndexPoly disc_solid_transform(const MultiIndexPoly& p, int j);
/// Exact boundary transform on the unit circle in variable j.
MultiIndexPoly disc_boundary_transform(const MultiIndexPoly& p, int j);

/// v = -C(f) in variable j of a unit-disc factor; ∂v/∂z̄_j = f exactly.
MultiIndexPoly solve_dbar_1d(const MultiIndexPoly& f, int j = 0);
/// v = -C(f) by quadrature on any supported domain.
ScalarFn solve_dbar_1d(ScalarFn f, const PlanarDomain& dom, int m);

/// |𝒞(g)(z) - C(∂g/∂ζ̄)(z) - g(z)| for one-variable g, all three terms numeric.
double stokes_residual(const MultiIndexPoly& g, const PlanarDomain& dom, cplx z, int m_boundary,
                       int m_area);

/// Bergman projection of the unit disc in variable j: z^a z̄^b maps to
/// ((a-b+1)/(a+1)) z^{a-b} when a >= b and to 0 otherwise.
MultiIndexPoly disc_bergman_project(const MultiIndexPoly& p, int j = 0);

/// Tables of transforms of ζ^a ζ̄^b at one point, a <= max_a, b <= max_b.
/// Entry (a, b) is stored at a * (max_b + 1) + b.
struct MomentTable {
    int max_a = 0;
    int max_b = 0;
    std::vector<cplx> values;

    cplx operator()(int a, int b) const {
        return values[static_cast<std::size_t>(a * (max_b + 1) + b)];
    }
};

/// Solid-transform moments by singular quadrature.
MomentTable solid_moments(const QuadratureRule& singular_rule, cplx z, int max_a, int max_b);
/// Boundary-transform moments by boundary quadrature.
MomentTable boundary_moments(const QuadratureRule& boundary_rule, cplx z, int max_a, int max_b);

}  // namespace dbar
