#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dbar/forms.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

using Rng = std::mt19937_64;

/// Shape of random test polynomials. Coefficients are (p + iq)/4 with small
/// integers p, q, so exact arithmetic stays cheap.
struct PolyShape {
    int max_a = 3;
    int max_b = 3;
    int min_terms = 4;
    int max_terms = 6;
};

MultiIndexPoly random_poly(int n, Rng& rng, const PolyShape& shape = {});

/// ∂̄u for a random u; closed by construction.
OneForm random_closed_form(const BlockPartition& blocks, Rng& rng, const PolyShape& shape = {});

/// A point with every coordinate inside its factor, at least (1 - shrink) of the
/// way in from the boundary relative to the factor's size.
std::vector<cplx> random_interior_point(const ProductDomain& dom, Rng& rng, double shrink = 0.9);

}  // namespace dbar
