#include "dbar/random.hpp"

#include <cmath>
#include <numbers>

namespace dbar {

MultiIndexPoly random_poly(int n, Rng& rng, const PolyShape& shape) {
    std::uniform_int_distribution<int> terms(shape.min_terms, shape.max_terms);
    std::uniform_int_distribution<int> ea(0, shape.max_a);
    std::uniform_int_distribution<int> eb(0, shape.max_b);
    std::uniform_int_distribution<int> c(-8, 8);
    MultiIndexPoly p(n);
    const int count = terms(rng);
    std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int t = 0; t < count; ++t) {
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = ea(rng);
            b[static_cast<std::size_t>(j)] = eb(rng);
        }
        int re = c(rng), im = c(rng);
        if (re == 0 && im == 0) re = 1;
        p += MultiIndexPoly::monomial(n, a, b, ExactComplex(ratio(re, 4), ratio(im, 4)));
    }
    return p;
}

OneForm random_closed_form(const BlockPartition& blocks, Rng& rng, const PolyShape& shape) {
    return dbar_apply(random_poly(blocks.dimension(), rng, shape), blocks);
}

std::vector<cplx> random_interior_point(const ProductDomain& dom, Rng& rng, double shrink) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> z;
    for (const PlanarDomain& d : dom.factors()) {
        if (d.is_disc()) {
            const double r = shrink * d.radius() * std::sqrt(u(rng));
            z.push_back(d.center() + std::polar(r, 2.0 * std::numbers::pi * u(rng)));
        } else {
            const cplx mid = 0.5 * (d.lo() + d.hi());
            const cplx half = 0.5 * (d.hi() - d.lo());
            const double x = shrink * (2.0 * u(rng) - 1.0);
            const double y = shrink * (2.0 * u(rng) - 1.0);
            z.push_back(mid + cplx(x * half.real(), y * half.imag()));
        }
    }
    return z;
}

}  // namespace dbar
