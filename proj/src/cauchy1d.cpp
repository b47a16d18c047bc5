#include "dbar/cauchy1d.hpp"

#include <cmath>
#include <numbers>

namespace dbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

void require_one_variable(const MultiIndexPoly& p) {
    if (p.dimension() != 1) throw SpecError("expected a polynomial in one variable");
}

}  // namespace

cplx cauchy_boundary(const ScalarFn& g, const PlanarDomain& dom, cplx z, int m, double margin) {
    check_interior(dom, z, margin);
    return cauchy_boundary(g, boundary_quadrature(dom, m), z);
}

cplx cauchy_boundary(const ScalarFn& g, const QuadratureRule& rule, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < rule.size(); ++k) {
        acc += rule.weights[k] * g(rule.nodes[k]) / (rule.nodes[k] - z);
    }
    return acc / kTwoPiI;
}

cplx cauchy_solid(const ScalarFn& h, const PlanarDomain& dom, cplx z, int m, double margin) {
    return cauchy_solid(h, singular_area_quadrature(dom, m, z, margin), z);
}

cplx cauchy_solid(const ScalarFn& h, const QuadratureRule& rule, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < rule.size(); ++k) {
        acc += rule.weights[k].real() * h(rule.nodes[k]) / (rule.nodes[k] - z);
    }
    return acc / kPi;
}

double cauchy_solid_abs(const ScalarFn& h, const PlanarDomain& dom, cplx z, int m, double margin) {
    const QuadratureRule rule = singular_area_quadrature(dom, m, z, margin);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        acc += rule.weights[k].real() * std::abs(h(rule.nodes[k])) / std::abs(rule.nodes[k] - z);
    }
    return acc / kPi;
}

cplx disc_monomial_solid(int a, int b, cplx z) {
    if (a < 0 || b < 0) throw SpecError("monomial exponents must be nonnegative");
    const cplx zb = std::conj(z);
    cplx v = -std::pow(zb, b + 1) * std::pow(z, a);
    if (a >= b + 1) v += std::pow(z, a - b - 1);
    return v / static_cast<double>(b + 1);
}

MultiIndexPoly disc_solid_transform(const MultiIndexPoly& p, int j) {
    if (j < 0 || j >= p.dimension()) throw SpecError("variable index out of range");
    const auto k = static_cast<std::size_t>(j);
    MultiIndexPoly out(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        const int a = m.a[k];
        const int b = m.b[k];
        const Rational scale = ratio(1, b + 1);
        Monomial t = m;
        if (b + 1 > 255) throw SpecError("exponent out of range [0, 255]");
        t.b[k] = static_cast<std::uint8_t>(b + 1);
        out.add_term(t, -(c * scale));
        if (a >= b + 1) {
            Monomial h = m;
            h.a[k] = static_cast<std::uint8_t>(a - b - 1);
            h.b[k] = 0;
            out.add_term(h, c * scale);
        }
    }
    return out;
}

MultiIndexPoly disc_boundary_transform(const MultiIndexPoly& p, int j) {
    if (j < 0 || j >= p.dimension()) throw SpecError("variable index out of range");
    const auto k = static_cast<std::size_t>(j);
    MultiIndexPoly out(p.dimension());
    // On the unit circle ζ^a ζ̄^b = ζ^{a-b}; only nonnegative powers survive.
    for (const auto& [m, c] : p.terms()) {
        if (m.a[k] < m.b[k]) continue;
        Monomial t = m;
        t.a[k] = static_cast<std::uint8_t>(m.a[k] - m.b[k]);
        t.b[k] = 0;
        out.add_term(t, c);
    }
    return out;
}

MultiIndexPoly solve_dbar_1d(const MultiIndexPoly& f, int j) { return -disc_solid_transform(f, j); }

ScalarFn solve_dbar_1d(ScalarFn f, const PlanarDomain& dom, int m) {
    return [f = std::move(f), dom, m](cplx z) { return -cauchy_solid(f, dom, z, m); };
}

double stokes_residual(const MultiIndexPoly& g, const PlanarDomain& dom, cplx z, int m_boundary,
                       int m_area) {
    require_one_variable(g);
    check_interior(dom, z);
    const NumericPoly gn(g);
    const NumericPoly gz(wirtinger_dbar(g, 0));
    const ScalarFn gf = [&gn](cplx w) { return gn(std::span<const cplx>(&w, 1)); };
    const ScalarFn gzf = [&gz](cplx w) { return gz(std::span<const cplx>(&w, 1)); };
    const cplx boundary = cauchy_boundary(gf, dom, z, m_boundary);
    const cplx solid = cauchy_solid(gzf, dom, z, m_area);
    return std::abs(boundary - solid - gf(z));
}

MultiIndexPoly disc_bergman_project(const MultiIndexPoly& p, int j) {
    if (j < 0 || j >= p.dimension()) throw SpecError("variable index out of range");
    const auto k = static_cast<std::size_t>(j);
    MultiIndexPoly out(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        const int a = m.a[k];
        const int b = m.b[k];
        if (a < b) continue;
        Monomial t = m;
        t.a[k] = static_cast<std::uint8_t>(a - b);
        t.b[k] = 0;
        out.add_term(t, c * ratio(a - b + 1, a + 1));
    }
    return out;
}

namespace {

/// Σ_k w_k ζ_k^a ζ̄_k^b kernel_k for all (a, b) in the table.
MomentTable accumulate_moments(const QuadratureRule& rule, const std::vector<cplx>& kernel,
                               int max_a, int max_b, cplx scale) {
    MomentTable t;
    t.max_a = max_a;
    t.max_b = max_b;
    const auto cols = static_cast<std::size_t>(max_b + 1);
    t.values.assign(static_cast<std::size_t>(max_a + 1) * cols, cplx(0.0, 0.0));
    std::vector<cplx> zb(cols);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const cplx z = rule.nodes[k];
        const cplx zc = std::conj(z);
        zb[0] = kernel[k];
        for (std::size_t b = 1; b < cols; ++b) zb[b] = zb[b - 1] * zc;
        cplx za{1.0, 0.0};
        for (int a = 0; a <= max_a; ++a) {
            cplx* row = t.values.data() + static_cast<std::size_t>(a) * cols;
            for (std::size_t b = 0; b < cols; ++b) row[b] += za * zb[b];
            za *= z;
        }
    }
    for (cplx& v : t.values) v *= scale;
    return t;
}

}  // namespace

MomentTable solid_moments(const QuadratureRule& singular_rule, cplx z, int max_a, int max_b) {
    std::vector<cplx> kernel(singular_rule.size());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        kernel[k] = singular_rule.weights[k].real() / (singular_rule.nodes[k] - z);
    }
    return accumulate_moments(singular_rule, kernel, max_a, max_b, cplx(1.0 / kPi, 0.0));
}

MomentTable boundary_moments(const QuadratureRule& boundary_rule, cplx z, int max_a, int max_b) {
    std::vector<cplx> kernel(boundary_rule.size());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        kernel[k] = boundary_rule.weights[k] / (boundary_rule.nodes[k] - z);
    }
    return accumulate_moments(boundary_rule, kernel, max_a, max_b, 1.0 / kTwoPiI);
}

}  // namespace dbar
