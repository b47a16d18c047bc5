#include "dbar/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace dbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_order(int m, int min, const char* what) {
    if (m < min) {
        throw SpecError(std::string(what) + " must be at least " + std::to_string(min) + ", got " +
                        std::to_string(m));
    }
}

std::array<cplx, 4> rectangle_corners(const PlanarDomain& dom) {
    const cplx lo = dom.lo();
    const cplx hi = dom.hi();
    return {lo, cplx(hi.real(), lo.imag()), hi, cplx(lo.real(), hi.imag())};
}

}  // namespace

// ---------------------------------------------------------------------------
// PlanarDomain
// ---------------------------------------------------------------------------

PlanarDomain PlanarDomain::disc(cplx center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw SpecError("disc radius must be positive");
    PlanarDomain d;
    d.kind_ = Kind::Disc;
    d.center_ = center;
    d.radius_ = radius;
    return d;
}

PlanarDomain PlanarDomain::rectangle(cplx lo, cplx hi) {
    if (!(lo.real() < hi.real()) || !(lo.imag() < hi.imag())) {
        throw SpecError("rectangle needs lo.re < hi.re and lo.im < hi.im");
    }
    PlanarDomain d;
    d.kind_ = Kind::Rectangle;
    d.lo_ = lo;
    d.hi_ = hi;
    d.center_ = 0.5 * (lo + hi);
    d.radius_ = 0.0;
    return d;
}

double PlanarDomain::area() const noexcept {
    if (kind_ == Kind::Disc) return kPi * radius_ * radius_;
    const cplx s = hi_ - lo_;
    return s.real() * s.imag();
}

double PlanarDomain::diameter() const noexcept {
    if (kind_ == Kind::Disc) return 2.0 * radius_;
    return std::abs(hi_ - lo_);
}

double PlanarDomain::distance_to_boundary(cplx z) const noexcept {
    if (kind_ == Kind::Disc) return radius_ - std::abs(z - center_);
    const double dx = std::min(z.real() - lo_.real(), hi_.real() - z.real());
    const double dy = std::min(z.imag() - lo_.imag(), hi_.imag() - z.imag());
    return std::min(dx, dy);
}

// ---------------------------------------------------------------------------
// ProductDomain
// ---------------------------------------------------------------------------

ProductDomain::ProductDomain(std::vector<PlanarDomain> factors)
    : ProductDomain(factors, BlockPartition::singletons(static_cast<int>(factors.size()))) {}

ProductDomain::ProductDomain(std::vector<PlanarDomain> factors, BlockPartition blocks)
    : factors_(std::move(factors)), blocks_(std::move(blocks)) {
    if (factors_.empty()) throw SpecError("product domain needs at least one factor");
    if (blocks_.dimension() != dimension()) {
        throw SpecError("block partition does not cover the planar factors");
    }
}

ProductDomain ProductDomain::polydisc(int n) {
    return ProductDomain(std::vector<PlanarDomain>(static_cast<std::size_t>(n), PlanarDomain::unit_disc()));
}

bool ProductDomain::is_unit_polydisc() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const PlanarDomain& d) { return d.is_unit_disc(); });
}

cplx QuadratureRule::weight_sum() const {
    cplx s{0.0, 0.0};
    for (const cplx& w : weights) s += w;
    return s;
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
    if (m < 1) throw SpecError("Gauss-Legendre order must be positive");
    std::vector<double> x(static_cast<std::size_t>(m));
    std::vector<double> w(static_cast<std::size_t>(m));
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = t;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (t * p1 - p0) / (t * t - 1.0);
        const double wt = 2.0 / ((1.0 - t * t) * dp * dp);
        x[static_cast<std::size_t>(i)] = -t;
        x[static_cast<std::size_t>(m - 1 - i)] = t;
        w[static_cast<std::size_t>(i)] = wt;
        w[static_cast<std::size_t>(m - 1 - i)] = wt;
    }
    if (m % 2 == 1) x[static_cast<std::size_t>(m / 2)] = 0.0;
    return {std::move(x), std::move(w)};
}

QuadratureRule boundary_quadrature(const PlanarDomain& dom, int m) {
    require_order(m, 8, "boundary quadrature order");
    QuadratureRule rule;
    rule.kind = QuadratureRule::Kind::Boundary;
    if (dom.is_disc()) {
        rule.nodes.reserve(static_cast<std::size_t>(m));
        rule.weights.reserve(static_cast<std::size_t>(m));
        const double h = 2.0 * kPi / m;
        for (int k = 0; k < m; ++k) {
            const cplx e = std::polar(1.0, h * k);
            rule.nodes.push_back(dom.center() + dom.radius() * e);
            rule.weights.push_back(kI * dom.radius() * e * h);
        }
        return rule;
    }
    const auto [x, w] = gauss_legendre(m);
    const auto c = rectangle_corners(dom);
    for (std::size_t e = 0; e < 4; ++e) {
        const cplx a = c[e];
        const cplx b = c[(e + 1) % 4];
        for (std::size_t i = 0; i < x.size(); ++i) {
            rule.nodes.push_back(a + (b - a) * (0.5 * (x[i] + 1.0)));
            rule.weights.push_back((b - a) * (0.5 * w[i]));
        }
    }
    return rule;
}

QuadratureRule area_quadrature(const PlanarDomain& dom, int m, int m_theta) {
    require_order(m, 8, "area quadrature order");
    const int na = m_theta > 0 ? m_theta : m;
    QuadratureRule rule;
    rule.kind = QuadratureRule::Kind::Area;
    const auto [x, w] = gauss_legendre(m);
    if (dom.is_disc()) {
        const double R = dom.radius();
        const double h = 2.0 * kPi / na;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = 0.5 * R * (x[i] + 1.0);
            const double wr = 0.5 * R * w[i] * r * h;
            for (int k = 0; k < na; ++k) {
                rule.nodes.push_back(dom.center() + std::polar(r, h * (k + 0.5)));
                rule.weights.emplace_back(wr, 0.0);
            }
        }
        return rule;
    }
    const cplx s = dom.hi() - dom.lo();
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            rule.nodes.push_back(dom.lo() + cplx(0.5 * s.real() * (x[i] + 1.0), 0.5 * s.imag() * (x[k] + 1.0)));
            rule.weights.emplace_back(0.25 * s.real() * s.imag() * w[i] * w[k], 0.0);
        }
    }
    return rule;
}

double disc_chord(cplx center, double radius, cplx z, double theta) {
    const cplx d = z - center;
    const double proj = (std::conj(d) * std::polar(1.0, theta)).real();
    return -proj + std::sqrt(radius * radius - std::norm(d) + proj * proj);
}

QuadratureRule singular_area_quadrature(const PlanarDomain& dom, int m, cplx z, double margin) {
    require_order(m, 8, "singular quadrature order");
    check_interior(dom, z, margin);
    QuadratureRule rule;
    rule.kind = QuadratureRule::Kind::SingularArea;
    rule.singular_center = z;
    const auto [x, w] = gauss_legendre(m);
    if (dom.is_disc()) {
        const double h = 2.0 * kPi / m;
        rule.nodes.reserve(x.size() * static_cast<std::size_t>(m));
        rule.weights.reserve(x.size() * static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            const double theta = h * k;
            const cplx e = std::polar(1.0, theta);
            const double rmax = disc_chord(dom.center(), dom.radius(), z, theta);
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double rho = 0.5 * rmax * (x[i] + 1.0);
                rule.nodes.push_back(z + rho * e);
                rule.weights.emplace_back(0.5 * rmax * w[i] * rho * h, 0.0);
            }
        }
        return rule;
    }
    // Duffy: ζ = z + t (E(s) - z) on the triangle with apex z over edge E. The s
    // integrand keeps a near-singular 1/(E(s) - z) when z is close to the edge, so
    // s = s0 + η sinh(v) about the foot s0 of the perpendicular flattens it.
    const auto c = rectangle_corners(dom);
    for (std::size_t e = 0; e < 4; ++e) {
        const cplx a = c[e];
        const cplx b = c[(e + 1) % 4];
        const double len = std::abs(b - a);
        // Edges run counterclockwise so z lies to the left.
        const double height = (std::conj(b - a) * (z - a)).imag() / len;
        const double s0 = (std::conj(b - a) * (z - a)).real() / (len * len);
        const double eta = height / len;
        const double v0 = std::asinh(-s0 / eta);
        const double v1 = std::asinh((1.0 - s0) / eta);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double v = v0 + 0.5 * (v1 - v0) * (x[i] + 1.0);
            const double s = s0 + eta * std::sinh(v);
            const double ws = 0.5 * (v1 - v0) * w[i] * eta * std::cosh(v);
            const cplx edge = a + (b - a) * s;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double t = 0.5 * (x[j] + 1.0);
                rule.nodes.push_back(z + t * (edge - z));
                rule.weights.emplace_back(ws * 0.5 * w[j] * t * len * height, 0.0);
            }
        }
    }
    return rule;
}

void check_interior(const PlanarDomain& dom, cplx z, double margin, int factor) {
    const double threshold = margin * dom.diameter();
    const double dist = dom.distance_to_boundary(z);
    if (!(dist > threshold)) throw NearBoundaryError(factor, dist, threshold);
}

void check_interior(const ProductDomain& dom, std::span<const cplx> z, double margin) {
    if (static_cast<int>(z.size()) != dom.dimension()) {
        throw SpecError("point dimension does not match domain dimension");
    }
    for (int j = 0; j < dom.dimension(); ++j) {
        check_interior(dom.factor(j), z[static_cast<std::size_t>(j)], margin, j);
    }
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

Grid::Grid(std::vector<FactorGrid> factors) : factors_(std::move(factors)) {
    strides_.assign(factors_.size(), 1);
    size_ = factors_.empty() ? 0 : 1;
    for (std::size_t j = factors_.size(); j-- > 0;) {
        if (factors_[j].points.size() != factors_[j].volumes.size()) {
            throw SpecError("factor grid points and volumes differ in length");
        }
        strides_[j] = size_;
        size_ *= factors_[j].points.size();
    }
}

void Grid::unflatten(std::size_t k, std::span<std::size_t> idx) const {
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        idx[j] = k / strides_[j];
        k %= strides_[j];
    }
}

std::size_t Grid::flatten(std::span<const std::size_t> idx) const {
    std::size_t k = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) k += idx[j] * strides_[j];
    return k;
}

void Grid::point(std::size_t k, std::span<cplx> out) const {
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        out[j] = factors_[j].points[k / strides_[j]];
        k %= strides_[j];
    }
}

std::vector<cplx> Grid::point(std::size_t k) const {
    std::vector<cplx> out(factors_.size());
    point(k, out);
    return out;
}

double Grid::volume(std::size_t k) const {
    double v = 1.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        v *= factors_[j].volumes[k / strides_[j]];
        k %= strides_[j];
    }
    return v;
}

FactorGrid tensor_factor_grid(const PlanarDomain& dom, int N) {
    require_order(N, 4, "grid resolution");
    const double inset = kGridInset * dom.diameter();
    FactorGrid g;
    const auto n = static_cast<std::size_t>(N);
    g.points.reserve(n * n);
    g.volumes.reserve(n * n);
    if (dom.is_disc()) {
        const double R = dom.radius();
        const double rmax = R - inset;
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Chebyshev points of [0, rmax], increasing.
            r[i] = 0.5 * rmax * (1.0 - std::cos(kPi * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * N)));
        }
        std::vector<double> edge(n + 1);
        edge[0] = 0.0;
        edge[n] = R;
        for (std::size_t i = 1; i < n; ++i) edge[i] = 0.5 * (r[i - 1] + r[i]);
        for (std::size_t i = 0; i < n; ++i) {
            const double ring = kPi * (edge[i + 1] * edge[i + 1] - edge[i] * edge[i]) / N;
            for (int k = 0; k < N; ++k) {
                g.points.push_back(dom.center() + std::polar(r[i], 2.0 * kPi * (k + 0.5) / N));
                g.volumes.push_back(ring);
            }
        }
        return g;
    }
    const cplx lo = dom.lo() + cplx(inset, inset);
    const cplx s = dom.hi() - dom.lo() - cplx(2.0 * inset, 2.0 * inset);
    const double cell = dom.area() / (static_cast<double>(N) * N);
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) {
            g.points.push_back(lo + cplx(s.real() * (i + 0.5) / N, s.imag() * (k + 0.5) / N));
            g.volumes.push_back(cell);
        }
    }
    return g;
}

Grid tensor_grid(const ProductDomain& dom, int N) {
    std::vector<FactorGrid> f;
    for (const auto& d : dom.factors()) f.push_back(tensor_factor_grid(d, N));
    return Grid(std::move(f));
}

FactorGrid quadrature_factor_grid(const PlanarDomain& dom, int m, int m_theta) {
    const QuadratureRule rule = area_quadrature(dom, m, m_theta);
    FactorGrid g;
    g.points = rule.nodes;
    g.volumes.reserve(rule.weights.size());
    for (const cplx& w : rule.weights) g.volumes.push_back(w.real());
    return g;
}

Grid quadrature_grid(const ProductDomain& dom, int m, int m_theta) {
    std::vector<FactorGrid> f;
    for (const auto& d : dom.factors()) f.push_back(quadrature_factor_grid(d, m, m_theta));
    return Grid(std::move(f));
}

}  // namespace dbar
