#pragma once

// Reference values computed independently of the library: series expansions,
// brute-force integrals and frozen constants.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// (1/π)∫_{|ζ|<1} ζ^a ζ̄^b / (ζ - z) dA by splitting at |ζ| = |z| and expanding
/// the kernel in each annulus; only one power survives the angular integral.
inline cplx disc_solid_series(int a, int b, cplx z) {
    const double r2 = std::norm(z);
    cplx out(0.0, 0.0);
    // |ζ| > |z|: 1/(ζ - z) = Σ_m z^m / ζ^{m+1}, surviving m = a - b - 1.
    if (a - b - 1 >= 0) out += std::pow(z, a - b - 1) * (1.0 - std::pow(r2, b + 1)) / double(b + 1);
    // |ζ| < |z|: 1/(ζ - z) = -Σ_m ζ^m / z^{m+1}, surviving m = b - a.
    if (b - a >= 0) out -= std::pow(r2, b + 1) / std::pow(z, b - a + 1) / double(b + 1);
    return out;
}

/// Midpoint rule in polar coordinates; a slow brute-force integral over the unit disc.
template <class F>
cplx disc_integral_brute(F&& f, int nr = 400, int nt = 400) {
    cplx s(0.0, 0.0);
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) / nr;
        for (int k = 0; k < nt; ++k) {
            const double t = 2.0 * pi * (k + 0.5) / nt;
            s += f(std::polar(r, t)) * r;
        }
    }
    return s * (1.0 / nr) * (2.0 * pi / nt);
}

/// ⟨p, z^k⟩ / ⟨z^k, z^k⟩ over the unit disc for p = z^a z̄^b, in closed form
/// from the angular orthogonality of e^{i m θ}.
inline double bergman_coefficient(int a, int b, int k) {
    if (a - b != k) return 0.0;
    // ∫ r^{a+b+k} r dr 2π / ∫ r^{2k} r dr 2π
    return (2.0 * k + 2.0) / double(a + b + k + 2);
}

/// 5-point Gauss-Legendre nodes (tabulated).
inline const std::vector<double>& gauss5_nodes() {
    static const std::vector<double> x{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                       0.9061798459386640};
    return x;
}
inline const std::vector<double>& gauss5_weights() {
    static const std::vector<double> w{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                       0.4786286704993665, 0.2369268850561891};
    return w;
}

/// ∫_{|ζ|<R} |ζ|^{-q} dA by composite Simpson after r = R t^4, which turns the
/// integrand into a smooth polynomial-like function of t.
inline double radial_power_integral(double R, double q, int n = 2000) {
    auto f = [&](double t) {
        if (t == 0.0) return 0.0;
        const double r = R * std::pow(t, 4.0);
        return std::pow(r, -q) * 2.0 * pi * r * 4.0 * R * std::pow(t, 3.0);
    };
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(double(i) / n);
    return s / (3.0 * n);
}

// Frozen constants.
inline constexpr double H10 = 2.9289682539682538;        // Σ_{k<=10} 1/k
inline constexpr double H40 = 4.2785430389363759;        // Σ_{k<=40} 1/k
inline constexpr double l1_term_k1 = 4.3864908449286029;  // (2π/3)^2, n = l = j = 2, k = 1

}  // namespace oracle
