#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dbar/multicauchy.hpp"
#include "dbar/norms.hpp"
#include "dbar/random.hpp"
#include "oracles.hpp"

using namespace dbar;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

GridField sample(const Grid& grid, const std::function<cplx(std::span<const cplx>)>& g) {
    GridField f{grid, {}};
    f.values.reserve(grid.size());
    std::vector<cplx> z(static_cast<std::size_t>(grid.dimension()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid.point(k, z);
        f.values.push_back(g(z));
    }
    return f;
}

GridField constant(const Grid& grid, cplx c) {
    return sample(grid, [c](std::span<const cplx>) { return c; });
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("lp_norm examples") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g32 = tensor_grid(dom, 32);
    CHECK(rel(lp_norm(constant(g32, 1.0), 1.0), kPi * kPi) < 0.02);
    CHECK(lp_norm(constant(g32, 0.0), 2.0) == 0.0);
    const Grid g8 = tensor_grid(dom, 8);
    const double sup = lp_norm(sample(g8, [](std::span<const cplx> z) { return std::conj(z[0]); }), kInf);
    // Outermost Chebyshev ring of [0, 1 - δ_b].
    const double rmax = 1.0 - kGridInset * 2.0;
    CHECK(sup == Approx(0.5 * rmax * (1.0 + std::cos(kPi / 16.0))).epsilon(1e-14));
    CHECK(sup < rmax);
    CHECK_THROWS_AS(lp_norm(constant(g8, 1.0), 0.5), SpecError);
}

TEST_CASE("lp_norm skips NaN samples and is thread-independent") {
    const Grid g = tensor_grid(ProductDomain::polydisc(2), 8);
    GridField f = constant(g, 1.0);
    const double full = lp_norm(f, 2.0);
    f.values[5] = cplx(std::nan(""), 0.0);
    const double skipped = lp_norm(f, 2.0);
    CHECK(std::isfinite(skipped));
    CHECK(skipped < full);
    CHECK(lp_norm(f, 2.0, 4) == skipped);
}

TEST_CASE("property: lp_norm converges under refinement") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g32 = tensor_grid(dom, 32);
    const Grid g64 = tensor_grid(dom, 64);
    auto h = [](std::span<const cplx> z) { return z[0] * std::conj(z[1]) + std::exp(z[1]); };
    for (double p : {1.0, 2.0, 4.0}) {
        const double a = lp_norm(sample(g32, h), p);
        const double b = lp_norm(sample(g64, h), p);
        CHECK(rel(a, b) < 0.02);
    }
}

TEST_CASE("admissible exponents") {
    CHECK(admissible_exponents(1.5, 2.0));
    CHECK(admissible_exponents(2.0, 2.0));
    CHECK_FALSE(admissible_exponents(1.0, 2.0));  // 1 - 1/2 is not < 1/2
    CHECK_FALSE(admissible_exponents(3.0, 2.0));
    CHECK(admissible_exponents(2.5, kInf));
    CHECK_FALSE(admissible_exponents(2.0, kInf));
    CHECK_FALSE(admissible_exponents(0.5, 0.5));
}

TEST_CASE("mixed norm examples") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g = tensor_grid(dom, 32);
    const double r = 1.5;
    const double p = 2.0;
    const double got = mixed_H_norm(constant(g, 1.0), SubsetIndex::from_elements({0}), r, p);
    CHECK(rel(got, std::pow(kPi, 1.0 / r) * std::pow(kPi, 1.0 / p)) < 0.02);
    CHECK(mixed_H_norm(constant(g, 0.0), SubsetIndex::from_elements({0}), r, p) == 0.0);
    const GridField h = sample(g, [](std::span<const cplx> z) { return z[0] * z[1] + 1.0; });
    CHECK(mixed_H_norm(h, SubsetIndex::full(2), 2.0, 2.0) == Approx(lp_norm(h, 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mixed_H_norm(h, SubsetIndex::full(2), 1.0, 4.0), SpecError);
    CHECK_THROWS_AS(mixed_H_norm(h, SubsetIndex(), 2.0, 2.0), SpecError);
}

TEST_CASE("property: mixed norm of a pure tensor factorizes") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g = tensor_grid(dom, 32);
    const Grid g1 = tensor_grid(ProductDomain::polydisc(1), 32);
    auto a = [](cplx z) { return 1.0 + z * std::conj(z) * 2.0; };
    auto b = [](cplx z) { return std::exp(z) + std::conj(z); };
    for (auto [r, p] : {std::pair{1.5, 2.0}, std::pair{2.0, 2.0}, std::pair{3.0, kInf}}) {
        const GridField f = sample(g, [&](std::span<const cplx> z) { return a(z[0]) * b(z[1]); });
        const double lhs = mixed_H_norm(f, SubsetIndex::from_elements({0}), r, p);
        const double na = lp_norm(sample(g1, [&](std::span<const cplx> z) { return a(z[0]); }), r);
        const double nb = lp_norm(sample(g1, [&](std::span<const cplx> z) { return b(z[0]); }), p);
        CHECK(rel(lhs, na * nb) < 0.02);
    }
}

TEST_CASE("iterated Hölder seminorm examples") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g = tensor_grid(dom, 8);
    const auto blocks = BlockPartition::singletons(2);
    // Depends on z1 alone: every mixed difference cancels.
    const GridField log_field = sample(g, [](std::span<const cplx> z) { return 1.0 / std::log(z[0] - 1.0); });
    CHECK(iterated_holder_seminorm(log_field, blocks, {0.5, 0.5}) == 0.0);
    const GridField sep = sample(g, [](std::span<const cplx> z) {
        return std::sin(z[0]) * 3.0 + std::conj(z[1]) * std::conj(z[1]);
    });
    // Cancels up to rounding of the sums a + b.
    CHECK(iterated_holder_seminorm(sep, blocks, {0.3, 0.7}) < 1e-12);
    CHECK_THROWS_AS(iterated_holder_seminorm(sep, BlockPartition::singletons(2), {0.0, 0.5}), SpecError);
    const Grid g3 = tensor_grid(ProductDomain::polydisc(3), 4);
    CHECK_THROWS_AS(iterated_holder_seminorm(constant(g3, 1.0), BlockPartition::singletons(3), {0.5, 0.5}),
                    SpecError);
}

TEST_CASE("iterated Hölder seminorm of conj(z1 z2) against exhaustive pairs") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid g = tensor_grid(dom, 6);
    const auto blocks = BlockPartition::singletons(2);
    const GridField f = sample(g, [](std::span<const cplx> z) { return std::conj(z[0] * z[1]); });
    // Exhaustive: the mixed difference factors as (z̄1 - w̄1)(z̄2 - w̄2).
    const auto& pts = g.factor(0).points;
    double exhaustive = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            for (std::size_t k = 0; k < pts.size(); ++k) {
                for (std::size_t l = 0; l < pts.size(); ++l) {
                    const double d1 = std::abs(pts[i] - pts[j]);
                    const double d2 = std::abs(pts[k] - pts[l]);
                    if (d1 == 0.0 || d2 == 0.0) continue;
                    const cplx diff = (f.values[i * 36 + k] - f.values[j * 36 + k]) -
                                      (f.values[i * 36 + l] - f.values[j * 36 + l]);
                    exhaustive = std::max(exhaustive, std::abs(diff) / std::sqrt(d1 * d2));
                }
            }
        }
    }
    const double est = iterated_holder_seminorm(f, blocks, {0.5, 0.5});
    HolderSampling twice;
    twice.random_pairs *= 2;
    const double est2 = iterated_holder_seminorm(f, blocks, {0.5, 0.5}, twice);
    CHECK(est > 0.0);
    CHECK(est <= exhaustive * (1.0 + 1e-12));
    CHECK(rel(est, exhaustive) < 0.05);
    CHECK(rel(est2, est) < 0.05);
    HolderSampling plain;
    plain.ascent_starts = 0;
    CHECK(est >= iterated_holder_seminorm(f, blocks, {0.5, 0.5}, plain));
}

TEST_CASE("property: refined seminorm is stable under grid refinement") {
    Rng rng(32);
    const auto blocks = BlockPartition::singletons(2);
    for (int t = 0; t < 5; ++t) {
        const NumericPoly p(random_poly(2, rng));
        auto at = [&](int N) {
            const GridField f = sample(tensor_grid(ProductDomain::polydisc(2), N), [&](std::span<const cplx> z) { return p(z); });
            return iterated_holder_seminorm(f, blocks, {0.5, 0.5});
        };
        const double coarse = at(16);
        const double fine = at(32);
        if (coarse == 0.0) continue;
        CHECK(rel(fine, coarse) < 0.10);
    }
}

TEST_CASE("property: adding separated functions leaves the seminorm unchanged") {
    Rng rng(31);
    const Grid g = tensor_grid(ProductDomain::polydisc(2), 8);
    const auto blocks = BlockPartition::singletons(2);
    for (int t = 0; t < 10; ++t) {
        const NumericPoly p(random_poly(2, rng));
        const NumericPoly a(random_poly(1, rng));
        const NumericPoly b(random_poly(1, rng));
        const GridField f = sample(g, [&](std::span<const cplx> z) { return p(z); });
        const GridField h = sample(g, [&](std::span<const cplx> z) {
            return p(z) + a(z.subspan(0, 1)) + b(z.subspan(1, 1));
        });
        const double x = iterated_holder_seminorm(f, blocks, {0.4, 0.6});
        const double y = iterated_holder_seminorm(h, blocks, {0.4, 0.6});
        CHECK(std::abs(y - x) < 1e-9 * (1.0 + x));
    }
}

TEST_CASE("Young constants") {
    CHECK(young_conjugate(kInf, 3.0) == Approx(1.5));
    CHECK(young_conjugate(2.0, 1.5) == Approx(1.2));
    const double expect = std::pow(2.0 * kPi * std::sqrt(2.0) / 0.5, 2.0 / 3.0);
    CHECK(young_bound_constant(2.0, kInf, 3.0) == Approx(expect).epsilon(1e-14));
    CHECK(young_bound_constant(2.0, kInf, 3.0) ==
          Approx(std::pow(oracle::radial_power_integral(2.0, 1.5), 1.0 / 1.5)).epsilon(1e-6));
    for (double R : {0.5, 1.0, 3.0}) {
        CHECK(young_bound_constant(R, 1.0, 1.0) == Approx(2.0 * kPi * R).epsilon(1e-14));
        CHECK(young_bound_constant(R, 1.0, 1.0) == Approx(oracle::radial_power_integral(R, 1.0)).epsilon(1e-6));
    }
    double prev = 0.0;
    for (double r : {2.1, 2.05, 2.01, 2.001, 2.0001}) {
        const double c = young_bound_constant(2.0, kInf, r);
        CHECK(c > prev);
        prev = c;
    }
    CHECK(prev > 10.0 * young_bound_constant(2.0, kInf, 2.1));
    CHECK_THROWS_AS(young_bound_constant(2.0, kInf, 2.0), SpecError);
    CHECK_THROWS_AS(young_bound_constant(2.0, kInf, 1.5), SpecError);
    CHECK_THROWS_AS(young_bound_constant(0.0, 1.0, 1.0), SpecError);
}

TEST_CASE("property: Lp norm of T(f) is controlled by the f_I") {
    Rng rng(32);
    const auto dom = ProductDomain::polydisc(2);
    const Grid g = tensor_grid(dom, 12);
    for (int t = 0; t < 10; ++t) {
        const OneForm f = random_closed_form(dom.blocks(), rng);
        const NumericPoly Tf(operator_T_exact(f));
        for (double p : {1.0, 2.0, 4.0, kInf}) {
            double rhs = 0.0;
            for (SubsetIndex I : nonempty_subsets(2)) {
                const NumericPoly fi(subscript_derivative(f, I));
                rhs += lp_norm(sample(g, [&](std::span<const cplx> z) { return fi(z); }), p);
            }
            const double lhs = lp_norm(sample(g, [&](std::span<const cplx> z) { return Tf(z); }), p);
            CHECK(std::isfinite(lhs));
            CHECK(std::isfinite(rhs));
        }
    }
}

TEST_CASE("oscillating example") {
    // Direct evaluation agrees with the cancellation-free form where both are accurate.
    const double a = 0.3;
    const double b = 0.2;
    auto g = [](double x) { return x * x * std::sin(1.0 / x); };
    const double direct = g(std::hypot(a, b)) - g(a) - g(b);
    CHECK(oscillating_mixed_difference(a, b) == Approx(direct).epsilon(1e-12));
    CHECK(std::isfinite(oscillating_path_quotient(1e-3, 4.0, {0.5, 0.5})));
    CHECK_THROWS_AS(oscillating_mixed_difference(0.0, 0.1), SpecError);
}
