#include <doctest.h>

#include <cmath>

#include "dbar/multicauchy.hpp"
#include "dbar/random.hpp"

using namespace dbar;

namespace {

MultiIndexPoly mono(std::vector<int> a, std::vector<int> b, ExactComplex c = ExactComplex(1)) {
    return MultiIndexPoly::monomial(static_cast<int>(a.size()), a, b, c);
}

OneForm dbar_of(const MultiIndexPoly& u) { return dbar_apply(u, BlockPartition::singletons(u.dimension())); }

TOptions quad_opts(int area_m = 64) {
    TOptions o;
    o.path = EvalPath::Quadrature;
    o.boundary_m = 128;
    o.area_m = area_m;
    return o;
}

// Holomorphic polynomial: only z powers.
MultiIndexPoly random_holomorphic(int n, Rng& rng) {
    MultiIndexPoly h(n);
    const MultiIndexPoly p = random_poly(n, rng);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm = m;
        mm.b = {};
        h.add_term(mm, c);
    }
    return h;
}

}  // namespace

TEST_CASE("multi-Cauchy boundary examples") {
    const auto dom = ProductDomain::polydisc(2);
    const std::vector<cplx> z{{0.2, 0.0}, {0.0, -0.3}};
    CHECK(std::abs(multi_cauchy_boundary(MultiIndexPoly::constant(2, ExactComplex(1)), dom, z, 64) - 1.0) < 1e-11);
    CHECK(std::abs(multi_cauchy_boundary(mono({0, 0}, {1, 1}), dom, z, 64)) < 1e-10);
    const auto u = mono({2, 1}, {0, 0});
    CHECK(std::abs(multi_cauchy_boundary(u, dom, z, 64) - z[0] * z[0] * z[1]) < 1e-10);
    // Exact version: holomorphic parts survive, anything with z̄ does not.
    CHECK(multi_cauchy_boundary_exact(u + mono({0, 0}, {1, 1})) == u);
    CHECK(multi_cauchy_boundary_exact(mono({1, 0}, {1, 0})) == MultiIndexPoly::constant(2, ExactComplex(1)));
}

TEST_CASE("partial solid transform examples") {
    const auto dom = ProductDomain::polydisc(2);
    const std::vector<cplx> z{{0.3, 0.1}, {-0.4, 0.2}};
    const auto one = MultiIndexPoly::constant(2, ExactComplex(1));
    CHECK(std::abs(partial_solid_cauchy(SubsetIndex::from_elements({0}), one, dom, z, 64) + std::conj(z[0])) < 1e-10);
    CHECK(std::abs(partial_solid_cauchy(SubsetIndex::full(2), one, dom, z, 64) - std::conj(z[0] * z[1])) < 1e-10);
    const auto h = mono({1, 0}, {0, 2});
    CHECK(std::abs(partial_solid_cauchy(SubsetIndex(), h, dom, z, 64) - h.evaluate(z)) < 1e-15);
    CHECK(partial_solid_cauchy_exact(SubsetIndex::full(2), one) == mono({0, 0}, {1, 1}));
}

TEST_CASE("operator examples") {
    const auto dom = ProductDomain::polydisc(2);
    const auto u = mono({0, 0}, {1, 1});
    const OneForm f = dbar_of(u);
    CHECK(operator_T_exact(f) == u);
    const std::vector<cplx> z{{0.1, 0.5}, {-0.6, -0.2}};
    const auto rep = operator_T(f, dom, z, quad_opts());
    CHECK(std::abs(rep.value - std::conj(z[0] * z[1])) < 1e-9);
    CHECK(rep.subsets.size() == 3u);
    // terms hold C^I(f_I); T is minus their sum.
    cplx sum(0.0);
    for (const cplx& t : rep.terms) sum += t;
    CHECK(std::abs(sum + rep.value) < 1e-15);

    CHECK(operator_T_exact(OneForm::zero(BlockPartition::singletons(2))).is_zero());
    CHECK(operator_T(OneForm::zero(BlockPartition::singletons(2)), dom, z, quad_opts()).value == cplx(0.0));

    for (int k = 1; k <= 4; ++k) {
        const auto uk = mono({k, k}, {k, k}, ExactComplex(ratio(1, k)));
        const auto expect = uk - MultiIndexPoly::constant(2, ExactComplex(ratio(1, k)));
        CHECK(operator_T_exact(dbar_of(uk)) == expect);
    }
}

TEST_CASE("non-closed data is refused") {
    const OneForm bad({MultiIndexPoly::zbar(2, 1), MultiIndexPoly(2)});
    CHECK_THROWS_AS(TOperator(bad, ProductDomain::polydisc(2)), NotClosedError);
}

TEST_CASE("exact path needs a unit polydisc; dimension cap") {
    const auto dom = ProductDomain({PlanarDomain::disc({0, 0}, 2.0), PlanarDomain::unit_disc()});
    CHECK_THROWS_AS(TOperator(dbar_of(mono({0, 0}, {1, 1})), dom), SpecError);
    TOptions o;
    o.max_dim = 2;
    CHECK_THROWS_AS(TOperator(dbar_of(mono({0, 0, 0}, {1, 1, 1})), ProductDomain::polydisc(3), o), SpecError);
}

TEST_CASE("representation residual examples") {
    const auto dom = ProductDomain::polydisc(2);
    Rng rng(2);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto z = random_interior_point(dom, rng);
        worst = std::max(worst, representation_residual(mono({0, 0}, {1, 1}), dom, z, quad_opts()));
    }
    CHECK(worst < 1e-8);
    const std::vector<cplx> z{{0.3, 0.3}, {-0.1, 0.2}};
    CHECK(representation_residual(mono({1, 2}, {0, 0}), dom, z, quad_opts()) < 1e-10);
    CHECK(representation_residual(MultiIndexPoly::constant(2, ExactComplex(1)), dom, z, quad_opts()) < 1e-11);
}

TEST_CASE("property: T(du) = u - C_n(u) exactly and by quadrature") {
    Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 2;
        const auto u = random_poly(n, rng);
        const OneForm f = dbar_of(u);
        CHECK(operator_T_exact(f) == u - multi_cauchy_boundary_exact(u));
        CHECK(wirtinger_dbar(operator_T_exact(f), t % n) == f.component(t % n));
    }
    const auto dom = ProductDomain::polydisc(2);
    for (int t = 0; t < 3; ++t) {
        const auto u = random_poly(2, rng);
        const auto z = random_interior_point(dom, rng, 0.8);
        const cplx quad = operator_T(dbar_of(u), dom, z, quad_opts()).value;
        const cplx ref = u.evaluate(z) - multi_cauchy_boundary(u, dom, z, 128);
        CHECK(std::abs(quad - ref) < 1e-8);
    }
}

TEST_CASE("property: holomorphic perturbation does not change T") {
    Rng rng(45);
    const auto dom = ProductDomain::polydisc(2);
    for (int t = 0; t < 10; ++t) {
        const auto u = random_poly(2, rng);
        const auto h = random_holomorphic(2, rng);
        CHECK(operator_T_exact(dbar_of(u + h)) == operator_T_exact(dbar_of(u)));
    }
    const auto u = random_poly(2, rng);
    const auto h = random_holomorphic(2, rng);
    const auto z = random_interior_point(dom, rng);
    CHECK(std::abs(operator_T(dbar_of(u + h), dom, z, quad_opts()).value -
                   operator_T(dbar_of(u), dom, z, quad_opts()).value) < 1e-9);
}

TEST_CASE("property: subset terms vanish off the support") {
    Rng rng(46);
    const auto dom = ProductDomain::polydisc(3);
    for (int t = 0; t < 6; ++t) {
        // u depends on z̄_j only for j in J.
        const SubsetIndex J = SubsetIndex(1u + static_cast<std::uint32_t>(t % 7));
        MultiIndexPoly u(3);
        const MultiIndexPoly p = random_poly(3, rng);
        for (const auto& [m, c] : p.terms()) {
            Monomial mm = m;
            for (int j = 0; j < 3; ++j) {
                if (!J.contains(j)) mm.b[static_cast<std::size_t>(j)] = 0;
            }
            u.add_term(mm, c);
        }
        TOperator T(dbar_of(u), dom);
        const auto z = random_interior_point(dom, rng);
        const auto rep = T.evaluate(z);
        for (std::size_t s = 0; s < rep.subsets.size(); ++s) {
            if (!rep.subsets[s].subset_of(J)) CHECK(std::abs(rep.terms[s]) < 1e-10);
        }
    }
}

TEST_CASE("solve_field on a bidisc grid") {
    const auto dom = ProductDomain::polydisc(2);
    const Grid grid = tensor_grid(dom, 8);
    const auto u = mono({0, 0}, {1, 1});
    TOperator T(dbar_of(u), dom, quad_opts(48));
    const auto res = solve_field(T, grid, 2);
    CHECK(res.excluded.empty());
    REQUIRE(res.field.values.size() == grid.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, std::abs(res.field.values[k] - u.evaluate(grid.point(k))));
    }
    CHECK(worst < 1e-8);

    const auto zero = solve_field(TOperator(OneForm::zero(BlockPartition::singletons(2)), dom), grid);
    bool all_zero = true;
    for (const cplx& v : zero.field.values) all_zero = all_zero && v == cplx(0.0);
    CHECK(all_zero);
}

TEST_CASE("solve_field is deterministic across thread counts and factor order") {
    Rng rng(47);
    const auto dom = ProductDomain::polydisc(2);
    const Grid grid = tensor_grid(dom, 6);
    const auto u = random_poly(2, rng);
    TOperator T(dbar_of(u), dom, quad_opts(32));
    const auto a = solve_field(T, grid, 1);
    const auto b = solve_field(T, grid, 4);
    CHECK(a.field.values == b.field.values);
    CHECK(a.term_sup == b.term_sup);

    // Swap z1 <-> z2 in u and compare the transposed field bit for bit.
    MultiIndexPoly v(2);
    for (const auto& [m, c] : u.terms()) {
        Monomial mm;
        mm.a[0] = m.a[1];
        mm.a[1] = m.a[0];
        mm.b[0] = m.b[1];
        mm.b[1] = m.b[0];
        v.add_term(mm, c);
    }
    TOperator S(dbar_of(v), dom);
    TOperator Te(dbar_of(u), dom);
    const auto fu = solve_field(Te, grid, 3);
    const auto fv = solve_field(S, grid, 1);
    const std::size_t N = grid.factor_size(0);
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            worst = std::max(worst, std::abs(fu.field.values[i * N + j] - fv.field.values[j * N + i]));
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("sampled path agrees with the exact path") {
    const auto dom = ProductDomain::polydisc(2);
    const auto u = mono({1, 0}, {1, 1}, ExactComplex(ratio(1, 2)));
    const OneForm f = dbar_of(u);
    SampledForm sf;
    sf.n = 2;
    for (int j = 0; j < 2; ++j) sf.components.push_back(as_point_fn(f.component(j)));
    TOptions o;
    o.path = EvalPath::Sampled;
    o.boundary_m = 64;
    o.area_m = 32;
    TOperator Ts(sf, dom, o);
    TOperator Te(f, dom);
    const std::vector<cplx> z{{0.2, -0.3}, {0.1, 0.4}};
    CHECK(std::abs(Ts(z) - Te(z)) < 1e-6);
}

TEST_CASE("evaluation paths parse") {
    CHECK(parse_eval_path("exact") == EvalPath::Exact);
    CHECK(parse_eval_path(to_string(EvalPath::Sampled)) == EvalPath::Sampled);
    CHECK_THROWS_AS(parse_eval_path("nope"), SpecError);
}
