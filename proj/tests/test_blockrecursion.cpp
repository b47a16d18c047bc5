#include <doctest.h>

#include <cmath>

#include "dbar/blockrecursion.hpp"
#include "dbar/multicauchy.hpp"
#include "dbar/norms.hpp"
#include "dbar/random.hpp"

using namespace dbar;

namespace {

MultiIndexPoly mono(std::vector<int> a, std::vector<int> b, ExactComplex c = ExactComplex(1)) {
    return MultiIndexPoly::monomial(static_cast<int>(a.size()), a, b, c);
}

ProductDomain shaped(const std::vector<std::vector<int>>& groups) {
    int n = 0;
    for (const auto& g : groups) n += static_cast<int>(g.size());
    return ProductDomain::polydisc(n).with_blocks(BlockPartition::from_groups(groups));
}

// Data for a solver of block j: π_j of a closed form.
OneForm block_data(const OneForm& f, int j) { return block_project(f, j); }

GridField sample(const MultiIndexPoly& p, const Grid& grid) {
    GridField g{grid, {}};
    NumericPoly q(p);
    for (std::size_t k = 0; k < grid.size(); ++k) g.values.push_back(q(grid.point(k)));
    return g;
}

}  // namespace

TEST_CASE("disc product solver examples") {
    const auto dom = ProductDomain::polydisc(2);
    const auto S = disc_product_factor_solver(dom, 0);
    const OneForm data({MultiIndexPoly::zbar(2, 1), MultiIndexPoly(2)});
    CHECK(S(data) == mono({0, 0}, {1, 1}));
    CHECK(S(OneForm::zero(BlockPartition::singletons(2))).is_zero());

    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const OneForm f = random_closed_form(BlockPartition::singletons(2), rng);
        const OneForm d = block_data(f, 0);
        const auto v = S(d);
        CHECK(wirtinger_dbar(v, 0) == d.component(0));
    }
    const auto bad = ProductDomain({PlanarDomain::rectangle({0, 0}, {1, 1}), PlanarDomain::unit_disc()});
    CHECK_THROWS_AS(disc_product_factor_solver(bad, 0), SpecError);
}

TEST_CASE("property: factor solvers are linear") {
    Rng rng(4);
    const auto dom = shaped({{0, 1}, {2}});
    for (const auto& S : disc_solvers(dom)) {
        for (int t = 0; t < 5; ++t) {
            const OneForm a = block_project(random_closed_form(dom.blocks(), rng), S.block);
            const OneForm b = block_project(random_closed_form(dom.blocks(), rng), S.block);
            const ExactComplex x(ratio(2, 3), ratio(-1, 1));
            const ExactComplex y(ratio(-5, 4), ratio(0, 1));
            CHECK(S(x * a + y * b) == x * S(a) + y * S(b));
        }
    }
}

TEST_CASE("recursion examples") {
    const auto dom = ProductDomain::polydisc(2);
    const auto u0 = mono({0, 0}, {1, 1});
    const OneForm f = dbar_apply(u0, dom.blocks());
    const auto res = recursive_solve(f, dom, disc_solvers(dom));
    CHECK(dbar_defect(res.u, f) == 0.0);
    CHECK(res.u == u0);
    CHECK(res.trace.steps.size() == 2u);
    CHECK(res.trace.remainder.is_zero());
    CHECK(vanishing_check(res.trace) == 0.0);

    // One block: the recursion is a single solve.
    const auto one = shaped({{0, 1}});
    const OneForm g = dbar_apply(mono({1, 0}, {1, 2}), one.blocks());
    const auto r1 = recursive_solve(g, one, disc_solvers(one));
    CHECK(r1.trace.steps.size() == 1u);
    CHECK(r1.u == disc_solvers(one)[0](g));
    CHECK(vanishing_check(r1.trace) == 0.0);

    const OneForm bad({MultiIndexPoly::zbar(2, 1), MultiIndexPoly(2)});
    CHECK_THROWS_AS(recursive_solve(bad, dom, disc_solvers(dom)), NotClosedError);
    CHECK_THROWS_AS(recursive_solve(f, dom, {disc_solvers(dom)[0]}), SpecError);
}

TEST_CASE("property: recursion solves dbar for every block shape") {
    Rng rng(5);
    const std::vector<std::vector<std::vector<int>>> shapes{
        {{0}, {1}}, {{0, 1}, {2}}, {{0}, {1}, {2}}, {{0}, {1, 2}}};
    for (const auto& shape : shapes) {
        const auto dom = shaped(shape);
        for (int t = 0; t < 10; ++t) {
            PolyShape ps;
            ps.max_a = 2;
            ps.max_b = 2;
            const OneForm f = random_closed_form(dom.blocks(), rng, ps);
            const auto res = recursive_solve(f, dom, disc_solvers(dom));
            CHECK(dbar_defect(res.u, f) == 0.0);
            CHECK(vanishing_check(res.trace) == 0.0);
            CHECK(res.trace.remainder.is_zero());
            const OneForm& last = res.trace.steps.back().g;
            CHECK(block_project(last, dom.blocks().block_count() - 1) == last);
        }
    }
}

TEST_CASE("property: with singleton blocks the recursion reproduces T") {
    Rng rng(6);
    for (int n = 1; n <= 3; ++n) {
        const auto dom = ProductDomain::polydisc(n);
        for (int t = 0; t < 10; ++t) {
            const OneForm f = random_closed_form(dom.blocks(), rng);
            CHECK(recursive_solve(f, dom, disc_solvers(dom)).u == operator_T_exact(f));
        }
    }
}

TEST_CASE("orthogonal solver") {
    const auto dom = ProductDomain::polydisc(1);
    const auto T = disc_product_factor_solver(dom, 0);
    const auto S = make_orthogonal_solver(T, dom);
    const OneForm one({MultiIndexPoly::constant(1, ExactComplex(1))});
    CHECK(S(one) == MultiIndexPoly::zbar(1, 0));
    const OneForm zdz({MultiIndexPoly::z(1, 0)});
    const auto v = S(zdz);
    CHECK(wirtinger_dbar(v, 0) == MultiIndexPoly::z(1, 0));
    CHECK(disc_bergman_project(v).is_zero());
    CHECK(T(zdz) == mono({1}, {1}) - MultiIndexPoly::constant(1, ExactComplex(1)));
    CHECK(S(OneForm::zero(BlockPartition::singletons(1))).is_zero());
    CHECK_THROWS_AS(make_orthogonal_solver(disc_product_factor_solver(shaped({{0, 1}}), 0), shaped({{0, 1}})),
                    SpecError);
}

TEST_CASE("property: P∘S = 0 and S solves dbar") {
    Rng rng(7);
    const auto dom = ProductDomain::polydisc(2);
    const auto S = make_orthogonal_solver(disc_product_factor_solver(dom, 0), dom);
    for (int t = 0; t < 20; ++t) {
        const OneForm d = block_project(random_closed_form(dom.blocks(), rng), 0);
        const auto v = S(d);
        CHECK(disc_bergman_project(v, 0).is_zero());
        CHECK(wirtinger_dbar(v, 0) == d.component(0));
    }
}

TEST_CASE("commutator examples") {
    const auto dom = ProductDomain::polydisc(2);
    const auto T = disc_product_factor_solver(dom, 0);
    const auto S = make_orthogonal_solver(T, dom);
    const OneForm f = dbar_apply(mono({0, 0}, {1, 2}), dom.blocks());
    CHECK(commutator_residual(S, f, 1) == 0.0);
    CHECK(commutator_residual(T, f, 1) == 0.0);
    const OneForm g = dbar_apply(mono({2, 0}, {1, 0}), dom.blocks());
    CHECK(commutator_residual(S, g, 1) == 0.0);
    CHECK_THROWS_AS(commutator_residual(S, f, 0), SpecError);

    const auto mock = noncommuting_mock_solver(dom, 0);
    CHECK(commutator_residual(mock, f, 1) > 0.0);
    CHECK(wirtinger_dbar(mock(block_project(f, 0)), 0) == f.component(0));
}

TEST_CASE("mock solver breaks the vanishing lemma") {
    // A non-commuting solver on the first block is harmless: π_1(g_2) = 0 for any solver.
    // On a later block it leaks z̄ of an earlier block into v^j.
    const auto dom = ProductDomain::polydisc(3);
    // π_2(g_2) = dz̄_2 is nonzero, so the mock has something to act on.
    const auto u = mono({0, 0, 0}, {1, 1, 0}) + mono({0, 0, 0}, {0, 1, 0}) + mono({0, 0, 0}, {1, 0, 1});
    const OneForm f = dbar_apply(u, dom.blocks());
    auto first = disc_solvers(dom);
    first[0] = noncommuting_mock_solver(dom, 0);
    const auto ok = recursive_solve(f, dom, first);
    CHECK(vanishing_check(ok.trace) == 0.0);
    CHECK(dbar_defect(ok.u, f) == 0.0);

    auto middle = disc_solvers(dom);
    middle[1] = noncommuting_mock_solver(dom, 1);
    const auto bad = recursive_solve(f, dom, middle);
    CHECK(vanishing_check(bad.trace) > 0.0);
    CHECK(dbar_defect(bad.u, f) > 0.0);
}

TEST_CASE("property: Lp accounting of the recursion output") {
    Rng rng(8);
    const auto dom = ProductDomain::polydisc(2);
    const Grid grid = tensor_grid(dom, 8);
    for (int t = 0; t < 10; ++t) {
        const OneForm f = random_closed_form(dom.blocks(), rng);
        const auto u = recursive_solve(f, dom, disc_solvers(dom)).u;
        for (double p : {1.0, 2.0, kInf}) {
            double rhs = 0.0;
            for (SubsetIndex I : nonempty_subsets(2)) rhs += lp_norm(sample(subscript_derivative(f, I), grid), p);
            const double lhs = lp_norm(sample(u, grid), p);
            CHECK(std::isfinite(lhs));
            CHECK(std::isfinite(rhs));
            if (rhs > 0.0) MESSAGE("p=" << p << " ratio " << lhs / rhs);
        }
    }
}
