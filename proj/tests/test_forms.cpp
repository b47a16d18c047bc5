#include <doctest.h>

#include <algorithm>

#include "dbar/forms.hpp"
#include "dbar/random.hpp"

using namespace dbar;

namespace {

MultiIndexPoly mono(std::vector<int> a, std::vector<int> b, ExactComplex c = ExactComplex(1)) {
    return MultiIndexPoly::monomial(static_cast<int>(a.size()), a, b, c);
}

/// Random closed form, random presentation-permutation pairs.
OneForm closed(int n, Rng& rng, PolyShape shape = {}) {
    return random_closed_form(BlockPartition::singletons(n), rng, shape);
}

}  // namespace

TEST_CASE("wirtinger derivatives") {
    CHECK(wirtinger_dbar(mono({0, 1}, {2, 0}), 0) == mono({0, 1}, {1, 0}, ExactComplex(2)));
    CHECK(wirtinger_dbar(mono({3}, {0}), 0).is_zero());
    CHECK(wirtinger_dbar(mono({1}, {1}), 0) == mono({1}, {0}));
    CHECK(wirtinger_d(mono({3}, {1}), 0) == mono({2}, {1}, ExactComplex(3)));
    CHECK_THROWS_AS(wirtinger_dbar(mono({1}, {1}), 1), SpecError);
}

TEST_CASE("polynomial arithmetic is canonical") {
    const auto p = mono({1, 0}, {0, 1}) + mono({0, 0}, {0, 0}, ExactComplex(ratio(1, 2)));
    CHECK((p - p).is_zero());
    CHECK((p * ExactComplex(0)).is_zero());
    CHECK(p.term_count() == 2);
    const auto q = MultiIndexPoly::z(2, 0) * MultiIndexPoly::zbar(2, 1);
    CHECK(q == mono({1, 0}, {0, 1}));
    const std::vector<cplx> z{{0.5, 0.1}, {-0.2, 0.3}};
    CHECK(std::abs(q.evaluate(z) - z[0] * std::conj(z[1])) < 1e-16);
    CHECK(std::abs(NumericPoly(p)(z) - p.evaluate(z)) < 1e-15);
    CHECK_THROWS_AS(MultiIndexPoly::monomial(1, std::vector<int>{256}, std::vector<int>{0}), SpecError);
}

TEST_CASE("closedness check") {
    const auto u = MultiIndexPoly::zbar(2, 0) * MultiIndexPoly::zbar(2, 1);
    CHECK(dbar_closed_check(dbar_apply(u, BlockPartition::singletons(2))).closed);
    const OneForm bad({MultiIndexPoly::zbar(2, 1), MultiIndexPoly(2)});
    const auto chk = dbar_closed_check(bad);
    CHECK_FALSE(chk.closed);
    CHECK(chk.residual == 1.0);
    // Truncated divergent example: closed for every K.
    MultiIndexPoly uk(2);
    for (int k = 1; k <= 6; ++k) uk += mono({k, k}, {k, k}, ExactComplex(ratio(1, k)));
    CHECK(dbar_closed_check(dbar_apply(uk, BlockPartition::singletons(2))).closed);
}

TEST_CASE("subscript derivative examples") {
    const auto u = MultiIndexPoly::zbar(2, 0) * MultiIndexPoly::zbar(2, 1);
    const OneForm f = dbar_apply(u, BlockPartition::singletons(2));
    CHECK(subscript_derivative(f, SubsetIndex::full(2)) == MultiIndexPoly::constant(2, ExactComplex(1)));
    CHECK(subscript_derivative(f, SubsetIndex::from_elements({1})) == f.component(1));
    // u = |z1 z2|^2: f_{12} = z1 z2.
    const OneForm g = dbar_apply(mono({1, 1}, {1, 1}), BlockPartition::singletons(2));
    CHECK(subscript_derivative(g, SubsetIndex::full(2)) == mono({1, 1}, {0, 0}));
    CHECK_THROWS_AS(subscript_derivative(f, SubsetIndex()), SpecError);
    const OneForm bad({MultiIndexPoly::zbar(2, 1), MultiIndexPoly(2)});
    CHECK_THROWS_AS(subscript_derivative(bad, SubsetIndex::full(2)), NotClosedError);
    try {
        subscript_derivative(bad, SubsetIndex::full(2));
    } catch (const NotClosedError& e) {
        CHECK(std::string(e.what()).find("dbar_closed_check failed") != std::string::npos);
    }
}

TEST_CASE("property: f_I does not depend on the presentation of I") {
    Rng rng(101);
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 2;
        const OneForm f = closed(n, rng);
        for (SubsetIndex I : nonempty_subsets(n)) {
            std::vector<int> e = I.elements();
            const MultiIndexPoly ref = subscript_derivative(f, e);
            while (std::next_permutation(e.begin(), e.end())) {
                CHECK(subscript_derivative(f, e) == ref);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("property: linearity of f_I") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const OneForm f = closed(3, rng);
        const OneForm g = closed(3, rng);
        const ExactComplex a(ratio(3, 2), ratio(-1, 4));
        const ExactComplex b(ratio(-2, 1), ratio(1, 3));
        const OneForm h = a * f + b * g;
        for (SubsetIndex I : nonempty_subsets(3)) {
            CHECK(subscript_derivative(h, I) == a * subscript_derivative(f, I) + b * subscript_derivative(g, I));
        }
    }
}

TEST_CASE("property: dbar of a polynomial is closed") {
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 3;
        const auto u = random_poly(n, rng);
        CHECK(dbar_closed_check(dbar_apply(u, BlockPartition::singletons(n))).closed);
    }
}

TEST_CASE("block projections and block dbar") {
    const BlockPartition bp = BlockPartition::singletons(2);
    const OneForm f({MultiIndexPoly::zbar(2, 1), MultiIndexPoly::zbar(2, 0)}, bp);
    const OneForm p0 = block_project(f, 0);
    CHECK(p0.component(0) == f.component(0));
    CHECK(p0.component(1).is_zero());
    CHECK(block_project(f, 0) + block_project(f, 1) == f);

    const auto u = MultiIndexPoly::z(2, 0) * MultiIndexPoly::zbar(2, 1);
    CHECK(dbar_block_apply(u, bp, 0).is_zero());
    const OneForm d1 = dbar_block_apply(u, bp, 1);
    CHECK(d1.component(1) == MultiIndexPoly::z(2, 0));
    CHECK(dbar_apply(MultiIndexPoly::zbar(1, 0), BlockPartition::singletons(1)).component(0) ==
          MultiIndexPoly::constant(1, ExactComplex(1)));
}

TEST_CASE("block families and their closedness") {
    Rng rng(33);
    const BlockPartition bp = BlockPartition::from_groups({{0, 1}, {2}});
    for (int t = 0; t < 10; ++t) {
        const OneForm f = random_closed_form(bp, rng);
        // Family of the 2-block subset: 2 components of π_1 times one direction in block 2,
        // plus the reverse presentation.
        const auto fam = subscript_family(f, SubsetIndex::full(2));
        CHECK(fam.size() == 2u);
        for (const auto& m : fam) {
            // Each member, as block-1 data, is closed in block 1: compare with the
            // member obtained by swapping which block-1 component is used.
            CHECK(m.derivative_coords.size() == 1u);
        }
        for (const auto& m : subscript_family(f, SubsetIndex::from_elements({1}))) {
            CHECK(m.value == f.component(m.component));
        }
        // Sub-data closedness: the block-1 part of ∂f/∂z̄_3 is ∂̄_1-closed.
        std::vector<MultiIndexPoly> comps;
        for (int j = 0; j < 3; ++j) {
            comps.push_back(bp.block_of(j) == 0 ? wirtinger_dbar(f.component(j), 2) : MultiIndexPoly(3));
        }
        CHECK(block_dbar_closed_check(OneForm(comps, bp), 0).closed);
    }
}

TEST_CASE("crossing families vanish when a block projection is zero") {
    Rng rng(71);
    const BlockPartition bp = BlockPartition::singletons(2);
    for (int t = 0; t < 10; ++t) {
        // u independent of z̄_2 gives π_2(∂̄u) = 0.
        PolyShape shape;
        auto u = random_poly(2, rng, shape);
        MultiIndexPoly v(2);
        for (const auto& [m, c] : u.terms()) {
            Monomial mm = m;
            mm.b[1] = 0;
            v.add_term(mm, c);
        }
        const OneForm f = dbar_apply(v, bp);
        CHECK(block_project(f, 1).is_zero());
        CHECK(wirtinger_dbar(f.component(0), 1).is_zero());
        CHECK(subscript_derivative(f, SubsetIndex::full(2)).is_zero());
    }
}

TEST_CASE("records round trip") {
    Rng rng(3);
    const auto p = random_poly(3, rng);
    CHECK(poly_from_records(3, poly_to_records(p)) == p);
    std::vector<PolyRecord> bad{{{1, 2}, {0, 0}, 1.0, 0.0}};
    CHECK_THROWS_AS(poly_from_records(3, bad), SpecError);
    std::vector<PolyRecord> neg{{{-1, 0, 0}, {0, 0, 0}, 1.0, 0.0}};
    CHECK_THROWS_AS(poly_from_records(3, neg), SpecError);
}
