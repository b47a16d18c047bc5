#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>

#include "dbar/core.hpp"
#include "dbar/exact.hpp"
#include "dbar/parallel.hpp"

using namespace dbar;

TEST_CASE("subset index basics") {
    const SubsetIndex I = SubsetIndex::from_elements({0, 2});
    CHECK(I.mask() == 0b101u);
    CHECK(I.size() == 2);
    CHECK(I.elements() == std::vector<int>{0, 2});
    CHECK(I.to_string() == "{1,3}");
    CHECK(I.complement(3) == SubsetIndex::from_elements({1}));
    CHECK(I.subset_of(SubsetIndex::full(3)));
    CHECK_FALSE(SubsetIndex::full(3).subset_of(I));
    CHECK(SubsetIndex().empty());
    CHECK_THROWS_AS(SubsetIndex::from_elements({kMaxDim}), SpecError);
}

TEST_CASE("subset enumeration is increasing bitmask order") {
    const auto s = nonempty_subsets(3);
    REQUIRE(s.size() == 7);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].mask() == i + 1);
    CHECK(all_subsets(2).size() == 4);
    CHECK(all_subsets(2).front().empty());
}

TEST_CASE("block partitions") {
    const BlockPartition bp = BlockPartition::from_groups({{0, 1}, {2}});
    CHECK(bp.block_count() == 2);
    CHECK(bp.dimension() == 3);
    CHECK(bp.coords(0) == std::vector<int>{0, 1});
    CHECK(bp.offset(1) == 2);
    CHECK(bp.block_of(1) == 0);
    CHECK(bp.block_of(2) == 1);
    CHECK_FALSE(bp.all_singletons());
    CHECK(BlockPartition::singletons(3).all_singletons());
    CHECK_THROWS_AS(BlockPartition::from_groups({{0}, {2}, {1}}), SpecError);
    CHECK_THROWS_AS(BlockPartition::from_groups({{0}, {}}), SpecError);
    CHECK_THROWS_AS(BlockPartition(std::vector<int>{0, 1}), SpecError);
    CHECK_THROWS_AS(bp.block_of(3), SpecError);
}

TEST_CASE("exact complex arithmetic") {
    const ExactComplex a(ratio(1, 3), ratio(-1, 2));
    const ExactComplex b(ratio(2, 3), ratio(1, 2));
    CHECK(a + b == ExactComplex(1));
    CHECK(a * b == ExactComplex(ratio(2, 9) + ratio(1, 4), ratio(1, 6) - ratio(1, 3)));
    CHECK(ExactComplex::i() * ExactComplex::i() == ExactComplex(-1));
    CHECK(ratio(2, 4) == ratio(1, 2));
    // Doubles convert exactly.
    CHECK(ExactComplex::from_double(0.1).to_complex().real() == 0.1);
    CHECK_THROWS_AS(ExactComplex::from_double(std::numeric_limits<double>::quiet_NaN()), SpecError);
}

TEST_CASE("parallel_for touches every index once, for any thread count") {
    for (int threads : {1, 2, 8}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; }, 7);
        bool ok = true;
        for (auto& h : hits) ok = ok && h.load() == 1;
        CHECK(ok);
    }
}

TEST_CASE("parallel_for rethrows worker exceptions") {
    CHECK_THROWS_AS(parallel_for(100, 4, [](std::size_t i) {
        if (i == 57) throw SpecError("boom");
    }), SpecError);
}

TEST_CASE("deterministic sums do not depend on the thread count") {
    auto term = [](std::size_t k) { return std::sin(0.001 * double(k)) / (1.0 + double(k)); };
    const double ref = deterministic_sum<double>(100000, 1, term);
    for (int threads : {2, 3, 8}) CHECK(deterministic_sum<double>(100000, threads, term) == ref);
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(pairwise_sum(v) == 500500.0);
}

TEST_CASE("nan_max propagates NaN") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::isnan(nan_max(1.0, nan)));
    CHECK(std::isnan(nan_max(nan, 1.0)));
    CHECK(nan_max(1.0, 2.0) == 2.0);
    CHECK(std::isnan(deterministic_max(10, 2, [&](std::size_t k) { return k == 3 ? nan : 1.0; })));
}
