#include <doctest.h>

#include <random>

#include "klsf/exact.hpp"
#include "klsf/instances.hpp"
#include "test_support.hpp"

using namespace klsf;
using namespace klsf::testing;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

ExactConfig generous() { return ExactConfig{std::chrono::seconds(30), true}; }

}  // namespace

TEST_CASE("exact_solve on the four-vertex graph") {
    const ExactResult r = exact_solve(four_vertex_graph(), 2, generous());
    REQUIRE(r.best.has_value());
    CHECK(*r.best == LabelSubset(3, {kA, kB}));
    CHECK(*r.best->cached_comp() == 1);
    CHECK(r.proven_optimal);
    CHECK(r.stopped_early);
    // at most C(3,0) + C(3,1) + C(3,2) subsets
    CHECK(r.nodes_visited <= 7);
}

TEST_CASE("exact_solve on an edgeless graph returns the lexicographically first subset") {
    LabeledGraph g(5, 3, {});
    const ExactResult r = exact_solve(g, 3, generous());
    REQUIRE(r.best.has_value());
    CHECK(*r.best->cached_comp() == 5);
    // every subset ties at comp = n; fewer labels win, so the empty set
    CHECK(r.best->empty());
    CHECK(r.proven_optimal);
    CHECK_FALSE(r.stopped_early);
    CHECK(r.nodes_visited == 8);
}

TEST_CASE("exact_solve times out on a large instance") {
    const LabeledGraph g = generate_graph({200, 250, 0.5, 17});
    SUBCASE("not-found report") {
        const ExactResult r = exact_solve(g, 6, ExactConfig{std::chrono::milliseconds(1), true});
        CHECK(r.timed_out);
        CHECK_FALSE(r.best.has_value());
        CHECK_FALSE(r.proven_optimal);
    }
    SUBCASE("best-so-far report") {
        const ExactResult r = exact_solve(g, 6, ExactConfig{std::chrono::milliseconds(1), false});
        CHECK(r.timed_out);
        REQUIRE(r.best.has_value());
        CHECK_FALSE(r.proven_optimal);
        LabelSubset copy = *r.best;
        copy.invalidate();
        CHECK(comp_count(g, copy) == *r.best->cached_comp());
    }
}

TEST_CASE("exact_solve argument checks") {
    const LabeledGraph g = four_vertex_graph();
    CHECK_THROWS_AS(exact_solve(g, 4, generous()), std::invalid_argument);
    CHECK_THROWS_AS(exact_solve(g, 0, generous()), std::invalid_argument);
    CHECK_THROWS_AS(exact_solve(g, 1, ExactConfig{std::chrono::nanoseconds(0), true}), std::invalid_argument);
}

TEST_CASE("brute_force_oracle examples") {
    CHECK(brute_force_oracle(four_vertex_graph(), 1) == 2);
    LabeledGraph path(4, 3, {{1, 2, 1}, {2, 3, 2}, {3, 4, 3}});
    CHECK(brute_force_oracle(path, 3) == 1);
    // never worse than the empty subset
    LabeledGraph edgeless(6, 2, {});
    CHECK(brute_force_oracle(edgeless, 1) == 6);
    LabeledGraph wide(3, 21, {{1, 2, 1}});
    CHECK_THROWS_AS(brute_force_oracle(wide, 2), std::invalid_argument);
}

TEST_CASE("exact_solve agrees with the oracle") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const LabeledGraph g = random_graph(rng, 14, 12);
        const std::size_t k = 1 + rng() % g.label_count();
        const ExactResult r = exact_solve(g, k, generous());
        REQUIRE(r.best.has_value());
        CHECK(*r.best->cached_comp() == brute_force_oracle(g, k));
        CHECK(r.best->size() <= k);
        CHECK(bfs_components(g, *r.best) == *r.best->cached_comp());
        // each combination visited at most once
        std::uint64_t bound = 0;
        for (std::size_t i = 0; i <= k; ++i) bound += binomial(g.label_count(), i);
        CHECK(r.nodes_visited <= bound);
        if (r.stopped_early) CHECK(*r.best->cached_comp() == 1);
        if (!r.stopped_early) CHECK(r.nodes_visited == bound);
    }
}
