#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "klsf/graph.hpp"

namespace klsf {

struct ExactConfig {
    std::chrono::nanoseconds time_limit = std::chrono::hours(3);
    // On timeout: report "not found" instead of the best subset seen so far.
    bool report_not_found = true;
};

struct ExactResult {
    // Empty only when the search timed out with report_not_found set.
    std::optional<LabelSubset> best;
    bool proven_optimal = false;
    bool timed_out = false;
    bool stopped_early = false;  // a single-component subset ended the search
    std::uint64_t nodes_visited = 0;
    std::chrono::nanoseconds elapsed{0};
};

// Backtracking over label combinations in lexicographic order, every subset
// with at most k labels visited once. The incumbent minimizes Comp, then the
// label count, then lexicographic order. The search stops as soon as a subset
// with a single component is found.
// Throws std::invalid_argument unless 1 <= k <= ℓ or if the time limit is not positive.
ExactResult exact_solve(const LabeledGraph& g, std::size_t k, const ExactConfig& cfg);

// Test oracle: minimum Comp over every subset with |C| <= k, each evaluated
// by breadth-first search. Throws std::invalid_argument when ℓ > 20.
std::size_t brute_force_oracle(const LabeledGraph& g, std::size_t k);

}  // namespace klsf
