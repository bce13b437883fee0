#pragma once

#include <cstddef>
#include <span>

#include "klsf/graph.hpp"
#include "klsf/rng.hpp"

namespace klsf {

// How the greedy picks among labels that tie on the minimum component count.
// Random mode draws from the caller's stream, so it is only valid while that
// stream is alive.
class GreedyTieRule {
public:
    static GreedyTieRule deterministic() { return GreedyTieRule(nullptr); }
    static GreedyTieRule random(Rng& rng) { return GreedyTieRule(&rng); }

    bool is_random() const noexcept { return rng_ != nullptr; }
    // Picks one of `minimizers` (ascending ids): the first, or uniformly.
    Label choose(std::span<const Label> minimizers) const;

private:
    explicit GreedyTieRule(Rng* rng) : rng_(rng) {}
    Rng* rng_;
};

// Adds labels from `pool` to c, each time the one minimizing Comp(c ∪ {l}),
// until |c| = k, Comp(c) = 1, or the pool holds no unused label. Labels of
// the pool already in c are skipped. Throws std::invalid_argument if |c| > k.
LabelSubset mvca_extend(const LabeledGraph& g, LabelSubset c, std::span<const Label> pool, std::size_t k,
                        GreedyTieRule tie);

// Greedy over the whole label set starting from the empty subset.
LabelSubset mvca(const LabeledGraph& g, std::size_t k, GreedyTieRule tie);

// Greedy extension using an already built tracker for c. Candidates are the
// labels of `pool` not in c. Returns the number of labels added.
std::size_t greedy_fill(ComponentTracker& tracker, LabelSubset& c, std::span<const Label> pool, std::size_t k,
                        GreedyTieRule tie);

// All label ids 1..ℓ.
std::vector<Label> all_labels(const LabeledGraph& g);

}  // namespace klsf
