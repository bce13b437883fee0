#include "klsf/constructive.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace klsf {

Label GreedyTieRule::choose(std::span<const Label> minimizers) const {
    if (minimizers.empty()) throw std::invalid_argument("no candidates to choose from");
    if (rng_ == nullptr) return minimizers.front();
    return minimizers[static_cast<std::size_t>(rng_->below(minimizers.size()))];
}

std::vector<Label> all_labels(const LabeledGraph& g) {
    std::vector<Label> labels(g.label_count());
    std::iota(labels.begin(), labels.end(), Label{1});
    return labels;
}

std::size_t greedy_fill(ComponentTracker& tracker, LabelSubset& c, std::span<const Label> pool, std::size_t k,
                        GreedyTieRule tie) {
    std::size_t added = 0;
    std::vector<Label> minimizers;
    while (c.size() < k && tracker.components() > 1) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        minimizers.clear();
        for (Label l : pool) {
            if (c.contains(l)) continue;
            const std::size_t comp = tracker.components_if_added(l);
            if (comp < best) {
                best = comp;
                minimizers.clear();
            }
            if (comp == best) minimizers.push_back(l);
        }
        if (minimizers.empty()) break;  // pool exhausted
        const Label chosen = tie.choose(minimizers);
        tracker.add(chosen);
        c.insert(chosen);
        ++added;
    }
    c.set_cached_comp(tracker.components());
    return added;
}

LabelSubset mvca_extend(const LabeledGraph& g, LabelSubset c, std::span<const Label> pool, std::size_t k,
                        GreedyTieRule tie) {
    if (c.size() > k) throw std::invalid_argument("mvca_extend: subset already exceeds the label budget");
    ComponentTracker tracker(g, c);
    greedy_fill(tracker, c, pool, k, tie);
    return c;
}

LabelSubset mvca(const LabeledGraph& g, std::size_t k, GreedyTieRule tie) {
    const std::vector<Label> pool = all_labels(g);
    return mvca_extend(g, LabelSubset(g.label_count()), pool, k, tie);
}

}  // namespace klsf
