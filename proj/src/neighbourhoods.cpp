#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "klsf/constructive.hpp"
#include "klsf/metaheuristics.hpp"

namespace klsf {

void StoppingCondition::validate() const {
    if (!max_time && !max_iterations && !max_idle_iterations)
        throw std::invalid_argument("stopping condition: no criterion set");
    if (max_time && *max_time <= Duration::zero())
        throw std::invalid_argument("stopping condition: time limit must be positive");
}

std::string QmaxStrategy::describe() const {
    std::string a = std::to_string(alpha_num);
    if (alpha_den != 1) a += "/" + std::to_string(alpha_den);
    switch (kind) {
        case QmaxKind::Fixed: return "fixed(" + a + ")";
        case QmaxKind::ProportionalToK: return "k(" + a + ")";
        case QmaxKind::ProportionalToSolution: return "sol(" + a + ")";
    }
    return a;
}

std::size_t qmax_eval(const QmaxStrategy& s, std::size_t k, std::size_t current_size) {
    if (s.alpha_num <= 0 || s.alpha_den <= 0) throw std::invalid_argument("qmax: alpha must be positive");
    std::int64_t scale = 1;
    switch (s.kind) {
        case QmaxKind::Fixed: scale = 1; break;
        case QmaxKind::ProportionalToK: scale = static_cast<std::int64_t>(k); break;
        case QmaxKind::ProportionalToSolution: scale = static_cast<std::int64_t>(current_size); break;
    }
    const std::int64_t product = s.alpha_num * scale;
    const std::int64_t ceil = (product + s.alpha_den - 1) / s.alpha_den;
    return static_cast<std::size_t>(std::max<std::int64_t>(1, ceil));
}

std::vector<QmaxStrategy> qmax_strategy_grid() {
    std::vector<QmaxStrategy> grid;
    for (int a : {5, 10, 15, 20, 25}) grid.push_back(QmaxStrategy::fixed(a));
    for (int a : {1, 3, 5, 7, 9}) grid.push_back(QmaxStrategy::per_k(a, 10));
    for (int a : {1, 2, 3, 4, 5}) grid.push_back(QmaxStrategy::per_solution(a, 3));
    return grid;
}

LabelSubset shake(const LabeledGraph& g, const LabelSubset& c, std::size_t q, Rng& rng) {
    if (q == 0) throw std::invalid_argument("shake: amplitude must be at least 1");
    if (q > g.label_count()) throw std::invalid_argument("shake: amplitude exceeds the number of labels");

    LabelSubset out = c;
    std::vector<Label> remaining = c.members();
    const std::size_t original_size = remaining.size();
    std::vector<Label> unused;
    for (std::size_t i = 1; i <= q; ++i) {
        if (i <= original_size) {
            const auto idx = static_cast<std::size_t>(rng.below(remaining.size()));
            out.erase(remaining[idx]);
            remaining[idx] = remaining.back();
            remaining.pop_back();
        } else {
            if (unused.empty() && i == original_size + 1) {
                for (Label l = 1; l <= g.label_count(); ++l)
                    if (!c.contains(l)) unused.push_back(l);
            }
            const auto idx = static_cast<std::size_t>(rng.below(unused.size()));
            out.insert(unused[idx]);
            unused[idx] = unused.back();
            unused.pop_back();
        }
    }
    comp_count(g, out);
    return out;
}

namespace {

// Removes labels one at a time, each time the one whose removal keeps Comp
// lowest (lowest id on ties), until at most k remain.
void trim_to_budget(const LabeledGraph& g, LabelSubset& c, std::size_t k) {
    while (c.size() > k) {
        Label drop = 0;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (Label l : c.members()) {
            LabelSubset trial = c;
            trial.erase(l);
            const std::size_t comp = comp_count(g, trial);
            if (comp < best) {
                best = comp;
                drop = l;
            }
        }
        c.erase(drop);
        c.set_cached_comp(best);
    }
}

}  // namespace

LabelSubset local_search(const LabeledGraph& g, LabelSubset c, std::size_t k, Rng& rng) {
    trim_to_budget(g, c, k);
    comp_count(g, c);
    const std::vector<Label> pool = all_labels(g);
    const auto tie = GreedyTieRule::random(rng);

    LabelSubset best = c;
    Fitness best_fit = fitness_of(g, best);
    for (Label removed : c.members()) {
        LabelSubset rebuilt = c;
        rebuilt.erase(removed);
        ComponentTracker tracker(g, rebuilt);
        greedy_fill(tracker, rebuilt, pool, k, tie);
        const Fitness fit = fitness_of(g, rebuilt);
        if (fit < best_fit) {
            best = std::move(rebuilt);
            best_fit = fit;
        }
    }
    return best;
}

LabelSubset random_solution(const LabeledGraph& g, std::size_t k, Rng& rng) {
    std::vector<Label> labels = all_labels(g);
    LabelSubset c(g.label_count());
    ComponentTracker tracker(g);
    const std::size_t target = std::min(k, labels.size());
    for (std::size_t i = 0; i < target && tracker.components() > 1; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(labels.size() - i));
        std::swap(labels[i], labels[j]);
        tracker.add(labels[i]);
        c.insert(labels[i]);
    }
    c.set_cached_comp(tracker.components());
    return c;
}

}  // namespace klsf
