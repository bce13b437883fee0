#include <limits>
#include <stdexcept>

#include "klsf/constructive.hpp"
#include "klsf/metaheuristics.hpp"
#include "run_control.hpp"

namespace klsf {

RunRecord pilot_method(const LabeledGraph& g, std::size_t k, const StoppingCondition& stop, PilotTrace* trace) {
    if (k < 1) throw std::invalid_argument("pilot_method: k must be at least 1");
    detail::RunControl ctl(stop);
    const std::vector<Label> pool = all_labels(g);
    const std::size_t lower_bound = whole_graph_components(g);
    const auto tie = GreedyTieRule::deterministic();

    LabelSubset master(g.label_count());
    std::size_t master_comp = comp_count(g, master);
    std::size_t best_score = std::numeric_limits<std::size_t>::max();

    // The stopping condition is only checked between levels, so every level
    // scans all of its candidates.
    while (master.size() < k && master.size() < g.label_count() && master_comp > lower_bound &&
           !ctl.should_stop()) {
        Label chosen = 0;
        std::size_t level_best = std::numeric_limits<std::size_t>::max();
        std::size_t evaluated = 0;
        for (Label i : pool) {
            if (master.contains(i)) continue;
            LabelSubset tentative = master;
            tentative.insert(i);
            const LabelSubset completed = mvca_extend(g, std::move(tentative), pool, k, tie);
            ++evaluated;
            const std::size_t score = *completed.cached_comp();
            if (score < level_best) {
                level_best = score;
                chosen = i;
            }
        }
        if (trace != nullptr) trace->candidates_per_level.push_back(evaluated);
        master.insert(chosen);
        master_comp = comp_count(g, master);
        const bool improved = level_best < best_score;
        if (improved) {
            best_score = level_best;
            ctl.mark_best();
        }
        ctl.finish_iteration(improved);
    }

    LabelSubset result = mvca_extend(g, master, pool, k, tie);
    const std::size_t comp = comp_count(g, result);
    if (best_score == std::numeric_limits<std::size_t>::max()) ctl.mark_best();
    return detail::make_record("pilot", 0, std::move(result), comp, ctl);
}

}  // namespace klsf
