#include <stdexcept>

#include "klsf/constructive.hpp"
#include "klsf/metaheuristics.hpp"
#include "run_control.hpp"

namespace klsf {

LabelSubset grasp_construct(const LabeledGraph& g, std::size_t k, Rng& rng) {
    LabelSubset c(g.label_count());
    if (k == 0 || g.label_count() == 0) {
        comp_count(g, c);
        return c;
    }
    // Unrestricted first pick, then the restricted list holds only the labels
    // reaching the minimum component count.
    const auto first = static_cast<Label>(rng.below(g.label_count()) + 1);
    c.insert(first);
    ComponentTracker tracker(g, c);
    const std::vector<Label> pool = all_labels(g);
    greedy_fill(tracker, c, pool, k, GreedyTieRule::random(rng));
    return c;
}

RunRecord grasp(const LabeledGraph& g, std::size_t k, const StoppingCondition& stop, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("grasp: k must be at least 1");
    detail::RunControl ctl(stop);
    Rng rng(seed);
    const std::size_t lower_bound = whole_graph_components(g);

    LabelSubset best;
    Fitness best_fit{};
    bool have_best = false;
    // At least one iteration always runs so that a solution exists.
    do {
        LabelSubset c = local_search(g, grasp_construct(g, k, rng), k, rng);
        const Fitness fit = fitness_of(g, c);
        const bool improved = !have_best || fit < best_fit;
        if (improved) {
            best = std::move(c);
            best_fit = fit;
            have_best = true;
            ctl.mark_best();
        }
        ctl.finish_iteration(improved);
    } while (!ctl.should_stop() && best_fit.comp > lower_bound);
    return detail::make_record("grasp", seed, std::move(best), best_fit.comp, ctl);
}

}  // namespace klsf
