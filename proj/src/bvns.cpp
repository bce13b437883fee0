#include <algorithm>

#include "klsf/metaheuristics.hpp"
#include "run_control.hpp"

namespace klsf {

RunRecord bvns(const LabeledGraph& g, std::size_t k, const QmaxStrategy& strategy, const StoppingCondition& stop,
               std::uint64_t seed, BvnsTrace* trace) {
    if (k < 1) throw std::invalid_argument("bvns: k must be at least 1");
    detail::RunControl ctl(stop);
    Rng rng(seed);
    const std::size_t lower_bound = whole_graph_components(g);
    // q never reaches q_max, so capping q_max at ℓ keeps every shake valid.
    const auto amplitude_limit = [&](const LabelSubset& c) {
        return std::min(qmax_eval(strategy, k, c.size()), g.label_count());
    };

    LabelSubset incumbent = random_solution(g, k, rng);
    std::size_t incumbent_comp = comp_count(g, incumbent);
    ctl.mark_best();

    std::uint64_t pass = 0;
    while (!ctl.should_stop() && incumbent_comp > lower_bound) {
        bool improved = false;
        std::size_t q = 1;
        std::size_t q_max = amplitude_limit(incumbent);
        while (q < q_max && !ctl.time_up() && incumbent_comp > lower_bound) {
            LabelSubset shaken = shake(g, incumbent, q, rng);
            LabelSubset candidate = local_search(g, std::move(shaken), k, rng);
            const std::size_t candidate_comp = comp_count(g, candidate);
            BvnsStep step{pass, q, q_max, candidate_comp, 0, false};
            if (candidate_comp < incumbent_comp) {
                incumbent = std::move(candidate);
                incumbent_comp = candidate_comp;
                ctl.mark_best();
                improved = true;
                step.improved = true;
                q = 1;
                q_max = amplitude_limit(incumbent);
            } else {
                ++q;
            }
            step.incumbent_comp = incumbent_comp;
            if (trace != nullptr) trace->steps.push_back(step);
        }
        ctl.finish_iteration(improved);
        ++pass;
    }
    return detail::make_record("bvns", seed, std::move(incumbent), incumbent_comp, ctl);
}

}  // namespace klsf
