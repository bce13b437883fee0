#include <limits>
#include <stdexcept>

#include "klsf/constructive.hpp"
#include "klsf/metaheuristics.hpp"
#include "run_control.hpp"

namespace klsf {

std::size_t GaConfig::generation_count() const { return generations.value_or(population_size / 2); }

void GaConfig::validate() const {
    if (population_size < 2 || population_size % 2 != 0)
        throw std::invalid_argument("ga: population size must be an even number of at least 2");
    if (generation_count() < 1) throw std::invalid_argument("ga: at least one generation required");
}

LabelSubset ga_crossover(const LabeledGraph& g, const LabelSubset& p1, const LabelSubset& p2, std::size_t k) {
    LabelSubset pool_set = p1;
    for (Label l : p2.members()) pool_set.insert(l);
    const std::vector<Label> pool = pool_set.members();
    return mvca_extend(g, LabelSubset(g.label_count()), pool, k, GreedyTieRule::deterministic());
}

LabelSubset ga_mutate(const LabeledGraph& g, LabelSubset child, Rng& rng) {
    std::vector<Label> unused;
    for (Label l = 1; l <= g.label_count(); ++l)
        if (!child.contains(l)) unused.push_back(l);
    if (unused.empty()) return child;
    child.insert(unused[static_cast<std::size_t>(rng.below(unused.size()))]);

    Label drop = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (Label l : child.members()) {
        LabelSubset survivor = child;
        survivor.erase(l);
        const std::size_t comp = comp_count(g, survivor);
        if (comp < best) {
            best = comp;
            drop = l;
        }
    }
    child.erase(drop);
    child.set_cached_comp(best);
    return child;
}

RunRecord ga(const LabeledGraph& g, std::size_t k, const GaConfig& cfg, const StoppingCondition& stop,
             std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("ga: k must be at least 1");
    cfg.validate();
    detail::RunControl ctl(stop);
    Rng rng(seed);
    const std::size_t lower_bound = whole_graph_components(g);
    const std::size_t size = cfg.population_size;
    const std::size_t genes = std::min(k, g.label_count());

    std::vector<Label> labels = all_labels(g);
    std::vector<LabelSubset> population;
    population.reserve(size);
    for (std::size_t p = 0; p < size; ++p) {
        LabelSubset individual(g.label_count());
        for (std::size_t i = 0; i < genes; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(labels.size() - i));
            std::swap(labels[i], labels[j]);
            individual.insert(labels[i]);
        }
        comp_count(g, individual);
        population.push_back(std::move(individual));
    }

    std::size_t best_index = 0;
    for (std::size_t p = 1; p < size; ++p)
        if (fitness_of(g, population[p]) < fitness_of(g, population[best_index])) best_index = p;
    LabelSubset best = population[best_index];
    Fitness best_fit = fitness_of(g, best);
    ctl.mark_best();

    const std::size_t generations = cfg.generation_count();
    for (std::size_t gen = 0; gen < generations && best_fit.comp > lower_bound && !ctl.should_stop(); ++gen) {
        std::vector<LabelSubset> next = population;
        bool improved = false;
        for (std::size_t p = 0; p < size; ++p) {
            LabelSubset child = ga_crossover(g, population[p], population[(p + 1) % size], k);
            child = ga_mutate(g, std::move(child), rng);
            const Fitness fit = fitness_of(g, child);
            if (fit < fitness_of(g, next[p])) next[p] = child;
            if (fit < best_fit) {
                best = std::move(child);
                best_fit = fit;
                ctl.mark_best();
                improved = true;
            }
        }
        population = std::move(next);
        ctl.finish_iteration(improved);
    }
    return detail::make_record("ga", seed, std::move(best), best_fit.comp, ctl);
}

}  // namespace klsf
