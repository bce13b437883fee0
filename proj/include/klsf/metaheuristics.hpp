#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klsf/graph.hpp"
#include "klsf/rng.hpp"

namespace klsf {

using Duration = std::chrono::nanoseconds;

// When a run ends. What counts as one iteration is solver specific:
// BVNS: one pass of the shaking loop (q from 1 up to q_max);
// GRASP: one construction plus local search; GA: one generation;
// Pilot: one level of the master solution.
struct StoppingCondition {
    std::optional<Duration> max_time;
    std::optional<std::uint64_t> max_iterations;
    std::optional<std::uint64_t> max_idle_iterations;  // iterations without improvement

    static StoppingCondition time(Duration d) { return {d, std::nullopt, std::nullopt}; }
    static StoppingCondition iterations(std::uint64_t n) { return {std::nullopt, n, std::nullopt}; }

    // Throws std::invalid_argument when no criterion is set or a duration is not positive.
    // A zero iteration count is allowed and means "stop immediately".
    void validate() const;
};

enum class QmaxKind { Fixed, ProportionalToK, ProportionalToSolution };

// Maximum shaking amplitude rule. alpha is kept as a fraction so that values
// such as 4/3 evaluate exactly.
struct QmaxStrategy {
    QmaxKind kind = QmaxKind::ProportionalToSolution;
    std::int64_t alpha_num = 4;
    std::int64_t alpha_den = 3;

    static QmaxStrategy fixed(std::int64_t num, std::int64_t den = 1) { return {QmaxKind::Fixed, num, den}; }
    static QmaxStrategy per_k(std::int64_t num, std::int64_t den = 1) { return {QmaxKind::ProportionalToK, num, den}; }
    static QmaxStrategy per_solution(std::int64_t num, std::int64_t den = 1) {
        return {QmaxKind::ProportionalToSolution, num, den};
    }

    double alpha() const { return static_cast<double>(alpha_num) / static_cast<double>(alpha_den); }
    std::string describe() const;
};

// Ceiling of alpha times the scale (1, k or |C|), never below 1.
std::size_t qmax_eval(const QmaxStrategy& s, std::size_t k, std::size_t current_size);

// The fifteen tuned variants: Fixed {5..25}, ProportionalToK {0.1..0.9},
// ProportionalToSolution {1/3..5/3}.
std::vector<QmaxStrategy> qmax_strategy_grid();

struct GaConfig {
    std::size_t population_size = 100;
    std::optional<std::size_t> generations;  // default population_size / 2

    std::size_t generation_count() const;
    void validate() const;
};

struct RunRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    LabelSubset best;
    std::size_t objective = 0;
    std::size_t labels_used = 0;
    Duration time_to_best{0};
    Duration total_time{0};
    std::uint64_t iterations = 0;
};

// One shake + local search step of BVNS, for instrumentation.
struct BvnsStep {
    std::uint64_t pass = 0;
    std::size_t q = 0;
    std::size_t q_max = 0;
    std::size_t candidate_comp = 0;
    std::size_t incumbent_comp = 0;  // after the step
    bool improved = false;
};

struct BvnsTrace {
    std::vector<BvnsStep> steps;
};

struct PilotTrace {
    // Number of tentative completions evaluated at each level.
    std::vector<std::size_t> candidates_per_level;
};

// Random neighbour at Hamming distance exactly q: removes min(q, |c|) random
// labels of c, then adds q - |c| random labels outside the original c.
// Throws std::invalid_argument when q == 0 or q > ℓ.
LabelSubset shake(const LabeledGraph& g, const LabelSubset& c, std::size_t q, Rng& rng);

// Drops each label of c in turn and refills greedily (ties at random) while
// Comp > 1 and fewer than k labels are used. Returns the best of c and all
// rebuilt subsets under (comp, size); c wins ties.
LabelSubset local_search(const LabeledGraph& g, LabelSubset c, std::size_t k, Rng& rng);

LabelSubset random_solution(const LabeledGraph& g, std::size_t k, Rng& rng);

RunRecord bvns(const LabeledGraph& g, std::size_t k, const QmaxStrategy& strategy, const StoppingCondition& stop,
               std::uint64_t seed, BvnsTrace* trace = nullptr);

RunRecord pilot_method(const LabeledGraph& g, std::size_t k, const StoppingCondition& stop,
                       PilotTrace* trace = nullptr);

RunRecord ga(const LabeledGraph& g, std::size_t k, const GaConfig& cfg, const StoppingCondition& stop,
             std::uint64_t seed);

RunRecord grasp(const LabeledGraph& g, std::size_t k, const StoppingCondition& stop, std::uint64_t seed);

// GA operators, exposed for testing.
LabelSubset ga_crossover(const LabeledGraph& g, const LabelSubset& p1, const LabelSubset& p2, std::size_t k);
LabelSubset ga_mutate(const LabeledGraph& g, LabelSubset child, Rng& rng);

// GRASP construction phase.
LabelSubset grasp_construct(const LabeledGraph& g, std::size_t k, Rng& rng);

}  // namespace klsf
