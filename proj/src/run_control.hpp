#pragma once

#include <chrono>
#include <cstdint>

#include "klsf/metaheuristics.hpp"

namespace klsf::detail {

// Wall clock and iteration bookkeeping for one solver run.
class RunControl {
public:
    using Clock = std::chrono::steady_clock;

    explicit RunControl(const StoppingCondition& stop) : stop_(stop), start_(Clock::now()) { stop_.validate(); }

    Duration elapsed() const { return Clock::now() - start_; }

    bool time_up() const { return stop_.max_time && elapsed() >= *stop_.max_time; }

    bool should_stop() const {
        if (stop_.max_iterations && iterations_ >= *stop_.max_iterations) return true;
        if (stop_.max_idle_iterations && idle_ >= *stop_.max_idle_iterations) return true;
        return time_up();
    }

    void finish_iteration(bool improved) {
        ++iterations_;
        idle_ = improved ? 0 : idle_ + 1;
    }

    void mark_best() { time_to_best_ = elapsed(); }

    std::uint64_t iterations() const { return iterations_; }
    Duration time_to_best() const { return time_to_best_; }

private:
    StoppingCondition stop_;
    Clock::time_point start_;
    std::uint64_t iterations_ = 0;
    std::uint64_t idle_ = 0;
    Duration time_to_best_{0};
};

inline RunRecord make_record(const char* name, std::uint64_t seed, LabelSubset best, std::size_t comp,
                             const RunControl& ctl) {
    RunRecord r;
    r.algorithm = name;
    r.seed = seed;
    r.objective = comp;
    r.labels_used = best.size();
    r.best = std::move(best);
    r.time_to_best = ctl.time_to_best();
    r.total_time = ctl.elapsed();
    r.iterations = ctl.iterations();
    return r;
}

}  // namespace klsf::detail
