#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klsf/exact.hpp"
#include "klsf/instances.hpp"
#include "klsf/metaheuristics.hpp"

namespace klsf {

enum class Algorithm { Mvca, Exact, Pilot, Ga, Grasp, Bvns };

// Lower-case CLI name: mvca, exact, pilot, ga, grasp, bvns.
const char* algorithm_name(Algorithm a);
// Column title in the summary table: MVCA, EXACT, PM, GA, GRASP, BVNS.
const char* algorithm_title(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SolverSettings {
    QmaxStrategy qmax;
    GaConfig ga;
    // Extra cap on non-improving iterations, on top of the time limit.
    std::optional<std::uint64_t> max_idle_iterations;
    std::optional<std::uint64_t> max_iterations;
    bool exact_report_not_found = true;
};

enum class RunStatus { Ok, NotFound, Error };
const char* status_name(RunStatus s);

// One solver execution, as written to the raw results CSV.
struct RunRow {
    std::string instance_path;
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t k = 0;
    Algorithm algorithm = Algorithm::Bvns;
    std::uint64_t seed = 0;
    std::optional<std::size_t> objective;
    std::size_t labels_used = 0;
    double time_to_best_ms = 0;
    double total_time_ms = 0;
    RunStatus status = RunStatus::Ok;
    std::string message;
};

// Runs one solver. Exact-method timeouts come back as NotFound; exceptions
// propagate to the caller.
RunRow solve_once(const Instance& inst, const std::string& instance_path, Algorithm algorithm,
                  const SolverSettings& settings, Duration time_limit, std::uint64_t seed,
                  LabelSubset* solution = nullptr);

struct BenchGroup {
    std::size_t n = 0;
    std::size_t l = 0;
    double density = 0.5;
    std::optional<std::size_t> k;  // empty: determined from the generated instances
    std::size_t instance_count = 10;
};

struct BenchInstance {
    std::string path;
    std::shared_ptr<const Instance> instance;
};

struct BenchPlan {
    std::vector<BenchGroup> groups;           // generated on the fly
    std::vector<BenchInstance> instances;     // supplied by the caller
    std::vector<Algorithm> algorithms;
    SolverSettings settings;
    std::uint64_t seed = 1;
    std::size_t repeats = 1;
    std::size_t workers = 1;
    // Empty: 60 s for n <= 200, 600 s above.
    std::optional<Duration> time_limit;
    std::optional<Duration> exact_time_limit;
    // When set, generated instances are also written here with a manifest.
    std::optional<std::string> instance_dir;

    // Throws std::invalid_argument for an empty plan or invalid values.
    void validate() const;
    Duration limit_for(std::size_t n) const;
};

struct AlgorithmSummary {
    std::size_t runs = 0;
    std::size_t not_found = 0;
    std::size_t errors = 0;
    double mean_objective = 0;     // over runs with an objective
    double mean_time_to_best_ms = 0;
};

struct GroupKey {
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t k = 0;
    friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct GroupSummary {
    GroupKey key;
    std::map<Algorithm, AlgorithmSummary> per_algorithm;
};

struct BenchResult {
    std::vector<RunRow> rows;
    std::vector<GroupSummary> groups;  // ascending (n, l, k)
    std::vector<Algorithm> algorithms;
};

// Derives run seeds from the plan seed, instance position and repeat index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t instance, std::uint64_t repeat);

// Generates every group's instances (k fixed per group as the smallest
// per-instance determine_k), then runs every (instance, algorithm, repeat)
// cell on `workers` threads. A failing run becomes an error row.
BenchResult run_bench(const BenchPlan& plan, const std::function<void(const RunRow&)>& progress = {});

std::vector<GroupSummary> summarize(const std::vector<RunRow>& rows);

void write_results_csv(const std::vector<RunRow>& rows, std::ostream& out);
void write_csv_header(std::ostream& out);
void write_csv_row(const RunRow& row, std::ostream& out);
std::vector<RunRow> read_results_csv(std::istream& in);

void write_markdown_table(const BenchResult& result, std::ostream& out);

}  // namespace klsf
