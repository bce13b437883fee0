#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "klsf/bench.hpp"
#include "test_support.hpp"

using namespace klsf;
using namespace klsf::testing;

namespace {

BenchPlan small_plan() {
    BenchPlan plan;
    plan.groups = {{30, 15, 0.3, std::nullopt, 3}, {20, 10, 0.3, std::nullopt, 2}};
    plan.algorithms = {Algorithm::Pilot, Algorithm::Ga, Algorithm::Grasp, Algorithm::Bvns};
    plan.settings.max_idle_iterations = 5;
    plan.settings.ga = GaConfig{10, 3};
    plan.time_limit = std::chrono::seconds(2);
    plan.repeats = 2;
    plan.seed = 11;
    return plan;
}

}  // namespace

TEST_CASE("algorithm names") {
    for (Algorithm a : {Algorithm::Mvca, Algorithm::Exact, Algorithm::Pilot, Algorithm::Ga, Algorithm::Grasp,
                        Algorithm::Bvns})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK(parse_algorithm("pm") == Algorithm::Pilot);
    CHECK_FALSE(parse_algorithm("tabu").has_value());
    CHECK(std::string(algorithm_title(Algorithm::Pilot)) == "PM");
}

TEST_CASE("derive_seed spreads") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 50; ++i)
        for (std::uint64_t r = 0; r < 20; ++r) seen.insert(derive_seed(7, i, r));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(7, 3, 4) == derive_seed(7, 3, 4));
    CHECK(derive_seed(7, 3, 4) != derive_seed(8, 3, 4));
}

TEST_CASE("plan validation") {
    BenchPlan empty;
    empty.algorithms = {Algorithm::Bvns};
    CHECK_THROWS_AS(run_bench(empty), std::invalid_argument);
    BenchPlan no_alg = small_plan();
    no_alg.algorithms.clear();
    CHECK_THROWS_AS(no_alg.validate(), std::invalid_argument);
    BenchPlan bad_k = small_plan();
    bad_k.groups[0].k = 99;
    CHECK_THROWS_AS(bad_k.validate(), std::invalid_argument);
    BenchPlan zero_repeats = small_plan();
    zero_repeats.repeats = 0;
    CHECK_THROWS_AS(zero_repeats.validate(), std::invalid_argument);

    BenchPlan defaults;
    CHECK(defaults.limit_for(200) == std::chrono::seconds(60));
    CHECK(defaults.limit_for(201) == std::chrono::seconds(600));
}

TEST_CASE("bench run shape and summaries") {
    BenchPlan plan = small_plan();
    plan.workers = 2;
    std::size_t progress_calls = 0;
    const BenchResult res = run_bench(plan, [&](const RunRow&) { ++progress_calls; });

    // 5 instances x 4 algorithms x 2 repeats
    REQUIRE(res.rows.size() == 40);
    CHECK(progress_calls == 40);
    for (const RunRow& r : res.rows) {
        CHECK(r.status == RunStatus::Ok);
        REQUIRE(r.objective.has_value());
        CHECK(r.labels_used <= r.k);
        CHECK(r.time_to_best_ms <= r.total_time_ms + 1e-9);
    }

    // one group per (n, l, k), ascending, with a shared k
    REQUIRE(res.groups.size() == 2);
    CHECK(res.groups[0].key.n == 20);
    CHECK(res.groups[1].key.n == 30);
    for (const GroupSummary& gs : res.groups) {
        CHECK(gs.per_algorithm.size() == 4);
        for (const auto& [alg, s] : gs.per_algorithm) CHECK(s.runs == (gs.key.n == 30 ? 6u : 4u));
    }

    // recomputing from the written CSV gives the same table
    std::stringstream csv;
    write_results_csv(res.rows, csv);
    const auto back = read_results_csv(csv);
    REQUIRE(back.size() == res.rows.size());
    const auto again = summarize(back);
    REQUIRE(again.size() == res.groups.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].key == res.groups[i].key);
        for (const auto& [alg, s] : res.groups[i].per_algorithm) {
            const AlgorithmSummary& t = again[i].per_algorithm.at(alg);
            CHECK(t.runs == s.runs);
            CHECK(t.mean_objective == doctest::Approx(s.mean_objective));
            CHECK(t.mean_time_to_best_ms == doctest::Approx(s.mean_time_to_best_ms).epsilon(0.01));
        }
    }

    std::ostringstream md;
    write_markdown_table(res, md);
    const std::string table = md.str();
    CHECK(table.rfind("| n | l | k | PM Obj | PM Time | GA Obj | GA Time |", 0) == 0);
    CHECK(table.find("| 20 | 10 |") < table.find("| 30 | 15 |"));
}

TEST_CASE("bench results do not depend on the worker count") {
    BenchPlan plan = small_plan();
    plan.groups = {{20, 10, 0.3, std::nullopt, 2}};
    plan.time_limit = std::chrono::seconds(60);
    plan.settings.max_iterations = 3;
    plan.settings.max_idle_iterations.reset();
    plan.workers = 1;
    const BenchResult one = run_bench(plan);
    plan.workers = 3;
    const BenchResult three = run_bench(plan);
    REQUIRE(one.rows.size() == three.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].objective == three.rows[i].objective);
        CHECK(one.rows[i].seed == three.rows[i].seed);
        CHECK(one.rows[i].instance_path == three.rows[i].instance_path);
    }
}

TEST_CASE("exact timeouts become NF") {
    BenchPlan plan;
    plan.groups = {{200, 250, 0.5, 6, 1}};
    plan.algorithms = {Algorithm::Exact};
    plan.exact_time_limit = std::chrono::milliseconds(1);
    const BenchResult res = run_bench(plan);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].status == RunStatus::NotFound);
    CHECK_FALSE(res.rows[0].objective.has_value());
    std::ostringstream md;
    write_markdown_table(res, md);
    CHECK(md.str().find("NF") != std::string::npos);
    std::ostringstream csv;
    write_results_csv(res.rows, csv);
    CHECK(csv.str().find(",exact,") != std::string::npos);
    CHECK(csv.str().find(",nf\n") != std::string::npos);
}

TEST_CASE("generated instances can be written with a manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "klsf_bench_manifest_test";
    std::filesystem::remove_all(dir);
    BenchPlan plan = small_plan();
    plan.groups = {{20, 10, 0.3, std::nullopt, 2}};
    plan.algorithms = {Algorithm::Mvca};
    plan.instance_dir = dir.string();
    const BenchResult res = run_bench(plan);
    std::ifstream mf(dir / "manifest.csv");
    const auto entries = read_manifest(mf);
    REQUIRE(entries.size() == 2);
    for (const ManifestEntry& e : entries) {
        const Instance inst = read_instance_file(e.path);
        CHECK(inst.k == e.k);
        CHECK(inst.graph == generate_graph(e.spec));
    }
    CHECK(res.rows[0].instance_path == entries[0].path.string());
    std::filesystem::remove_all(dir);
}
