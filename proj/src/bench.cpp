#include "klsf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "klsf/constructive.hpp"

namespace klsf {

namespace {

constexpr Algorithm kAllAlgorithms[] = {Algorithm::Mvca, Algorithm::Exact, Algorithm::Pilot,
                                        Algorithm::Ga,   Algorithm::Grasp, Algorithm::Bvns};

double to_ms(Duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Mvca: return "mvca";
        case Algorithm::Exact: return "exact";
        case Algorithm::Pilot: return "pilot";
        case Algorithm::Ga: return "ga";
        case Algorithm::Grasp: return "grasp";
        case Algorithm::Bvns: return "bvns";
    }
    return "?";
}

const char* algorithm_title(Algorithm a) {
    switch (a) {
        case Algorithm::Mvca: return "MVCA";
        case Algorithm::Exact: return "EXACT";
        case Algorithm::Pilot: return "PM";
        case Algorithm::Ga: return "GA";
        case Algorithm::Grasp: return "GRASP";
        case Algorithm::Bvns: return "BVNS";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms)
        if (name == algorithm_name(a)) return a;
    if (name == "pm") return Algorithm::Pilot;
    return std::nullopt;
}

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::NotFound: return "nf";
        case RunStatus::Error: return "error";
    }
    return "?";
}

RunRow solve_once(const Instance& inst, const std::string& instance_path, Algorithm algorithm,
                  const SolverSettings& settings, Duration time_limit, std::uint64_t seed, LabelSubset* solution) {
    const LabeledGraph& g = inst.graph;
    RunRow row;
    row.instance_path = instance_path;
    row.n = g.vertex_count();
    row.l = g.label_count();
    row.k = inst.k;
    row.algorithm = algorithm;
    row.seed = seed;

    StoppingCondition stop;
    stop.max_time = time_limit;
    stop.max_idle_iterations = settings.max_idle_iterations;
    stop.max_iterations = settings.max_iterations;

    const auto fill = [&](RunRecord rec) {
        row.objective = rec.objective;
        row.labels_used = rec.labels_used;
        row.time_to_best_ms = to_ms(rec.time_to_best);
        row.total_time_ms = to_ms(rec.total_time);
        if (solution != nullptr) *solution = std::move(rec.best);
    };

    switch (algorithm) {
        case Algorithm::Mvca: {
            const auto start = std::chrono::steady_clock::now();
            LabelSubset c = mvca(g, inst.k, GreedyTieRule::deterministic());
            const Duration elapsed = std::chrono::steady_clock::now() - start;
            row.objective = comp_count(g, c);
            row.labels_used = c.size();
            row.time_to_best_ms = row.total_time_ms = to_ms(elapsed);
            if (solution != nullptr) *solution = std::move(c);
            break;
        }
        case Algorithm::Exact: {
            ExactConfig cfg;
            cfg.time_limit = time_limit;
            cfg.report_not_found = settings.exact_report_not_found;
            ExactResult r = exact_solve(g, inst.k, cfg);
            row.time_to_best_ms = row.total_time_ms = to_ms(r.elapsed);
            if (!r.best) {
                row.status = RunStatus::NotFound;
                row.message = "time limit reached";
                break;
            }
            row.objective = *r.best->cached_comp();
            row.labels_used = r.best->size();
            if (!r.proven_optimal) row.message = "not proven optimal";
            if (solution != nullptr) *solution = std::move(*r.best);
            break;
        }
        case Algorithm::Pilot: fill(pilot_method(g, inst.k, stop)); break;
        case Algorithm::Ga: fill(ga(g, inst.k, settings.ga, stop, seed)); break;
        case Algorithm::Grasp: fill(grasp(g, inst.k, stop, seed)); break;
        case Algorithm::Bvns: fill(bvns(g, inst.k, settings.qmax, stop, seed)); break;
    }
    return row;
}

void BenchPlan::validate() const {
    if (groups.empty() && instances.empty()) throw std::invalid_argument("bench plan has no instances");
    if (algorithms.empty()) throw std::invalid_argument("bench plan has no algorithms");
    if (repeats < 1) throw std::invalid_argument("bench plan: repeats must be at least 1");
    if (workers < 1) throw std::invalid_argument("bench plan: workers must be at least 1");
    for (const auto& grp : groups) {
        if (grp.instance_count < 1) throw std::invalid_argument("bench plan: every group needs an instance");
        InstanceSpec{grp.n, grp.l, grp.density, 0}.validate();
        if (grp.k && (*grp.k < 1 || *grp.k > grp.l)) throw std::invalid_argument("bench plan: k out of range");
    }
    if (time_limit && *time_limit <= Duration::zero()) throw std::invalid_argument("bench plan: time limit");
    if (exact_time_limit && *exact_time_limit <= Duration::zero())
        throw std::invalid_argument("bench plan: exact time limit");
    settings.ga.validate();
}

Duration BenchPlan::limit_for(std::size_t n) const {
    if (time_limit) return *time_limit;
    return n <= 200 ? Duration(std::chrono::seconds(60)) : Duration(std::chrono::seconds(600));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t instance, std::uint64_t repeat) {
    // splitmix64 finalizer over a simple combination.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (instance + 1) + 0xBF58476D1CE4E5B9ULL * (repeat + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<BenchInstance> materialize(const BenchPlan& plan) {
    std::vector<BenchInstance> out = plan.instances;
    std::vector<ManifestEntry> manifest;
    if (plan.instance_dir) std::filesystem::create_directories(*plan.instance_dir);
    for (std::size_t gi = 0; gi < plan.groups.size(); ++gi) {
        const BenchGroup& grp = plan.groups[gi];
        std::vector<Instance> made;
        std::size_t group_k = grp.k.value_or(0);
        for (std::size_t i = 0; i < grp.instance_count; ++i) {
            InstanceSpec spec{grp.n, grp.l, grp.density, derive_seed(plan.seed, gi, i)};
            LabeledGraph g = generate_graph(spec);
            if (!grp.k) {
                const std::size_t k = determine_k(g);
                group_k = (i == 0) ? k : std::min(group_k, k);
            }
            made.push_back(Instance{std::move(g), 0, GeneratedFrom{spec}});
        }
        for (std::size_t i = 0; i < made.size(); ++i) {
            Instance& inst = made[i];
            inst.k = group_k;
            const auto& spec = std::get<GeneratedFrom>(inst.provenance).spec;
            std::ostringstream name;
            name << "n" << grp.n << "_l" << grp.l << "_" << i << ".klsf";
            std::string path = "gen:" + name.str();
            if (plan.instance_dir) {
                const auto file = std::filesystem::path(*plan.instance_dir) / name.str();
                write_instance_file(inst, file);
                path = file.string();
                manifest.push_back({file, spec, inst.k});
            }
            out.push_back({path, std::make_shared<const Instance>(std::move(inst))});
        }
    }
    if (plan.instance_dir) {
        std::ofstream mf(std::filesystem::path(*plan.instance_dir) / "manifest.csv");
        write_manifest(manifest, mf);
    }
    return out;
}

}  // namespace

BenchResult run_bench(const BenchPlan& plan, const std::function<void(const RunRow&)>& progress) {
    plan.validate();
    const std::vector<BenchInstance> instances = materialize(plan);

    struct Cell {
        std::size_t instance;
        Algorithm algorithm;
        std::size_t repeat;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (Algorithm a : plan.algorithms)
            for (std::size_t r = 0; r < plan.repeats; ++r) cells.push_back({i, a, r});

    std::vector<RunRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    const auto worker = [&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
            const Cell& cell = cells[c];
            const BenchInstance& bi = instances[cell.instance];
            const Instance& inst = *bi.instance;
            const std::uint64_t seed = derive_seed(plan.seed, cell.instance, cell.repeat);
            const Duration limit = cell.algorithm == Algorithm::Exact && plan.exact_time_limit
                                       ? *plan.exact_time_limit
                                       : plan.limit_for(inst.graph.vertex_count());
            RunRow row;
            try {
                row = solve_once(inst, bi.path, cell.algorithm, plan.settings, limit, seed);
            } catch (const std::exception& e) {
                row.instance_path = bi.path;
                row.n = inst.graph.vertex_count();
                row.l = inst.graph.label_count();
                row.k = inst.k;
                row.algorithm = cell.algorithm;
                row.seed = seed;
                row.status = RunStatus::Error;
                row.message = e.what();
            }
            rows[c] = row;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(row);
            }
        }
    };
    const std::size_t thread_count = std::min(plan.workers, std::max<std::size_t>(cells.size(), 1));
    std::vector<std::jthread> threads;
    for (std::size_t t = 1; t < thread_count; ++t) threads.emplace_back(worker);
    worker();
    threads.clear();

    BenchResult result;
    result.rows = std::move(rows);
    result.groups = summarize(result.rows);
    result.algorithms = plan.algorithms;
    return result;
}

std::vector<GroupSummary> summarize(const std::vector<RunRow>& rows) {
    struct Acc {
        AlgorithmSummary s;
        double obj_sum = 0;
        double time_sum = 0;
        std::size_t with_objective = 0;
    };
    std::map<GroupKey, std::map<Algorithm, Acc>> acc;
    for (const RunRow& r : rows) {
        Acc& a = acc[GroupKey{r.n, r.l, r.k}][r.algorithm];
        ++a.s.runs;
        if (r.status == RunStatus::NotFound) ++a.s.not_found;
        if (r.status == RunStatus::Error) ++a.s.errors;
        if (r.objective) {
            a.obj_sum += static_cast<double>(*r.objective);
            a.time_sum += r.time_to_best_ms;
            ++a.with_objective;
        }
    }
    std::vector<GroupSummary> out;
    for (auto& [key, per] : acc) {
        GroupSummary gs;
        gs.key = key;
        for (auto& [alg, a] : per) {
            if (a.with_objective > 0) {
                a.s.mean_objective = a.obj_sum / static_cast<double>(a.with_objective);
                a.s.mean_time_to_best_ms = a.time_sum / static_cast<double>(a.with_objective);
            }
            gs.per_algorithm[alg] = a.s;
        }
        out.push_back(std::move(gs));
    }
    return out;
}

void write_csv_header(std::ostream& out) {
    out << "instance_path,n,l,k,algorithm,seed,objective,labels_used,time_to_best_ms,total_time_ms,status\n";
}

void write_csv_row(const RunRow& r, std::ostream& out) {
    std::ostringstream line;
    line << r.instance_path << ',' << r.n << ',' << r.l << ',' << r.k << ',' << algorithm_name(r.algorithm) << ','
         << r.seed << ',';
    if (r.objective) line << *r.objective;
    line << ',' << r.labels_used << ',' << std::fixed << std::setprecision(3) << r.time_to_best_ms << ','
         << r.total_time_ms << ',' << status_name(r.status) << '\n';
    out << line.str();
}

void write_results_csv(const std::vector<RunRow>& rows, std::ostream& out) {
    write_csv_header(out);
    for (const RunRow& r : rows) write_csv_row(r, out);
}

std::vector<RunRow> read_results_csv(std::istream& in) {
    std::vector<RunRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11) throw std::runtime_error("results csv line " + std::to_string(line_no) + ": arity");
        RunRow r;
        r.instance_path = cells[0];
        r.n = std::stoull(cells[1]);
        r.l = std::stoull(cells[2]);
        r.k = std::stoull(cells[3]);
        const auto alg = parse_algorithm(cells[4]);
        if (!alg) throw std::runtime_error("results csv line " + std::to_string(line_no) + ": algorithm");
        r.algorithm = *alg;
        r.seed = std::stoull(cells[5]);
        if (!cells[6].empty()) r.objective = std::stoull(cells[6]);
        r.labels_used = std::stoull(cells[7]);
        r.time_to_best_ms = std::stod(cells[8]);
        r.total_time_ms = std::stod(cells[9]);
        r.status = cells[10] == "ok" ? RunStatus::Ok : cells[10] == "nf" ? RunStatus::NotFound : RunStatus::Error;
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_markdown_table(const BenchResult& result, std::ostream& out) {
    out << "| n | l | k |";
    for (Algorithm a : result.algorithms) out << ' ' << algorithm_title(a) << " Obj | " << algorithm_title(a) << " Time |";
    out << "\n|---|---|---|";
    for (std::size_t i = 0; i < result.algorithms.size(); ++i) out << "---|---|";
    out << '\n';
    out << std::fixed;
    for (const GroupSummary& gs : result.groups) {
        out << "| " << gs.key.n << " | " << gs.key.l << " | " << gs.key.k << " |";
        for (Algorithm a : result.algorithms) {
            const auto it = gs.per_algorithm.find(a);
            if (it == gs.per_algorithm.end() || it->second.runs == it->second.errors) {
                out << " - | - |";
            } else if (it->second.not_found > 0) {
                out << " NF | NF |";
            } else {
                out << ' ' << std::setprecision(2) << it->second.mean_objective << " | " << std::setprecision(1)
                    << it->second.mean_time_to_best_ms << " |";
            }
        }
        out << '\n';
    }
}

}  // namespace klsf
