#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "klsf/bench.hpp"
#include "klsf/graph.hpp"
#include "klsf/instances.hpp"

namespace klsf::cli {

namespace fs = std::filesystem;

std::chrono::nanoseconds parse_duration(std::string_view text) {
    std::size_t split = 0;
    while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) || text[split] == '.'))
        ++split;
    const std::string number(text.substr(0, split));
    const std::string_view unit = text.substr(split);
    if (number.empty()) throw std::invalid_argument("bad duration '" + std::string(text) + "'");
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(number, &used);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad duration '" + std::string(text) + "'");
    }
    if (used != number.size()) throw std::invalid_argument("bad duration '" + std::string(text) + "'");
    double scale = 1e9;
    if (unit == "ns") scale = 1;
    else if (unit == "us") scale = 1e3;
    else if (unit == "ms") scale = 1e6;
    else if (unit.empty() || unit == "s") scale = 1e9;
    else if (unit == "m" || unit == "min") scale = 60e9;
    else if (unit == "h") scale = 3600e9;
    else throw std::invalid_argument("bad duration unit '" + std::string(unit) + "'");
    const auto ns = static_cast<std::int64_t>(std::llround(value * scale));
    if (ns <= 0) throw std::invalid_argument("duration must be positive");
    return std::chrono::nanoseconds(ns);
}

Fraction parse_fraction(std::string_view text) {
    const auto bad = [&] { return std::invalid_argument("bad alpha '" + std::string(text) + "'"); };
    const auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw bad();
        return v;
    };
    Fraction f;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        f.num = parse_int(text.substr(0, slash));
        f.den = parse_int(text.substr(slash + 1));
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 9) throw bad();
        f.den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) f.den *= 10;
        const std::int64_t whole = dot == 0 ? 0 : parse_int(text.substr(0, dot));
        f.num = whole * f.den + (frac.empty() ? 0 : parse_int(frac));
    } else {
        f.num = parse_int(text);
    }
    if (f.num <= 0 || f.den <= 0) throw bad();
    const std::int64_t g = std::gcd(f.num, f.den);
    f.num /= g;
    f.den /= g;
    return f;
}

namespace {

struct StrategyOptions {
    std::string kind = "sol";
    std::string alpha = "4/3";
    std::size_t population = 100;
    std::optional<std::size_t> generations;
    std::optional<std::uint64_t> max_idle;
    std::optional<std::uint64_t> max_iterations;

    void attach(CLI::App* app) {
        app->add_option("--qmax-strategy", kind, "BVNS shaking amplitude rule: fixed, k or sol")
            ->check(CLI::IsMember({"fixed", "k", "sol"}));
        app->add_option("--alpha", alpha, "BVNS amplitude factor, e.g. 4/3 or 0.5");
        app->add_option("--population", population, "GA population size (even)");
        app->add_option("--generations", generations, "GA generations (default: population / 2)");
        app->add_option("--max-idle", max_idle, "stop after this many non-improving iterations");
        app->add_option("--max-iterations", max_iterations, "stop after this many iterations");
    }

    SolverSettings settings() const {
        SolverSettings s;
        const Fraction a = parse_fraction(alpha);
        const QmaxKind k = kind == "fixed" ? QmaxKind::Fixed
                           : kind == "k"   ? QmaxKind::ProportionalToK
                                           : QmaxKind::ProportionalToSolution;
        s.qmax = QmaxStrategy{k, a.num, a.den};
        s.ga.population_size = population;
        s.ga.generations = generations;
        s.ga.validate();
        s.max_idle_iterations = max_idle;
        s.max_iterations = max_iterations;
        return s;
    }
};

std::size_t worker_default() {
    if (const char* env = std::getenv("KLSF_WORKERS")) {
        std::size_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
    }
    return 1;
}

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int do_generate(std::size_t n, std::size_t labels, double density, std::size_t count, std::uint64_t seed,
                const std::string& out_dir, std::optional<std::size_t> k_override, std::ostream& out) {
    if (!(density > 0.0 && density <= 1.0)) throw UsageError("--density must be in (0, 1]");
    if (n < 2) throw UsageError("--n must be at least 2");
    if (labels < 1) throw UsageError("--labels must be at least 1");
    if (count < 1) throw UsageError("--count must be at least 1");
    if (k_override && (*k_override < 1 || *k_override > labels)) throw UsageError("--k must be in [1, labels]");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());

    std::vector<ManifestEntry> manifest;
    for (std::size_t i = 0; i < count; ++i) {
        const InstanceSpec spec{n, labels, density, seed + i};
        LabeledGraph g = generate_graph(spec);
        const std::size_t k = k_override ? *k_override : determine_k(g);
        const Instance inst{std::move(g), k, GeneratedFrom{spec}};
        std::ostringstream name;
        name << "klsf_n" << n << "_l" << labels << "_s" << spec.seed << ".klsf";
        const fs::path path = fs::path(out_dir) / name.str();
        write_instance_file(inst, path);
        manifest.push_back({path, spec, k});
        out << path.string() << " k=" << k << " m=" << inst.graph.edge_count() << '\n';
    }
    const fs::path manifest_path = fs::path(out_dir) / "manifest.csv";
    std::ofstream mf(manifest_path);
    if (!mf) throw std::runtime_error("cannot write " + manifest_path.string());
    write_manifest(manifest, mf);
    return kOk;
}

void write_solution(const fs::path& path, const LabeledGraph& g, const LabelSubset& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "labels";
    for (Label l : c.members()) out << ' ' << l;
    const SpanningForest forest = extract_forest(g, c);
    out << "\ntrees " << forest.tree_count << "\n";
    for (const Edge& e : forest.edges) out << "f " << e.u << ' ' << e.v << ' ' << e.label << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-labelled spanning forest solvers and benchmark harness", "klsf"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write random instances and a manifest");
    std::size_t gen_n = 0, gen_labels = 0, gen_count = 1;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out = ".";
    std::optional<std::size_t> gen_k;
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--labels", gen_labels, "label count")->required();
    gen->add_option("--density", gen_density, "edge density in (0, 1]");
    gen->add_option("--count", gen_count, "number of instances");
    gen->add_option("--seed", gen_seed, "seed of the first instance; later ones use seed+i");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--k", gen_k, "fixed label budget instead of the automatic one");

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on one instance and print a CSV row");
    std::string solve_path, solve_alg, solve_limit = "60s", solve_solution;
    std::uint64_t solve_seed = 1;
    std::optional<std::size_t> solve_k;
    bool solve_header = false, solve_best_effort = false;
    StrategyOptions solve_opts;
    solve->add_option("instance", solve_path, "instance file (.klsf)")->required();
    solve->add_option("--algorithm", solve_alg, "mvca, exact, pilot, ga, grasp or bvns")->required();
    solve->add_option("--seed", solve_seed, "random seed");
    solve->add_option("--time-limit", solve_limit, "wall-clock limit, e.g. 60s or 500ms");
    solve->add_option("--k", solve_k, "override the instance's label budget");
    solve->add_option("--solution", solve_solution, "write the labels and a spanning forest to this file");
    solve->add_flag("--header", solve_header, "print the CSV header first");
    solve->add_flag("--best-effort", solve_best_effort, "exact: report the incumbent on timeout instead of NF");
    solve_opts.attach(solve);

    // bench
    auto* bench = app.add_subcommand("bench", "run solvers over instance groups and tabulate the results");
    std::vector<std::size_t> bench_n, bench_labels;
    std::vector<double> bench_ratios;
    double bench_density = 0.5;
    std::size_t bench_count = 10, bench_repeats = 1, bench_workers = worker_default();
    std::optional<std::size_t> bench_k;
    std::uint64_t bench_seed = 1;
    std::vector<std::string> bench_algs{"pilot", "ga", "grasp", "bvns"};
    std::optional<std::string> bench_limit, bench_exact_limit, bench_manifest, bench_dir;
    std::string bench_csv = "results.csv", bench_md = "results.md";
    bool bench_quiet = false;
    StrategyOptions bench_opts;
    bench->add_option("--n", bench_n, "vertex counts")->delimiter(',');
    bench->add_option("--labels", bench_labels, "label counts")->delimiter(',');
    bench->add_option("--label-ratios", bench_ratios, "label counts as fractions of n, e.g. 0.25,0.5")
        ->delimiter(',');
    bench->add_option("--density", bench_density, "edge density in (0, 1]");
    bench->add_option("--count", bench_count, "instances per group");
    bench->add_option("--k", bench_k, "fixed label budget (default: automatic per group)");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--algorithms", bench_algs, "solvers to run")->delimiter(',');
    bench->add_option("--time-limit", bench_limit, "per-run limit (default 60s for n <= 200, 600s above)");
    bench->add_option("--exact-time-limit", bench_exact_limit, "limit for the exact method");
    bench->add_option("--repeats", bench_repeats, "runs per (instance, algorithm) cell");
    bench->add_option("--workers", bench_workers, "concurrent runs (default $KLSF_WORKERS or 1)");
    bench->add_option("--manifest", bench_manifest, "use the instances listed in this manifest");
    bench->add_option("--instances-dir", bench_dir, "also write generated instances here");
    bench->add_option("--csv", bench_csv, "raw results output");
    bench->add_option("--md", bench_md, "summary table output");
    bench->add_flag("--quiet", bench_quiet, "no per-run progress on stderr");
    bench_opts.attach(bench);

    // import-official
    auto* imp = app.add_subcommand("import-official", "convert labelled adjacency-matrix files to .klsf");
    std::vector<std::string> imp_files;
    std::string imp_out = ".";
    std::optional<std::size_t> imp_k;
    imp->add_option("files", imp_files, "input files")->required();
    imp->add_option("--out", imp_out, "output directory");
    imp->add_option("--k", imp_k, "label budget (default: automatic)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (gen->parsed()) {
            return do_generate(gen_n, gen_labels, gen_density, gen_count, gen_seed, gen_out, gen_k, out);
        }

        if (solve->parsed()) {
            const auto alg = parse_algorithm(solve_alg);
            if (!alg) throw UsageError("unknown algorithm '" + solve_alg + "'");
            SolverSettings settings;
            std::chrono::nanoseconds limit{};
            try {
                settings = solve_opts.settings();
                limit = parse_duration(solve_limit);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            settings.exact_report_not_found = !solve_best_effort;
            Instance inst = read_instance_file(solve_path);
            if (solve_k) {
                if (*solve_k < 1 || *solve_k > inst.graph.label_count()) throw UsageError("--k out of range");
                inst.k = *solve_k;
            }
            LabelSubset best;
            const RunRow row = solve_once(inst, solve_path, *alg, settings, limit, solve_seed, &best);
            if (solve_header) write_csv_header(out);
            write_csv_row(row, out);
            if (row.status == RunStatus::NotFound) return kNotFound;
            if (!solve_solution.empty()) write_solution(solve_solution, inst.graph, best);
            return kOk;
        }

        if (bench->parsed()) {
            BenchPlan plan;
            try {
                plan.settings = bench_opts.settings();
                if (bench_limit) plan.time_limit = parse_duration(*bench_limit);
                if (bench_exact_limit) plan.exact_time_limit = parse_duration(*bench_exact_limit);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            for (const auto& name : bench_algs) {
                const auto a = parse_algorithm(name);
                if (!a) throw UsageError("unknown algorithm '" + name + "'");
                plan.algorithms.push_back(*a);
            }
            if (!(bench_density > 0.0 && bench_density <= 1.0)) throw UsageError("--density must be in (0, 1]");
            for (std::size_t n : bench_n) {
                std::vector<std::size_t> ls = bench_labels;
                for (double r : bench_ratios) ls.push_back(static_cast<std::size_t>(std::llround(r * double(n))));
                if (ls.empty()) throw UsageError("--labels or --label-ratios required with --n");
                for (std::size_t l : ls) plan.groups.push_back({n, l, bench_density, bench_k, bench_count});
            }
            std::sort(plan.groups.begin(), plan.groups.end(), [](const BenchGroup& a, const BenchGroup& b) {
                return std::pair(a.n, a.l) < std::pair(b.n, b.l);
            });
            if (bench_manifest) {
                std::ifstream mf(*bench_manifest);
                if (!mf) throw std::runtime_error("cannot open " + *bench_manifest);
                const fs::path base = fs::path(*bench_manifest).parent_path();
                for (const auto& entry : read_manifest(mf)) {
                    fs::path p = entry.path;
                    if (p.is_relative() && !fs::exists(p)) p = base / p;
                    auto inst = std::make_shared<Instance>(read_instance_file(p));
                    plan.instances.push_back({p.string(), std::move(inst)});
                }
            }
            plan.seed = bench_seed;
            plan.repeats = bench_repeats;
            plan.workers = bench_workers;
            plan.instance_dir = bench_dir;
            try {
                plan.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const BenchResult result = run_bench(plan, [&](const RunRow& r) {
                if (!bench_quiet) write_csv_row(r, err);
            });
            std::ofstream csv(bench_csv);
            if (!csv) throw std::runtime_error("cannot write " + bench_csv);
            write_results_csv(result.rows, csv);
            std::ofstream md(bench_md);
            if (!md) throw std::runtime_error("cannot write " + bench_md);
            write_markdown_table(result, md);
            write_markdown_table(result, out);
            return kOk;
        }

        if (imp->parsed()) {
            std::error_code ec;
            fs::create_directories(imp_out, ec);
            if (ec) throw std::runtime_error("cannot create " + imp_out + ": " + ec.message());
            std::vector<ManifestEntry> manifest;
            for (const auto& file : imp_files) {
                std::ifstream in(file);
                if (!in) throw std::runtime_error("cannot open " + file);
                LabeledGraph g = import_labelled_matrix(in);
                const std::size_t k = imp_k ? *imp_k : determine_k(g);
                if (k < 1 || k > g.label_count()) throw UsageError("--k out of range for " + file);
                const double pairs = double(g.vertex_count()) * double(g.vertex_count() - 1) / 2.0;
                const InstanceSpec spec{g.vertex_count(), g.label_count(), double(g.edge_count()) / pairs, 0};
                const fs::path dest = fs::path(imp_out) / (fs::path(file).stem().string() + ".klsf");
                write_instance_file(Instance{std::move(g), k, LoadedFrom{file}}, dest);
                manifest.push_back({dest, spec, k});
                out << dest.string() << " k=" << k << '\n';
            }
            std::ofstream mf(fs::path(imp_out) / "manifest.csv");
            write_manifest(manifest, mf);
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const NoValidBudget& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

}  // namespace klsf::cli
