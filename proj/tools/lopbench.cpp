// lopbench: benchmark harness for the MA-EDM linear ordering solver.
// Subcommands: solve (experiment runner), oracle (exhaustive optimum for
// tiny instances), verify (re-check a stored solution).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "lop/engine.hpp"
#include "lop/instance.hpp"
#include "lop/local_search.hpp"
#include "lop/permutation.hpp"

namespace fs = std::filesystem;

namespace {

struct SolveOptions {
    std::vector<std::string> instance_paths;
    std::string instance_dir;
    int reps = 30;
    double budget_seconds = 0.0;
    std::uint64_t budget_evals = 0;
    int pop_size = 200;
    std::string crossover = "cx";
    std::string replacement = "bnp";
    std::uint64_t seed = 0;
    std::string out_dir;
    int jobs = 1;
    int telemetry_every = 0;
    bool overwrite = false;
};

struct LoadedInstance {
    std::string stem;
    lop::InstanceMatrix matrix;
};

struct RunRecord {
    std::string instance;
    std::uint64_t seed = 0;
    std::int64_t best_obj = 0;
    std::vector<int> best_perm;
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;
    double wall_seconds = 0.0;
    std::vector<lop::TelemetrySample> samples;
};

std::string fmt_double(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

lop::InstanceMatrix load_instance(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return lop::parse_instance(in);
}

lop::EngineConfig make_engine_config(const SolveOptions& opt, std::uint64_t seed) {
    lop::EngineConfig cfg;
    cfg.population_size = opt.pop_size;
    cfg.crossover = opt.crossover == "cx" ? lop::CrossoverOp::CX : lop::CrossoverOp::OB;
    if (opt.budget_evals > 0) {
        cfg.budget_mode = lop::BudgetMode::EvaluationCount;
        cfg.budget_evaluations = opt.budget_evals;
    } else {
        cfg.budget_mode = lop::BudgetMode::WallClock;
        cfg.budget_seconds = opt.budget_seconds;
    }
    cfg.seed = seed;
    cfg.telemetry_every = opt.telemetry_every;
    cfg.replacement =
        opt.replacement == "bnp" ? lop::ReplacementMode::Bnp : lop::ReplacementMode::Elitist;
    return cfg;
}

fs::path solution_path(const fs::path& out_dir, const RunRecord& rec) {
    return out_dir / "solutions" / (rec.instance + "_" + std::to_string(rec.seed) + ".sol");
}

fs::path telemetry_path(const fs::path& out_dir, const RunRecord& rec) {
    return out_dir / "telemetry" / (rec.instance + "_" + std::to_string(rec.seed) + ".csv");
}

void write_telemetry(const fs::path& path, const RunRecord& rec) {
    std::ofstream out(path);
    out << "rho,best_obj,mean_dist,threshold,generation\n";
    for (const auto& s : rec.samples) {
        out << fmt_double(s.rho, 9) << ',' << s.best_obj << ',' << fmt_double(s.mean_distance, 6)
            << ',' << fmt_double(s.threshold, 6) << ',' << s.generation << '\n';
    }
}

double median_of(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return static_cast<double>(values[n / 2]);
    return (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

// Sample standard deviation; 0 for a single run.
double stddev_of(const std::vector<std::int64_t>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (const auto v : values) {
        const double d = static_cast<double>(v) - mean;
        acc += d * d;
    }
    return std::sqrt(acc / (static_cast<double>(values.size()) - 1.0));
}

int cmd_solve(const SolveOptions& opt) {
    // Expand the instance list; directory entries are taken sorted so the
    // run order is stable.
    std::vector<fs::path> paths;
    for (const auto& p : opt.instance_paths) paths.emplace_back(p);
    if (!opt.instance_dir.empty()) {
        if (!fs::is_directory(opt.instance_dir)) {
            std::cerr << "error: --instance-dir '" << opt.instance_dir
                      << "' is not a directory\n";
            return 1;
        }
        std::vector<fs::path> found;
        for (const auto& entry : fs::directory_iterator(opt.instance_dir))
            if (entry.is_regular_file()) found.push_back(entry.path());
        std::sort(found.begin(), found.end());
        paths.insert(paths.end(), found.begin(), found.end());
    }
    if (paths.empty()) {
        std::cerr << "error: no instances given (use --instance or --instance-dir)\n";
        return 1;
    }

    bool had_failure = false;
    std::vector<LoadedInstance> instances;
    for (const auto& path : paths) {
        try {
            auto matrix = load_instance(path);
            instances.push_back({path.stem().string(), std::move(matrix)});
        } catch (const std::exception& e) {
            std::cerr << "error: " << path.string() << ": " << e.what() << '\n';
            had_failure = true;
        }
    }
    if (instances.empty()) {
        std::cerr << "error: no instance could be loaded\n";
        return 1;
    }
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t j = i + 1; j < instances.size(); ++j)
            if (instances[i].stem == instances[j].stem) {
                std::cerr << "error: duplicate instance stem '" << instances[i].stem
                          << "'; result files would collide\n";
                return 1;
            }

    // All runs, instance-major; repetition k uses seed base + k.
    struct Job {
        std::size_t instance_index;
        std::uint64_t seed;
    };
    std::vector<Job> jobs_list;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (int k = 0; k < opt.reps; ++k)
            jobs_list.push_back({i, opt.seed + static_cast<std::uint64_t>(k)});

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir / "solutions");
    fs::create_directories(out_dir / "telemetry");

    // Refuse to clobber earlier results unless asked to.
    if (!opt.overwrite) {
        std::vector<fs::path> planned = {out_dir / "results.csv", out_dir / "aggregates.csv",
                                         out_dir / "summary.txt"};
        for (const auto& job : jobs_list) {
            RunRecord probe;
            probe.instance = instances[job.instance_index].stem;
            probe.seed = job.seed;
            planned.push_back(solution_path(out_dir, probe));
            planned.push_back(telemetry_path(out_dir, probe));
        }
        for (const auto& p : planned)
            if (fs::exists(p)) {
                std::cerr << "error: '" << p.string()
                          << "' already exists; pass --overwrite to replace results\n";
                return 1;
            }
    }

    std::vector<RunRecord> records(jobs_list.size());
    std::atomic<std::size_t> next_job{0};
    std::mutex log_mutex;
    const int worker_count = std::max(1, opt.jobs);

    auto worker = [&] {
        while (true) {
            const std::size_t idx = next_job.fetch_add(1);
            if (idx >= jobs_list.size()) return;
            const Job& job = jobs_list[idx];
            const LoadedInstance& li = instances[job.instance_index];

            const auto start = std::chrono::steady_clock::now();
            lop::RunTelemetry result = lop::run(li.matrix, make_engine_config(opt, job.seed));
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            RunRecord rec;
            rec.instance = li.stem;
            rec.seed = job.seed;
            rec.best_obj = result.best.obj;
            rec.best_perm = result.best.perm;
            rec.generations = result.generations;
            rec.evaluations = result.evaluations;
            rec.wall_seconds = wall;
            rec.samples = std::move(result.samples);
            records[idx] = std::move(rec);

            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "run " << li.stem << " seed=" << job.seed
                      << " best=" << records[idx].best_obj << " gens=" << records[idx].generations
                      << " wall=" << fmt_double(wall, 2) << "s\n";
        }
    };
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> team;
        team.reserve(static_cast<std::size_t>(worker_count));
        for (int t = 0; t < worker_count; ++t) team.emplace_back(worker);
        for (auto& th : team) th.join();
    }

    // Aggregation is order-independent: records sorted by (instance, seed)
    // before anything is derived or written.
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return a.instance != b.instance ? a.instance < b.instance : a.seed < b.seed;
    });

    {
        std::ofstream out(out_dir / "results.csv");
        out << "instance,seed,best_obj,generations,evaluations,wall_seconds\n";
        for (const auto& rec : records)
            out << rec.instance << ',' << rec.seed << ',' << rec.best_obj << ','
                << rec.generations << ',' << rec.evaluations << ','
                << fmt_double(rec.wall_seconds, 3) << '\n';
    }
    for (const auto& rec : records) {
        {
            std::ofstream out(solution_path(out_dir, rec));
            out << lop::format_permutation(rec.best_perm) << '\n';
        }
        write_telemetry(telemetry_path(out_dir, rec), rec);
    }

    struct Aggregate {
        std::string instance;
        std::size_t runs;
        std::int64_t best;
        double mean, median, stddev;
    };
    std::vector<Aggregate> aggregates;
    for (std::size_t i = 0; i < records.size();) {
        std::size_t j = i;
        std::vector<std::int64_t> objs;
        while (j < records.size() && records[j].instance == records[i].instance)
            objs.push_back(records[j++].best_obj);
        double mean = 0.0;
        for (const auto v : objs) mean += static_cast<double>(v);
        mean /= static_cast<double>(objs.size());
        aggregates.push_back({records[i].instance, objs.size(),
                              *std::max_element(objs.begin(), objs.end()), mean,
                              median_of(objs), stddev_of(objs, mean)});
        i = j;
    }
    {
        std::ofstream out(out_dir / "aggregates.csv");
        out << "instance,runs,best_obj,mean_obj,median_obj,stddev_obj\n";
        for (const auto& a : aggregates)
            out << a.instance << ',' << a.runs << ',' << a.best << ',' << fmt_double(a.mean, 6)
                << ',' << fmt_double(a.median, 6) << ',' << fmt_double(a.stddev, 6) << '\n';
    }

    std::ostringstream table;
    table << "instance                        runs        best        mean      median      stddev\n";
    for (const auto& a : aggregates) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-30s %5zu %11lld %11.2f %11.2f %11.2f\n",
                      a.instance.c_str(), a.runs, static_cast<long long>(a.best), a.mean,
                      a.median, a.stddev);
        table << line;
    }
    std::cout << table.str();
    {
        std::ofstream out(out_dir / "summary.txt");
        out << table.str();
    }

    return had_failure ? 1 : 0;
}

int cmd_oracle(const std::string& instance_path) {
    try {
        const auto inst = load_instance(instance_path);
        const lop::Individual best = lop::brute_force_optimum(inst);
        std::cout << best.obj << ", (" << lop::format_permutation(best.perm) << ")\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path_arg) {
    try {
        const auto inst = load_instance(instance_path);

        std::ifstream sol_in(solution_path_arg);
        if (!sol_in) throw std::runtime_error("cannot open '" + solution_path_arg + "'");
        std::stringstream buffer;
        buffer << sol_in.rdbuf();
        const std::vector<int> perm = lop::parse_permutation(buffer.str());

        bool valid = true;
        if (static_cast<int>(perm.size()) != inst.n()) {
            std::cout << "invalid: expected " << inst.n() << " values, found " << perm.size()
                      << '\n';
            valid = false;
        } else {
            std::vector<int> count(perm.size(), 0);
            for (const int v : perm) {
                if (v < 0 || v >= inst.n()) {
                    std::cout << "invalid: value " << v << " out of range [0, " << inst.n() - 1
                              << "]\n";
                    valid = false;
                } else if (++count[static_cast<std::size_t>(v)] == 2) {
                    std::cout << "invalid: value " << v << " repeated\n";
                    valid = false;
                }
            }
            if (!valid)
                for (std::size_t v = 0; v < count.size(); ++v)
                    if (count[v] == 0) std::cout << "invalid: value " << v << " missing\n";
        }
        if (!valid) {
            std::cout << "permutation: invalid\n";
            return 1;
        }

        std::cout << "objective: " << lop::objective(inst, perm) << '\n';
        std::cout << "permutation: valid\n";
        std::cout << "insert-local optimal: "
                  << (lop::is_insert_local_optimum(inst, perm) ? "yes" : "no") << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for the MA-EDM linear ordering solver"};
    app.require_subcommand(1);

    SolveOptions opt;
    auto* solve = app.add_subcommand("solve", "Run experiments over instances");
    solve->add_option("--instance", opt.instance_paths, "Instance file (repeatable)");
    solve->add_option("--instance-dir", opt.instance_dir, "Directory of instance files");
    solve->add_option("--reps", opt.reps, "Repetitions per instance")
        ->default_val(30)
        ->check(CLI::PositiveNumber);
    auto* budget_s =
        solve->add_option("--budget-seconds", opt.budget_seconds, "Wall-clock budget per run")
            ->check(CLI::PositiveNumber);
    auto* budget_e = solve
                         ->add_option("--budget-evals", opt.budget_evals,
                                      "Evaluation budget per run (deterministic mode)")
                         ->check(CLI::PositiveNumber);
    budget_s->excludes(budget_e);
    budget_e->excludes(budget_s);
    solve->add_option("--pop-size", opt.pop_size, "Population size N")
        ->default_val(200)
        ->check(CLI::Range(2, 1000000));
    solve->add_option("--crossover", opt.crossover, "Crossover operator")
        ->default_val("cx")
        ->check(CLI::IsMember({"cx", "ob"}));
    solve->add_option("--replacement", opt.replacement, "Survivor selection")
        ->default_val("bnp")
        ->check(CLI::IsMember({"bnp", "elitist"}));
    solve->add_option("--seed", opt.seed, "Base seed; repetition k uses seed base+k")
        ->default_val(0);
    solve->add_option("--out-dir", opt.out_dir, "Output directory")->required();
    solve->add_option("--jobs", opt.jobs, "Concurrent runs")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    solve->add_option("--telemetry-every", opt.telemetry_every,
                      "Generations between telemetry samples (0 = auto)")
        ->default_val(0)
        ->check(CLI::NonNegativeNumber);
    solve->add_flag("--overwrite", opt.overwrite, "Replace existing result files");

    std::string oracle_instance;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance (n <= 10)");
    oracle->add_option("instance", oracle_instance, "Instance file")->required();

    std::string verify_instance, verify_solution;
    auto* verify = app.add_subcommand("verify", "Re-check a stored solution");
    verify->add_option("instance", verify_instance, "Instance file")->required();
    verify->add_option("solution", verify_solution, "Solution file")->required();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        if (opt.budget_seconds <= 0.0 && opt.budget_evals == 0) {
            std::cerr << "error: one of --budget-seconds or --budget-evals is required\n";
            return 1;
        }
        return cmd_solve(opt);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_instance);
    if (verify->parsed()) return cmd_verify(verify_instance, verify_solution);
    return 1;
}
