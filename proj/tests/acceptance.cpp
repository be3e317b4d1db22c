// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Expects the lopbench binary path as argv[1] (used by the
// determinism criterion). Build in Release; the performance criterion
// assumes optimized code.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lop/crossover.hpp"
#include "lop/engine.hpp"
#include "lop/instance.hpp"
#include "lop/local_search.hpp"
#include "lop/replacement.hpp"
#include "lop/rng.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace lop;
using namespace lop::test;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_binary;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: engine matches the exhaustive optimum on tiny instances ---

bool oracle_optimality(std::string& detail) {
    std::mt19937_64 gen(1001);
    int matched = 0;
    std::vector<std::uint64_t> generations;
    for (int t = 0; t < 100; ++t) {
        const int n = 7 + t % 3;
        const auto inst = random_instance(n, gen, 0, 99);
        const auto optimum = brute_force_optimum(inst);

        EngineConfig cfg;
        cfg.population_size = 50;
        cfg.budget_mode = BudgetMode::EvaluationCount;
        cfg.budget_evaluations = 100000; // lands near 200 generations at N=50
        cfg.seed = static_cast<std::uint64_t>(t);
        const auto result = run(inst, cfg);
        generations.push_back(result.generations);
        if (result.best.obj == optimum.obj) ++matched;
    }
    std::sort(generations.begin(), generations.end());
    detail = std::to_string(matched) + "/100 optima matched (median generations " +
             std::to_string(generations[50]) + ")";
    return matched >= 99;
}

// --- criterion 2: local search output survives the exhaustive insert scan ---

bool local_optimality_certificate(std::string& detail) {
    std::mt19937_64 gen(1002);
    int certified = 0;
    const int cases = 1000;
    for (int t = 0; t < cases; ++t) {
        const int n = 2 + static_cast<int>(uniform_index(gen, 59));
        const auto inst = random_instance(n, gen, 0, 99);
        Individual start;
        start.perm = random_permutation(n, gen);
        start.obj = objective(inst, start.perm);
        std::mt19937_64 search_rng(gen());
        const auto out = local_search(inst, start, search_rng);
        if (out.obj == objective(inst, out.perm) && brute_is_insert_local_optimum(inst, out.perm))
            ++certified;
    }
    detail = std::to_string(certified) + "/" + std::to_string(cases) + " certified";
    return certified == cases;
}

// --- criterion 3: scan deltas equal full re-evaluation differences ---

bool delta_exactness(std::string& detail) {
    std::mt19937_64 gen(1003);
    int exact = 0;
    const int cases = 10000;
    for (int t = 0; t < cases; ++t) {
        const int n = 2 + static_cast<int>(uniform_index(gen, 49));
        const auto inst = random_instance(n, gen, -50, 99);
        const auto perm = random_permutation(n, gen);
        const int from = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(n)));
        const auto move = best_insertion(inst, perm, from);
        const std::int64_t reevaluated =
            objective(inst, moved_permutation(perm, move.from, move.to)) -
            objective(inst, perm);
        if (move.delta == reevaluated && move.delta == brute_best_insertion_delta(inst, perm, from))
            ++exact;
    }
    detail = std::to_string(exact) + "/" + std::to_string(cases) + " exact";
    return exact == cases;
}

// --- criterion 4: crossover laws over 1e5 random pairs per operator ---

bool crossover_laws(std::string& detail) {
    std::mt19937_64 gen(1004);
    const int cases = 100000;
    int cx_ok = 0, ob_ok = 0;

    for (int t = 0; t < cases; ++t) {
        const int n = 50;
        const Individual p1{random_permutation(n, gen), 0, 0};
        const Individual p2{random_permutation(n, gen), 0, 0};
        const auto children = cycle_crossover(p1, p2, gen);
        bool ok = is_valid_permutation(children.first.perm) &&
                  is_valid_permutation(children.second.perm);
        for (int i = 0; ok && i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            ok = (children.first.perm[idx] == p1.perm[idx] ||
                  children.first.perm[idx] == p2.perm[idx]) &&
                 (children.second.perm[idx] == p1.perm[idx] ||
                  children.second.perm[idx] == p2.perm[idx]);
        }
        if (ok) ++cx_ok;
    }

    for (int t = 0; t < cases; ++t) {
        const int n = 51;
        const Individual p1{random_permutation(n, gen), 0, 0};
        const Individual p2{random_permutation(n, gen), 0, 0};
        const auto positions = sample_positions(n, n / 2, gen);
        const auto child = order_crossover_one(p1, p2, positions);

        bool ok = is_valid_permutation(child.perm) && positions.size() == 25;
        const auto donor_inv = inverse_permutation(p2.perm);
        int prev = -1;
        std::vector<bool> selected(static_cast<std::size_t>(n), false);
        for (const int p : positions) selected[static_cast<std::size_t>(p)] = true;
        for (int i = 0; ok && i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (selected[idx]) {
                const int rank = donor_inv[static_cast<std::size_t>(child.perm[idx])];
                ok = rank > prev; // selected values in donor order
                prev = rank;
            } else {
                ok = child.perm[idx] == p1.perm[idx]; // unselected untouched
            }
        }
        if (ok) ++ob_ok;
    }

    detail = "cx " + std::to_string(cx_ok) + "/" + std::to_string(cases) + ", ob " +
             std::to_string(ob_ok) + "/" + std::to_string(cases);
    return cx_ok == cases && ob_ok == cases;
}

// --- criterion 5: elitist limit + incremental/literal equivalence ---

bool bnp_equivalences(std::string& detail) {
    std::mt19937_64 gen(1005);
    int truncation_ok = 0, trace_ok = 0;
    const int cases = 200;

    for (int t = 0; t < cases; ++t) {
        const int n = 2 + static_cast<int>(uniform_index(gen, 10));
        const int N = 1 + static_cast<int>(uniform_index(gen, 10));
        Population pop, off;
        for (int k = 0; k < N; ++k) {
            pop.push_back({random_permutation(n, gen),
                           static_cast<std::int64_t>(uniform_index(gen, 25)), 0});
            off.push_back({random_permutation(n, gen),
                           static_cast<std::int64_t>(uniform_index(gen, 25)), 0});
        }

        std::vector<std::int64_t> objs;
        for (const auto& i : pop) objs.push_back(i.obj);
        for (const auto& i : off) objs.push_back(i.obj);
        std::sort(objs.begin(), objs.end(), std::greater<>());
        const std::multiset<std::int64_t> expected(objs.begin(),
                                                   objs.begin() + N);

        const auto survivors = bnp_select(pop, off, DiversitySchedule::constant(0.0), gen);
        std::multiset<std::int64_t> got;
        for (const auto& s : survivors) got.insert(s.obj);
        if (got == expected) ++truncation_ok;

        const double threshold =
            static_cast<double>(uniform_index(gen, static_cast<std::uint64_t>(n * n + 1)));
        const std::uint64_t seed = gen();
        std::mt19937_64 r1(seed), r2(seed);
        BnpTrace t1, t2;
        const auto s1 = bnp_select(pop, off, DiversitySchedule::constant(threshold), r1, &t1);
        const auto s2 =
            bnp_select_literal(pop, off, DiversitySchedule::constant(threshold), r2, &t2);
        bool same = s1.size() == s2.size();
        for (std::size_t k = 0; same && k < s1.size(); ++k)
            same = s1[k].perm == s2[k].perm && s1[k].obj == s2[k].obj &&
                   t1.picks[k].candidate == t2.picks[k].candidate &&
                   t1.picks[k].from_eligible == t2.picks[k].from_eligible &&
                   t1.picks[k].dci == t2.picks[k].dci;
        if (same) ++trace_ok;
    }
    detail = "elitist limit " + std::to_string(truncation_ok) + "/" + std::to_string(cases) +
             ", incremental==literal " + std::to_string(trace_ok) + "/" + std::to_string(cases);
    return truncation_ok == cases && trace_ok == cases;
}

// --- criterion 6: threshold schedule is exact ---

bool threshold_schedule(std::string& detail) {
    int ok = 0, total = 0;
    for (const double d0 : {120.0, 37.5, 1234.25}) {
        for (const double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double elapsed = rho;
            const DiversitySchedule sched(d0, 1.0, [&] { return elapsed; });
            const double expected = d0 * (1.0 - rho);
            const double got = sched.current_threshold();
            const double err = expected == 0.0 ? std::abs(got)
                                               : std::abs(got - expected) / expected;
            ++total;
            if (err <= 1e-12) ++ok;
        }
    }
    detail = std::to_string(ok) + "/" + std::to_string(total) + " points within 1e-12 relative";
    return ok == total;
}

// --- criteria 7 and 8 share the n=150 configuration ---

constexpr int kBigN = 150;
constexpr std::uint64_t kBigBudget = 40000000; // about 300 generations at N=200

EngineConfig big_config(std::uint64_t seed, ReplacementMode mode) {
    EngineConfig cfg;
    cfg.population_size = 200;
    cfg.budget_mode = BudgetMode::EvaluationCount;
    cfg.budget_evaluations = kBigBudget;
    cfg.seed = seed;
    cfg.replacement = mode;
    return cfg;
}

InstanceMatrix big_instance() {
    std::mt19937_64 gen(1007);
    return random_instance(kBigN, gen, 0, 99);
}

double sample_nearest(const std::vector<TelemetrySample>& samples, double rho) {
    double best_gap = std::numeric_limits<double>::max();
    double value = 0.0;
    for (const auto& s : samples) {
        const double gap = std::abs(s.rho - rho);
        if (gap < best_gap) {
            best_gap = gap;
            value = s.mean_distance;
        }
    }
    return value;
}

bool diversity_trajectory(std::string& detail) {
    const auto inst = big_instance();
    std::ostringstream report;
    bool ok = true;
    std::uint64_t gens = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto result = run(inst, big_config(seed, ReplacementMode::Bnp));
        gens = result.generations;
        std::vector<double> dist, linearity;
        for (const auto& s : result.samples) {
            dist.push_back(s.mean_distance);
            linearity.push_back(1.0 - s.rho);
        }
        const double r = pearson(dist, linearity);
        const double early = sample_nearest(result.samples, 0.1);
        const double late = sample_nearest(result.samples, 0.9);
        const double ratio = late / early;
        if (!(r >= 0.9) || !(ratio < 0.25)) ok = false;
        report << (seed ? ", " : "") << "seed " << seed << ": r=" << std::round(r * 1000) / 1000
               << " late/early=" << std::round(ratio * 1000) / 1000;
    }
    detail = report.str() + " (" + std::to_string(gens) + " generations)";
    return ok;
}

bool ablation_direction(std::string& detail) {
    const auto inst = big_instance();
    const auto median_final = [&](ReplacementMode mode) {
        std::vector<std::int64_t> finals;
        for (std::uint64_t seed = 100; seed < 110; ++seed)
            finals.push_back(run(inst, big_config(seed, mode)).best.obj);
        std::sort(finals.begin(), finals.end());
        return (static_cast<double>(finals[4]) + static_cast<double>(finals[5])) / 2.0;
    };
    const double bnp = median_final(ReplacementMode::Bnp);
    const double elitist = median_final(ReplacementMode::Elitist);
    std::ostringstream report;
    report << "median best: bnp " << std::fixed << bnp << ", elitist " << elitist;
    detail = report.str();
    return bnp >= elitist;
}

// --- criterion 9: local search speed contract at n = 1000 ---

bool performance_contract(std::string& detail) {
    std::mt19937_64 gen(1009);
    const auto inst = random_instance(1000, gen, 0, 99);
    std::vector<double> times;
    for (int t = 0; t < 10; ++t) {
        Individual start;
        start.perm = random_permutation(1000, gen);
        start.obj = objective(inst, start.perm);
        std::mt19937_64 rng(static_cast<std::uint64_t>(t));
        const auto begin = Clock::now();
        const auto out = local_search(inst, std::move(start), rng);
        times.push_back(seconds_since(begin));
        if (!is_insert_local_optimum(inst, out.perm)) {
            detail = "output not locally optimal";
            return false;
        }
    }
    std::sort(times.begin(), times.end());
    const double median = (times[4] + times[5]) / 2.0;
    std::ostringstream report;
    report << "median " << std::fixed << median << " s over 10 trials";
    detail = report.str();
    return median < 1.0;
}

// --- criterion 10: byte-identical CLI runs across repeats and --jobs ---

int shell(const std::string& args) {
    const std::string cmd = "\"" + g_binary + "\" " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string results_without_wall(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto cut = line.rfind(',');
        out << line.substr(0, cut) << '\n';
    }
    return out.str();
}

bool determinism(std::string& detail) {
    const fs::path dir = fs::temp_directory_path() /
                         ("lop_acceptance_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::remove_all(dir);
    fs::create_directories(dir);

    {
        std::mt19937_64 gen(1010);
        const auto inst = random_instance(30, gen, 0, 99, "det-inst");
        std::ofstream out(dir / "det-inst.lolib");
        write_instance(out, inst);
    }
    const std::string base = "solve --instance " + (dir / "det-inst.lolib").string() +
                             " --reps 2 --budget-evals 300000 --pop-size 20 --seed 42 ";
    const fs::path a = dir / "a", b = dir / "b", c = dir / "c";
    if (shell(base + "--jobs 1 --out-dir " + a.string()) != 0 ||
        shell(base + "--jobs 1 --out-dir " + b.string()) != 0 ||
        shell(base + "--jobs 8 --out-dir " + c.string()) != 0) {
        detail = "solve invocation failed";
        return false;
    }

    bool ok = results_without_wall(a / "results.csv") == results_without_wall(b / "results.csv");
    ok = ok &&
         results_without_wall(a / "results.csv") == results_without_wall(c / "results.csv");
    ok = ok && slurp(a / "aggregates.csv") == slurp(b / "aggregates.csv");
    ok = ok && slurp(a / "aggregates.csv") == slurp(c / "aggregates.csv");
    for (const char* seed : {"42", "43"}) {
        const std::string tel = std::string("telemetry/det-inst_") + seed + ".csv";
        const std::string sol = std::string("solutions/det-inst_") + seed + ".sol";
        ok = ok && slurp(a / tel) == slurp(b / tel) && slurp(a / tel) == slurp(c / tel);
        ok = ok && slurp(a / sol) == slurp(b / sol) && slurp(a / sol) == slurp(c / sol);
    }
    detail = ok ? "repeat and --jobs 1 vs 8 byte-identical (wall clock column excluded)"
                : "outputs differ";
    if (ok) fs::remove_all(dir);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-lopbench>\n";
        return 2;
    }
    g_binary = argv[1];

    struct Criterion {
        int id;
        const char* title;
        std::function<bool(std::string&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle optimality on 100 tiny instances", oracle_optimality},
        {2, "local-optimality certificate on 1000 searches", local_optimality_certificate},
        {3, "delta-evaluation exactness on 10^4 moves", delta_exactness},
        {4, "crossover law suite on 10^5 pairs per operator", crossover_laws},
        {5, "BNP elitist limit and incremental/literal equivalence", bnp_equivalences},
        {6, "threshold schedule exactness", threshold_schedule},
        {7, "diversity trajectory tracks the linear schedule", diversity_trajectory},
        {8, "BNP vs elitist ablation direction", ablation_direction},
        {9, "local search under one second at n=1000", performance_contract},
        {10, "deterministic results across runs and --jobs", determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        std::string detail;
        bool passed = false;
        try {
            passed = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!passed) ++failures;
        std::ostringstream line;
        line << (passed ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title;
        if (!detail.empty()) line << " — " << detail;
        line << " (" << std::fixed << seconds_since(start) << " s)";
        std::cout << line.str() << std::endl;
    }

    if (failures == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) failed" << std::endl;
    return 1;
}
