#include "lop/engine.hpp"

#include <chrono>
#include <stdexcept>

#include "lop/local_search.hpp"
#include "lop/replacement.hpp"
#include "lop/rng.hpp"

namespace lop {

std::string to_string(ReplacementMode mode) {
    return mode == ReplacementMode::Bnp ? "bnp" : "elitist";
}

namespace {

void validate(const InstanceMatrix& inst, const EngineConfig& cfg) {
    if (cfg.population_size < 2)
        throw std::invalid_argument("population size must be at least 2");
    if (cfg.budget_mode == BudgetMode::WallClock && !(cfg.budget_seconds > 0.0))
        throw std::invalid_argument("wall-clock budget must be positive");
    if (cfg.budget_mode == BudgetMode::EvaluationCount && cfg.budget_evaluations == 0)
        throw std::invalid_argument("evaluation budget must be positive");
    if (cfg.telemetry_every < 0)
        throw std::invalid_argument("telemetry interval must be non-negative");
    (void)inst;
}

} // namespace

RunTelemetry run(const InstanceMatrix& inst, const EngineConfig& cfg,
                 const GenerationObserver& observer) {
    validate(inst, cfg);
    const int n = inst.n();
    const auto pop_size = static_cast<std::size_t>(cfg.population_size);
    const int sample_every =
        cfg.telemetry_every > 0 ? cfg.telemetry_every : (n <= 300 ? 1 : 5);

    const auto start_time = std::chrono::steady_clock::now();
    RunTelemetry telemetry;

    const auto elapsed = [&]() -> double {
        if (cfg.budget_mode == BudgetMode::EvaluationCount)
            return static_cast<double>(telemetry.evaluations);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
            .count();
    };
    const double total_budget = cfg.budget_mode == BudgetMode::EvaluationCount
                                    ? static_cast<double>(cfg.budget_evaluations)
                                    : cfg.budget_seconds;
    const auto rho = [&] {
        const double r = elapsed() / total_budget;
        return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
    };

    Individual best;
    const auto offer_best = [&](const Individual& ind) {
        if (best.perm.empty() || ind.obj > best.obj) best = ind;
    };

    // Initialization: uniform random permutations, each improved to
    // insert-local optimality before anything else happens.
    std::uint64_t improvement_counter = 0;
    const auto improve = [&](Individual ind) {
        auto ls_rng = substream(cfg.seed, Stream::LocalSearch, improvement_counter++);
        LocalSearchStats stats;
        ind = local_search(inst, std::move(ind), ls_rng, &stats);
        telemetry.evaluations += stats.scans;
        offer_best(ind);
        return ind;
    };

    Population pop;
    pop.reserve(pop_size);
    {
        auto init_rng = substream(cfg.seed, Stream::Init);
        for (std::size_t k = 0; k < pop_size; ++k) {
            Individual ind;
            ind.perm = random_permutation(n, init_rng);
            ind.obj = objective(inst, ind.perm);
            ++telemetry.evaluations;
            pop.push_back(improve(std::move(ind)));
        }
    }

    const double d0 = mean_pairwise_distance(pop);
    telemetry.d0 = d0;
    const DiversitySchedule schedule(d0, total_budget, elapsed);

    telemetry.samples.push_back(
        {rho(), best.obj, d0, schedule.current_threshold(), 0});

    std::uint64_t generation = 0;
    std::uint64_t last_sampled = 0;
    while (elapsed() < total_budget) {
        ++generation;

        // Mating pool: N tournament winners, paired consecutively. An odd
        // N gets one extra winner so the last one is not left unpaired;
        // the surplus offspring is dropped to keep |O| = N.
        auto tournament_rng = substream(cfg.seed, Stream::Tournament, generation);
        const std::size_t pool_size = pop_size % 2 == 0 ? pop_size : pop_size + 1;
        std::vector<std::size_t> pool;
        pool.reserve(pool_size);
        for (std::size_t k = 0; k < pool_size; ++k)
            pool.push_back(binary_tournament(pop, tournament_rng));

        auto crossover_rng = substream(cfg.seed, Stream::Crossover, generation);
        Population offspring;
        offspring.reserve(pool_size);
        for (std::size_t k = 0; k + 1 < pool_size; k += 2) {
            OffspringPair children =
                cfg.crossover == CrossoverOp::CX
                    ? cycle_crossover(pop[pool[k]], pop[pool[k + 1]], crossover_rng)
                    : order_crossover(pop[pool[k]], pop[pool[k + 1]], crossover_rng);
            offspring.push_back(std::move(children.first));
            offspring.push_back(std::move(children.second));
        }
        if (offspring.size() > pop_size) offspring.resize(pop_size);

        for (Individual& child : offspring) {
            child.obj = objective(inst, child.perm);
            ++telemetry.evaluations;
            child = improve(std::move(child));
        }

        // One threshold per generation: resolved here, used for both the
        // replacement and the telemetry it produces.
        const double threshold = cfg.replacement == ReplacementMode::Elitist
                                     ? 0.0
                                     : schedule.current_threshold();
        auto replacement_rng = substream(cfg.seed, Stream::Replacement, generation);
        pop = bnp_select(std::move(pop), std::move(offspring),
                         DiversitySchedule::constant(threshold), replacement_rng);

        telemetry.generations = generation;
        if (generation % static_cast<std::uint64_t>(sample_every) == 0) {
            telemetry.samples.push_back(
                {rho(), best.obj, mean_pairwise_distance(pop), threshold, generation});
            last_sampled = generation;
        }
        if (observer) observer(generation, pop, threshold, best);
    }

    // Endpoint sample, so every telemetry stream covers the full run.
    if (generation > 0 && last_sampled != generation) {
        const double threshold = cfg.replacement == ReplacementMode::Elitist
                                     ? 0.0
                                     : schedule.current_threshold();
        telemetry.samples.push_back(
            {rho(), best.obj, mean_pairwise_distance(pop), threshold, generation});
    }

    telemetry.best = std::move(best);
    return telemetry;
}

} // namespace lop
