#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lop/crossover.hpp"
#include "lop/instance.hpp"
#include "lop/permutation.hpp"

namespace lop {

enum class BudgetMode { WallClock, EvaluationCount };
enum class ReplacementMode { Bnp, Elitist };

std::string to_string(ReplacementMode mode);

struct EngineConfig {
    int population_size = 200;
    CrossoverOp crossover = CrossoverOp::CX;

    /// WallClock runs against budget_seconds; EvaluationCount runs against
    /// budget_evaluations and is bit-reproducible for a fixed seed.
    BudgetMode budget_mode = BudgetMode::WallClock;
    double budget_seconds = 0.0;
    std::uint64_t budget_evaluations = 0;

    std::uint64_t seed = 0;

    /// Generations between telemetry samples; 0 picks the default of every
    /// generation for n <= 300 and every 5 generations above.
    int telemetry_every = 0;

    /// Elitist swaps the survivor selection for plain truncation (the
    /// zero-threshold limit of BNP, same code path); everything else is
    /// unchanged.
    ReplacementMode replacement = ReplacementMode::Bnp;
};

struct TelemetrySample {
    double rho = 0.0;           // elapsed fraction of the budget, clamped to [0,1]
    std::int64_t best_obj = 0;  // best objective evaluated so far
    double mean_distance = 0.0; // mean pairwise deviation distance of the population
    double threshold = 0.0;     // replacement threshold used this generation
    std::uint64_t generation = 0;
};

struct RunTelemetry {
    std::vector<TelemetrySample> samples;
    Individual best; // best permutation ever evaluated, not just the final population's
    std::uint64_t generations = 0;
    /// Objective computations in incremental-equivalent units: one per full
    /// evaluation plus one per best-insertion scan. This is also the
    /// elapsed quantity in EvaluationCount budget mode.
    std::uint64_t evaluations = 0;
    double d0 = 0.0; // initial diversity threshold (mean distance after initial improvement)
};

/// Called after each generation's replacement with the new population, the
/// threshold that was in force, and the global best so far.
using GenerationObserver = std::function<void(
    std::uint64_t generation, const Population& pop, double threshold, const Individual& best)>;

/// One full run: N uniform random permutations, each improved to
/// insert-local optimality; d0 set to the improved population's mean
/// pairwise distance; then generations of N binary tournaments, pairwise
/// crossover into N offspring, offspring improvement, and BNP replacement,
/// until the budget is spent. The budget is checked at generation
/// boundaries, so the final generation may overrun it (its threshold
/// clamps at 0). All randomness derives from cfg.seed via the documented
/// substream scheme (rng.hpp).
RunTelemetry run(const InstanceMatrix& inst, const EngineConfig& cfg,
                 const GenerationObserver& observer = {});

} // namespace lop
