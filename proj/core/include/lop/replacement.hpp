#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lop/permutation.hpp"

namespace lop {

/// The minimum-distance threshold over the course of one run:
/// D(t) = d0 * (1 - t/total), clamped to 0 once the budget is exhausted, so
/// the demanded separation shrinks linearly from d0 to zero. The elapsed
/// quantity is an injected query (wall seconds in production, an evaluation
/// counter in deterministic runs) in the same unit as total_budget.
class DiversitySchedule {
  public:
    DiversitySchedule(double d0, double total_budget, std::function<double()> elapsed);

    /// A schedule frozen at threshold d, for tests and for the elitist
    /// limit (d = 0).
    static DiversitySchedule constant(double d);

    double current_threshold() const;
    double initial_threshold() const { return d0_; }
    double total_budget() const { return total_; }

  private:
    double d0_;
    double total_;
    std::function<double()> elapsed_;
};

/// Why each survivor was picked; filled when a trace sink is passed to
/// bnp_select. `candidate` indexes the concatenated pop-then-offspring
/// candidate order; `dci` is the distance to the closest earlier survivor
/// at pick time (kInfiniteDistance for the first pick).
struct BnpPick {
    std::size_t candidate = 0;
    bool from_eligible = true;
    std::int64_t dci = 0;
};

struct BnpTrace {
    double threshold = 0.0;
    std::vector<BnpPick> picks;
};

/// Best Non-Penalized survivor selection. Candidates are the multiset
/// pop + offspring (duplicates stay distinct); pop.size() survivors are
/// returned in pick order. Each round, eligible candidates whose distance
/// to the closest survivor drops strictly below the threshold are
/// penalized for the rest of the invocation; the best eligible candidate
/// by objective is selected (ties uniform at random), and when nothing is
/// eligible, the penalized candidate farthest from the survivors is taken
/// instead (ties uniform at random). The first pick is therefore always a
/// maximum-objective candidate. The threshold is queried from the schedule
/// exactly once per invocation.
///
/// Distances to the survivor set are maintained incrementally (each
/// candidate's dci is the running minimum against survivors as they are
/// picked), which selects the same individuals as the round-by-round
/// rescan; bnp_select_literal below keeps the rescan form for
/// verification. At a zero threshold no candidate can be penalized, so the
/// distance bookkeeping is skipped entirely (unless a trace is requested)
/// and the selection degenerates to elitist truncation.
Population bnp_select(Population pop, Population offspring, const DiversitySchedule& sched,
                      std::mt19937_64& rng, BnpTrace* trace = nullptr);

/// Round-by-round rescan form: recomputes every eligible candidate's
/// distance to the full survivor set each round, and again for the
/// penalized set when the fallback triggers. O(N^3 * n); kept for
/// equivalence checks against the incremental form, with which it shares
/// the tie-break draws.
Population bnp_select_literal(Population pop, Population offspring,
                              const DiversitySchedule& sched, std::mt19937_64& rng,
                              BnpTrace* trace = nullptr);

} // namespace lop
