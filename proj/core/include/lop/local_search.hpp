#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "lop/instance.hpp"
#include "lop/permutation.hpp"

namespace lop {

/// Relocation of one element: remove perm[from], reinsert at `to`, shifting
/// everything in between. `delta` is the exact objective change.
struct InsertMove {
    int from = 0;
    int to = 0;
    std::int64_t delta = 0;
};

/// Best insertion of the element currently at `from`, found in O(n): one
/// scan to the left accumulating m[v][w] - m[w][v] per passed element w,
/// one scan to the right accumulating the opposite sign. The stay-put move
/// (to == from, delta 0) is the baseline; a real target must strictly beat
/// the best seen so far, so equal-delta ties resolve to the earliest
/// candidate in scan order (left scan first, then right).
InsertMove best_insertion(const InstanceMatrix& inst, std::span<const int> perm, int from);

/// Applies the move in place and keeps the value->position inverse in sync.
/// Cost is proportional to the shifted span.
void apply_insertion(std::vector<int>& perm, std::vector<int>& inverse, int from, int to);

struct LocalSearchStats {
    std::uint64_t sweeps = 0;
    std::uint64_t scans = 0;    // best_insertion evaluations
    std::uint64_t accepted = 0; // applied moves
};

/// First-improvement stochastic hill climber over the insert neighborhood.
/// Every sweep draws a fresh uniform random order of the n values; each
/// value's best insertion is computed and applied whenever its delta is
/// strictly positive (the cached objective is updated from the delta, never
/// recomputed). A sweep that accepts nothing certifies insert-local
/// optimality and ends the search. The accepted order within a sweep is
/// kept after a move; only the next sweep reshuffles.
///
/// `start` must carry a valid cached objective.
Individual local_search(const InstanceMatrix& inst, Individual start, std::mt19937_64& rng,
                        LocalSearchStats* stats = nullptr);

/// True iff no single-element best insertion strictly improves the
/// objective.
bool is_insert_local_optimum(const InstanceMatrix& inst, std::span<const int> perm);

} // namespace lop
