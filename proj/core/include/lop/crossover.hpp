#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lop/permutation.hpp"

namespace lop {

enum class CrossoverOp { CX, OB };

std::string to_string(CrossoverOp op);

/// Binary tournament with replacement: two uniform draws, the higher
/// cached objective wins, equal objectives settled by a fair coin.
/// Returns the winner's index into `pop`.
std::size_t binary_tournament(const Population& pop, std::mt19937_64& rng);

struct OffspringPair {
    Individual first;
    Individual second;
};

/// The position cycles of a parent pair: positions where the parents
/// disagree, grouped into the chains closed under "position of this value
/// in the other parent". Cycles are discovered from the lowest unvisited
/// position upward; within a cycle, positions appear in chain order.
std::vector<std::vector<int>> cx_cycles(std::span<const int> p1, std::span<const int> p2);

/// Cycle crossover with explicit per-cycle donor choices (one flag per
/// cycle, in cx_cycles discovery order): where take_from_p1[k] holds, the
/// first offspring copies cycle k from p1 and the second from p2, and vice
/// versa. Positions where the parents agree are copied into both. Offspring
/// are returned unevaluated (obj zeroed).
OffspringPair cycle_crossover_with_choices(const Individual& p1, const Individual& p2,
                                           const std::vector<bool>& take_from_p1);

/// Cycle crossover: a fair coin per cycle, drawn in discovery order.
OffspringPair cycle_crossover(const Individual& p1, const Individual& p2, std::mt19937_64& rng);

/// One order-based offspring: clone `base`, then rewrite the values at
/// `positions` (strictly increasing) in the relative order those values
/// have in `order_donor`. Unselected positions are untouched. Returned
/// unevaluated.
Individual order_crossover_one(const Individual& base, const Individual& order_donor,
                               std::span<const int> positions);

/// Uniformly random k-subset of {0..n-1}, returned strictly increasing.
std::vector<int> sample_positions(int n, int k, std::mt19937_64& rng);

/// Order-based crossover: each offspring clones one parent and reorders a
/// fresh uniform random subset of floor(n/2) positions by the other
/// parent's value order. The first offspring clones p1 (subset drawn
/// first), the second clones p2 (independent subset).
OffspringPair order_crossover(const Individual& p1, const Individual& p2, std::mt19937_64& rng);

} // namespace lop
