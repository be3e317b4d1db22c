#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace lop {

/// One candidate solution: a permutation of {0..n-1} with its cached
/// objective value. `dci` is scratch space owned by the replacement pass
/// (distance to the closest survivor picked so far); it carries no meaning
/// outside of one bnp_select invocation.
struct Individual {
    std::vector<int> perm;
    std::int64_t obj = 0;
    std::int64_t dci = 0;

    int n() const { return static_cast<int>(perm.size()); }
};

using Population = std::vector<Individual>;

/// Sentinel for "distance to an empty set".
constexpr std::int64_t kInfiniteDistance = std::numeric_limits<std::int64_t>::max();

bool is_valid_permutation(std::span<const int> perm);

/// Value -> position lookup table.
std::vector<int> inverse_permutation(std::span<const int> perm);

/// Permutation deviation distance: the sum over all values of the absolute
/// displacement of that value's position between x and y. Symmetric, zero
/// iff x == y, maximum floor(n^2/2) (reached by the reversal).
std::int64_t deviation_distance(std::span<const int> x, std::span<const int> y);

/// Same distance with the inverse of y precomputed; the replacement pass
/// reuses one inverse against many candidates.
std::int64_t deviation_distance_via_inverse(std::span<const int> x,
                                            std::span<const int> y_inverse);

/// Minimum deviation distance from x to any member of `survivors`;
/// kInfiniteDistance when the set is empty, so that nothing is ever
/// penalized against an empty survivor set.
std::int64_t distance_to_closest(const Individual& x, const Population& survivors);

/// Arithmetic mean of the deviation distance over all unordered distinct
/// pairs (self-pairs excluded). Requires at least two members. The exact
/// integer pair sum is divided once, so the only rounding is the final
/// int-to-double division.
double mean_pairwise_distance(const Population& pop);

/// One line of space-separated 0-based values, no trailing newline.
std::string format_permutation(std::span<const int> perm);

/// Parses whitespace-separated integers; does not require the result to be
/// a valid permutation (callers that care run is_valid_permutation and
/// report what is wrong).
std::vector<int> parse_permutation(const std::string& text);

} // namespace lop
