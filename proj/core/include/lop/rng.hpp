#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace lop {

/// splitmix64 finalizer; spreads seed material over the full 64-bit range.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// The random substreams a run derives from its root seed. Each component
/// draws from its own generator, so changing how one component consumes
/// randomness (or improving offspring in parallel) cannot shift the draws
/// seen by any other component.
enum class Stream : std::uint64_t {
    Init = 1,        // initial population permutations
    LocalSearch = 2, // one stream per improvement, indexed by a running counter
    Tournament = 3,  // mating selection, indexed by generation
    Crossover = 4,   // cycle coins / position subsets, indexed by generation
    Replacement = 5, // survivor-selection tie breaks, indexed by generation
};

/// Independent generator for (root, stream, index).
inline std::mt19937_64 substream(std::uint64_t root_seed, Stream stream,
                                 std::uint64_t index = 0) {
    std::uint64_t s = splitmix64(root_seed);
    s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(stream)));
    s = splitmix64(s ^ splitmix64(index));
    return std::mt19937_64(s);
}

/// Uniform draw from {0, ..., bound-1} via Lemire's multiply-shift with
/// rejection, so every value is exactly equally likely.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    assert(bound > 0);
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

inline bool coin_flip(std::mt19937_64& rng) { return uniform_index(rng, 2) == 1; }

/// In-place Fisher-Yates; every ordering equiprobable.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

/// Uniform random permutation of {0, ..., n-1}.
inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    shuffle(perm, rng);
    return perm;
}

} // namespace lop
