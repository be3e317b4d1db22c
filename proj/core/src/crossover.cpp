#include "lop/crossover.hpp"

#include <algorithm>
#include <stdexcept>

#include "lop/rng.hpp"

namespace lop {

std::string to_string(CrossoverOp op) { return op == CrossoverOp::CX ? "cx" : "ob"; }

std::size_t binary_tournament(const Population& pop, std::mt19937_64& rng) {
    if (pop.empty()) throw std::invalid_argument("tournament over an empty population");
    const std::size_t a = uniform_index(rng, pop.size());
    const std::size_t b = uniform_index(rng, pop.size());
    if (pop[a].obj != pop[b].obj) return pop[a].obj > pop[b].obj ? a : b;
    return coin_flip(rng) ? a : b;
}

std::vector<std::vector<int>> cx_cycles(std::span<const int> p1, std::span<const int> p2) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("crossover parents must share one dimension");
    const auto n = p1.size();
    const std::vector<int> inv1 = inverse_permutation(p1);

    std::vector<std::vector<int>> cycles;
    std::vector<bool> visited(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        visited[start] = true;
        if (p1[start] == p2[start]) continue; // agreeing positions belong to no cycle
        std::vector<int> cycle;
        int pos = static_cast<int>(start);
        do {
            cycle.push_back(pos);
            visited[static_cast<std::size_t>(pos)] = true;
            pos = inv1[static_cast<std::size_t>(p2[static_cast<std::size_t>(pos)])];
        } while (pos != static_cast<int>(start));
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

OffspringPair cycle_crossover_with_choices(const Individual& p1, const Individual& p2,
                                           const std::vector<bool>& take_from_p1) {
    const auto cycles = cx_cycles(p1.perm, p2.perm);
    if (cycles.size() != take_from_p1.size())
        throw std::invalid_argument("one donor choice per cycle expected: " +
                                    std::to_string(cycles.size()) + " cycles, " +
                                    std::to_string(take_from_p1.size()) + " choices");

    // Start from straight copies: agreeing positions are then already
    // correct in both, and each cycle only needs rewriting on one side.
    Individual first{p1.perm, 0, 0};
    Individual second{p2.perm, 0, 0};
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        if (take_from_p1[k]) continue;
        for (const int pos : cycles[k]) {
            first.perm[static_cast<std::size_t>(pos)] = p2.perm[static_cast<std::size_t>(pos)];
            second.perm[static_cast<std::size_t>(pos)] = p1.perm[static_cast<std::size_t>(pos)];
        }
    }
    return {std::move(first), std::move(second)};
}

OffspringPair cycle_crossover(const Individual& p1, const Individual& p2, std::mt19937_64& rng) {
    const auto cycles = cx_cycles(p1.perm, p2.perm);
    std::vector<bool> take_from_p1(cycles.size());
    for (std::size_t k = 0; k < cycles.size(); ++k) take_from_p1[k] = coin_flip(rng);
    return cycle_crossover_with_choices(p1, p2, take_from_p1);
}

Individual order_crossover_one(const Individual& base, const Individual& order_donor,
                               std::span<const int> positions) {
    if (base.perm.size() != order_donor.perm.size())
        throw std::invalid_argument("crossover parents must share one dimension");

    Individual child{base.perm, 0, 0};
    std::vector<int> values;
    values.reserve(positions.size());
    for (const int pos : positions) values.push_back(base.perm[static_cast<std::size_t>(pos)]);

    const std::vector<int> donor_inv = inverse_permutation(order_donor.perm);
    std::sort(values.begin(), values.end(), [&](int a, int b) {
        return donor_inv[static_cast<std::size_t>(a)] < donor_inv[static_cast<std::size_t>(b)];
    });

    for (std::size_t k = 0; k < positions.size(); ++k)
        child.perm[static_cast<std::size_t>(positions[k])] = values[k];
    return child;
}

std::vector<int> sample_positions(int n, int k, std::mt19937_64& rng) {
    if (k < 0 || k > n) throw std::invalid_argument("subset size out of range");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    std::sort(pool.begin(), pool.end());
    return pool;
}

OffspringPair order_crossover(const Individual& p1, const Individual& p2, std::mt19937_64& rng) {
    const int n = p1.n();
    if (n != p2.n()) throw std::invalid_argument("crossover parents must share one dimension");
    const int k = n / 2;
    const std::vector<int> pos1 = sample_positions(n, k, rng);
    Individual first = order_crossover_one(p1, p2, pos1);
    const std::vector<int> pos2 = sample_positions(n, k, rng);
    Individual second = order_crossover_one(p2, p1, pos2);
    return {std::move(first), std::move(second)};
}

} // namespace lop
