#include "lop/local_search.hpp"

#include <stdexcept>

#include "lop/rng.hpp"

namespace lop {

InsertMove best_insertion(const InstanceMatrix& inst, std::span<const int> perm, int from) {
    const int n = inst.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation size does not match instance dimension");
    if (from < 0 || from >= n)
        throw std::invalid_argument("element index " + std::to_string(from) + " out of range");

    const int v = perm[static_cast<std::size_t>(from)];
    const std::int64_t* out_of = inst.row(v);    // m[v][w]
    const std::int64_t* into = inst.column(v);   // m[w][v]

    InsertMove best{from, from, 0};

    // Left: v jumps before each passed element w, turning the pair's
    // contribution from m[w][v] into m[v][w].
    std::int64_t delta = 0;
    for (int k = from - 1; k >= 0; --k) {
        const int w = perm[static_cast<std::size_t>(k)];
        delta += out_of[w] - into[w];
        if (delta > best.delta) {
            best.delta = delta;
            best.to = k;
        }
    }
    // Right: each passed element w jumps before v.
    delta = 0;
    for (int k = from + 1; k < n; ++k) {
        const int w = perm[static_cast<std::size_t>(k)];
        delta += into[w] - out_of[w];
        if (delta > best.delta) {
            best.delta = delta;
            best.to = k;
        }
    }
    return best;
}

void apply_insertion(std::vector<int>& perm, std::vector<int>& inverse, int from, int to) {
    const int v = perm[static_cast<std::size_t>(from)];
    if (to < from) {
        for (int k = from; k > to; --k) {
            perm[static_cast<std::size_t>(k)] = perm[static_cast<std::size_t>(k - 1)];
            inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k;
        }
    } else {
        for (int k = from; k < to; ++k) {
            perm[static_cast<std::size_t>(k)] = perm[static_cast<std::size_t>(k + 1)];
            inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k;
        }
    }
    perm[static_cast<std::size_t>(to)] = v;
    inverse[static_cast<std::size_t>(v)] = to;
}

Individual local_search(const InstanceMatrix& inst, Individual start, std::mt19937_64& rng,
                        LocalSearchStats* stats) {
    const int n = inst.n();
    if (start.n() != n)
        throw std::invalid_argument("individual dimension does not match instance");

    std::vector<int> inverse = inverse_permutation(start.perm);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

    LocalSearchStats local;
    bool accepted_any = true;
    while (accepted_any) {
        accepted_any = false;
        ++local.sweeps;
        shuffle(order, rng);
        for (const int value : order) {
            const int from = inverse[static_cast<std::size_t>(value)];
            const InsertMove move = best_insertion(inst, start.perm, from);
            ++local.scans;
            if (move.delta > 0) {
                apply_insertion(start.perm, inverse, move.from, move.to);
                start.obj += move.delta;
                ++local.accepted;
                accepted_any = true;
            }
        }
    }
    if (stats) *stats = local;
    return start;
}

bool is_insert_local_optimum(const InstanceMatrix& inst, std::span<const int> perm) {
    for (int i = 0; i < inst.n(); ++i)
        if (best_insertion(inst, perm, i).delta > 0) return false;
    return true;
}

} // namespace lop
