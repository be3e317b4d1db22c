#include "lop/permutation.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace lop {

bool is_valid_permutation(std::span<const int> perm) {
    const auto n = perm.size();
    std::vector<bool> seen(n, false);
    for (const int v : perm) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

std::int64_t deviation_distance_via_inverse(std::span<const int> x,
                                            std::span<const int> y_inverse) {
    if (x.size() != y_inverse.size())
        throw std::invalid_argument("deviation distance requires equal dimensions");
    std::int64_t d = 0;
    const auto n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        d += std::abs(static_cast<int>(i) - y_inverse[static_cast<std::size_t>(x[i])]);
    return d;
}

std::int64_t deviation_distance(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("deviation distance requires equal dimensions");
    const std::vector<int> inv_y = inverse_permutation(y);
    return deviation_distance_via_inverse(x, inv_y);
}

std::int64_t distance_to_closest(const Individual& x, const Population& survivors) {
    std::int64_t best = kInfiniteDistance;
    for (const Individual& s : survivors) {
        const std::int64_t d = deviation_distance(x.perm, s.perm);
        if (d < best) best = d;
    }
    return best;
}

double mean_pairwise_distance(const Population& pop) {
    const std::size_t n_members = pop.size();
    if (n_members < 2)
        throw std::invalid_argument("mean pairwise distance needs at least 2 members");

    std::vector<std::vector<int>> inverses;
    inverses.reserve(n_members);
    for (const Individual& ind : pop) inverses.push_back(inverse_permutation(ind.perm));

    // Distances are <= n^2/2 and pair counts are modest, so the exact sum
    // stays far from 64-bit limits.
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < n_members; ++i)
        for (std::size_t j = i + 1; j < n_members; ++j)
            sum += deviation_distance_via_inverse(pop[i].perm, inverses[j]);

    const auto pairs = static_cast<double>(n_members) * (static_cast<double>(n_members) - 1.0) / 2.0;
    return static_cast<double>(sum) / pairs;
}

std::string format_permutation(std::span<const int> perm) {
    std::ostringstream out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i > 0) out << ' ';
        out << perm[i];
    }
    return out.str();
}

std::vector<int> parse_permutation(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            values.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid permutation token '" + tok + "'");
        }
    }
    return values;
}

} // namespace lop
