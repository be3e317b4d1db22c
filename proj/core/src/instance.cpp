#include "lop/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace lop {

namespace {

bool parse_int64(const std::string& token, std::int64_t& out) {
    const char* first = token.data();
    const char* last = first + token.size();
    if (first != last && *first == '+') ++first; // from_chars rejects a leading '+'
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && first != last;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n\v\f");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n\v\f");
    return s.substr(begin, end - begin + 1);
}

} // namespace

InstanceMatrix::InstanceMatrix(std::string name, int n, std::vector<std::int64_t> weights)
    : name_(std::move(name)), n_(n), weights_(std::move(weights)) {
    if (n_ < 2) throw std::invalid_argument("instance dimension must be at least 2, got " +
                                            std::to_string(n_));
    const auto expected = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    if (weights_.size() != expected)
        throw std::invalid_argument("weight count " + std::to_string(weights_.size()) +
                                    " does not match n*n = " + std::to_string(expected));

    // Bounds every objective value and every insertion delta.
    unsigned __int128 abs_sum = 0;
    for (const std::int64_t w : weights_) {
        abs_sum += w < 0 ? -static_cast<unsigned __int128>(w) : static_cast<unsigned __int128>(w);
    }
    if (abs_sum > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
        throw std::invalid_argument(
            "sum of absolute weights overflows 64-bit objective arithmetic");

    transpose_.resize(weights_.size());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            transpose_[static_cast<std::size_t>(j) * n_ + i] =
                weights_[static_cast<std::size_t>(i) * n_ + j];
}

InstanceMatrix parse_instance(std::istream& in) {
    std::vector<std::string> lines;
    {
        std::string raw;
        while (std::getline(in, raw)) lines.push_back(std::move(raw));
    }

    // The first non-empty line is the name iff any of its tokens fails to
    // lex as an integer; otherwise it already holds data.
    std::string name;
    std::size_t line_idx = 0;
    while (line_idx < lines.size() && trim(lines[line_idx]).empty()) ++line_idx;
    if (line_idx < lines.size()) {
        auto tokens = split_ws(lines[line_idx]);
        const bool all_ints = std::all_of(tokens.begin(), tokens.end(), [](const auto& t) {
            std::int64_t v;
            return parse_int64(t, v);
        });
        if (!all_ints) {
            name = trim(lines[line_idx]);
            ++line_idx;
        }
    }

    std::vector<std::string> current;
    std::size_t current_pos = 0;
    int current_line = static_cast<int>(line_idx); // 1-based line of `current`, set on refill
    auto next_token = [&](std::string& token, int& line) {
        while (current_pos >= current.size()) {
            if (line_idx >= lines.size()) {
                line = static_cast<int>(lines.size());
                return false;
            }
            current = split_ws(lines[line_idx]);
            current_pos = 0;
            current_line = static_cast<int>(++line_idx);
        }
        token = current[current_pos++];
        line = current_line;
        return true;
    };

    std::string tok;
    int line = 0;
    if (!next_token(tok, line)) throw TruncatedError(1, 0, line);
    std::int64_t n_value = 0;
    if (!parse_int64(tok, n_value))
        throw ParseError("expected integer dimension, got '" + tok + "'", line);
    if (n_value < 2)
        throw std::invalid_argument("instance dimension must be at least 2, got " +
                                    std::to_string(n_value));
    if (n_value > 100000)
        throw std::invalid_argument("instance dimension " + std::to_string(n_value) +
                                    " is implausibly large");
    const auto n = static_cast<int>(n_value);

    const auto expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<std::int64_t> weights;
    weights.reserve(expected);
    while (weights.size() < expected) {
        if (!next_token(tok, line)) throw TruncatedError(expected, weights.size(), line);
        std::int64_t value = 0;
        if (!parse_int64(tok, value))
            throw ParseError("expected integer matrix entry, got '" + tok + "'", line);
        weights.push_back(value);
    }
    // Anything after the matrix is ignored.

    return InstanceMatrix(std::move(name), n, std::move(weights));
}

void write_instance(std::ostream& out, const InstanceMatrix& inst) {
    if (!inst.name().empty()) out << inst.name() << '\n';
    out << inst.n() << '\n';
    for (int i = 0; i < inst.n(); ++i) {
        const std::int64_t* row = inst.row(i);
        for (int j = 0; j < inst.n(); ++j) {
            if (j > 0) out << ' ';
            out << row[j];
        }
        out << '\n';
    }
}

std::int64_t objective(const InstanceMatrix& inst, std::span<const int> perm) {
    const int n = inst.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation size " + std::to_string(perm.size()) +
                                    " does not match instance dimension " + std::to_string(n));
    std::int64_t total = 0;
    for (int i = 0; i < n - 1; ++i) {
        const std::int64_t* row = inst.row(perm[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) total += row[perm[static_cast<std::size_t>(j)]];
    }
    return total;
}

Individual brute_force_optimum(const InstanceMatrix& inst) {
    if (inst.n() > 10)
        throw std::invalid_argument("exhaustive search is capped at n <= 10, got n = " +
                                    std::to_string(inst.n()));
    std::vector<int> perm(static_cast<std::size_t>(inst.n()));
    for (int i = 0; i < inst.n(); ++i) perm[static_cast<std::size_t>(i)] = i;

    std::vector<int> best_perm = perm;
    std::int64_t best_obj = objective(inst, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const std::int64_t obj = objective(inst, perm);
        if (obj > best_obj) { // strict: lexicographic enumeration keeps the smallest maximizer
            best_obj = obj;
            best_perm = perm;
        }
    }
    return Individual{std::move(best_perm), best_obj, 0};
}

} // namespace lop
