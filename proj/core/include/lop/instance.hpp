#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lop/permutation.hpp"

namespace lop {

/// Token-level failure while reading an instance; carries the 1-based line
/// number of the offending token.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Instance data ended before n*n matrix entries were read.
class TruncatedError : public ParseError {
  public:
    TruncatedError(std::size_t expected, std::size_t found, int line)
        : ParseError("truncated instance: expected " + std::to_string(expected) +
                         " matrix entries, found " + std::to_string(found),
                     line),
          expected_(expected), found_(found) {}
    std::size_t expected() const { return expected_; }
    std::size_t found() const { return found_; }

  private:
    std::size_t expected_;
    std::size_t found_;
};

/// A linear ordering instance: the dense n x n weight matrix, row-major,
/// immutable after construction and safe to share across threads. A
/// column-major copy is kept so that both m[i][*] and m[*][j] walks stay
/// within one contiguous row in the local-search hot loop.
class InstanceMatrix {
  public:
    /// Validates n >= 2, weights.size() == n*n, and that the sum of
    /// absolute entry values fits a signed 64-bit integer (which bounds
    /// every objective value and delta the solver can form).
    InstanceMatrix(std::string name, int n, std::vector<std::int64_t> weights);

    const std::string& name() const { return name_; }
    int n() const { return n_; }

    std::int64_t at(int i, int j) const {
        return weights_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                        static_cast<std::size_t>(j)];
    }

    /// Row i of the matrix: row(i)[j] == m[i][j].
    const std::int64_t* row(int i) const {
        return weights_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
    }

    /// Column j of the matrix laid out contiguously: column(j)[i] == m[i][j].
    const std::int64_t* column(int j) const {
        return transpose_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n_);
    }

  private:
    std::string name_;
    int n_;
    std::vector<std::int64_t> weights_;
    std::vector<std::int64_t> transpose_;
};

/// Reads the LOLIB text format: tokens split on any whitespace; if the
/// first non-empty line holds anything that is not an integer, that whole
/// line is the instance name, otherwise the name is empty; the next
/// integer is n, followed by n*n entries row-major. Content after the
/// matrix is ignored.
InstanceMatrix parse_instance(std::istream& in);

/// Emits the same format back: name line (omitted when empty), n, then n
/// rows of n single-space-separated entries, newline-terminated. Note that
/// a name consisting solely of an integer token cannot round-trip, since
/// the reader would take it for data.
void write_instance(std::ostream& out, const InstanceMatrix& inst);

/// Objective of an ordering: the sum of m[perm[i]][perm[j]] over all
/// position pairs i < j. Exact integer arithmetic; cannot overflow under
/// the InstanceMatrix construction invariants.
std::int64_t objective(const InstanceMatrix& inst, std::span<const int> perm);

/// Exhaustive optimum for tiny instances (n <= 10 enforced). Enumerates
/// every permutation in lexicographic order and returns the first
/// maximizer, i.e. ties resolve to the lexicographically smallest one.
Individual brute_force_optimum(const InstanceMatrix& inst);

} // namespace lop
