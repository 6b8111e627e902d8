#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyset/fuzzy_set.hpp"
#include "fuzzyset/level_map.hpp"
#include "fuzzyset/set_expr.hpp"

namespace fuzzyset {

/**
 * Bits a_k over indices m_star..N (m_star <= 0 <= N) selecting which levels
 * {x}^(k) make up a classical set over a single atom.
 *
 * Invariants: a_0 = 1; a_{m_star} = 1; a finite (non-truncated) sequence with
 * N > 0 ends in a 1. A truncated sequence is the prefix of an infinite one.
 */
class BinarySequence {
 public:
  /// The sequence "(|)": only a_0 set.
  BinarySequence() = default;
  /// bits[i] is a_{m_star + i}. Throws InvariantError when an invariant fails.
  BinarySequence(int m_star, std::vector<std::uint8_t> bits, bool truncated = false);

  int m_star() const noexcept { return m_star_; }
  /// Largest stored index N.
  int last_index() const noexcept { return m_star_ + static_cast<int>(bits_.size()) - 1; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  bool truncated() const noexcept { return truncated_; }

  /// a_k, zero outside the stored range.
  int bit(int k) const noexcept;
  /// Indices k with a_k = 1, ascending.
  std::vector<int> one_indices() const;
  std::size_t count_ones() const noexcept;

  friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

 private:
  int m_star_ = 0;
  std::vector<std::uint8_t> bits_{1};
  bool truncated_ = false;
};

struct SolverConfig {
  double tol_root = 1e-12;
  double tol_residual = 1e-12;
  int max_terms = 64;
  int max_index = 256;

  /// Throws ConfigError unless tolerances are positive and caps at least 1.
  void validate() const;
};

/// Parses "10|01", "(1,0 | 1,0,1,1)", "|01001…". Commas, spaces and enclosing
/// parentheses are ignored; a trailing "…" or "..." marks a truncated prefix.
/// Throws SyntaxError or InvariantError.
BinarySequence parse_sequence(std::string_view text);

/// Inverse of parse_sequence without separators, e.g. "10|01", "|0101…".
std::string print_sequence(const BinarySequence& a);

/// One Braced(atom, k) per set bit, ascending k.
std::vector<SetExpr> sequence_to_universe(const BinarySequence& a, const std::string& atom);

/// Sum of iterate_level(t, k) over the set bits. Throws RangeError if t is outside [0,1].
double series_cardinality(const BinarySequence& a, double t);

/// The unique t in (0,1] with series_cardinality(a, t) = 1, by bisection.
/// For a truncated prefix this is the root of the truncated series.
double decode(const BinarySequence& a, const SolverConfig& cfg = {});

struct EncodeStep {
  int index;
  /// Residual s after adding u_index(w); starts from w - 1 for the a_0 term.
  double residual;
};

struct EncodeResult {
  BinarySequence sequence;
  std::vector<EncodeStep> steps;
};

/**
 * Greedy expansion of w in (0,1]. Starting from s = w - 1, each step picks the
 * smallest index k != 0 past the previous one with s + u_k(w) <= 0 and adds
 * u_k(w) to s. Stops when |s| <= tol_residual, or marks the result truncated
 * once max_terms one-bits (a_0 included) have been emitted.
 *
 * Throws RangeError for w outside (0,1] and IndexCapExceeded if an index
 * search passes max_index.
 */
EncodeResult encode_traced(double w, const SolverConfig& cfg = {});

BinarySequence encode(double w, const SolverConfig& cfg = {});

/// Fuzzy set over {atom} with elements ({atom}^(k), u_k(w)) for each set bit, where w = decode(a).
FuzzySet expand_to_fuzzy(const BinarySequence& a, const std::string& atom, const SolverConfig& cfg = {});

}  // namespace fuzzyset
