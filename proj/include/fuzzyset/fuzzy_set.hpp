#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyset/set_expr.hpp"

namespace fuzzyset {

struct Element {
  SetExpr expr;
  double mu;
};

/**
 * Finite fuzzy set whose elements live in the superstructure over an atom universe.
 *
 * Invariants, checked on construction:
 *   - every mu is in [0,1]
 *   - expressions are canonical, pairwise distinct, and built from universe atoms
 *   - the empty set, if present, has mu = 1
 */
class FuzzySet {
 public:
  FuzzySet() = default;
  /// Throws DomainError, UniverseError or DuplicateElement when an invariant fails.
  FuzzySet(AtomUniverse universe, std::vector<Element> elements);

  const AtomUniverse& universe() const noexcept { return universe_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  /// Stored membership of an element equal to `e`, if listed.
  std::optional<double> membership(const SetExpr& e) const;

 private:
  struct Trusted {};
  FuzzySet(Trusted, AtomUniverse universe, std::vector<Element> elements)
      : universe_(std::move(universe)), elements_(std::move(elements)) {}

  friend FuzzySet fuzzy_power_set(const FuzzySet& base, std::size_t cap);

  AtomUniverse universe_;
  std::vector<Element> elements_;
};

/// Fuzzy set with one level-0 element per atom, in the given order.
FuzzySet make_flat_fuzzy_set(const std::vector<std::pair<std::string, double>>& memberships);

struct VerificationReport {
  std::string label;
  double computed = 0.0;
  double expected = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  static VerificationReport make(std::string label, double computed, double expected, double tolerance);
};

/// Sigma-count: the sum of all membership values, accumulated in element order.
double scalar_cardinality(const FuzzySet& set);

/**
 * Membership of y in a fuzzy set built from `base`:
 *   - the empty set has membership 1
 *   - an element listed in base keeps its stored membership
 *   - {a}^(n) gets iterate_level(mu(a), n)
 *   - a set gets the product of (2^mu(e) - 1) over its elements, recursively
 *
 * Throws UniverseError if y uses atoms outside base's universe and
 * MissingMembership if evaluation reaches an atom with no level-0 membership.
 */
double propagate_membership(const FuzzySet& base, const SetExpr& y);

/// New fuzzy set over `exprs` (order kept) with propagated memberships.
/// Throws DuplicateElement if two expressions share a canonical form.
FuzzySet construct_fuzzy_set(const FuzzySet& base, std::span<const SetExpr> exprs);

inline constexpr std::size_t kDefaultPowerSetCap = 20;

/**
 * Fuzzy set over every subset of a flat base's atoms. A subset's membership is
 * the product of (2^mu - 1) over its atoms; the empty subset gets 1. Subsets are
 * ordered by size, then lexicographically by atom position in the universe.
 *
 * Throws DomainError if base is not flat and CapExceeded if it has more than `cap` atoms.
 */
FuzzySet fuzzy_power_set(const FuzzySet& base, std::size_t cap = kDefaultPowerSetCap);

/// Compares card(power set) against 2^card(base).
VerificationReport verify_power_cardinality(const FuzzySet& base, double tol, std::size_t cap = kDefaultPowerSetCap);

/**
 * For a base whose memberships are all 0 or 1, checks that each probe propagates to
 * exactly 1 when none of its atoms has membership 0 and to exactly 0 otherwise.
 * computed is the largest deviation from that indicator; the check demands exactness.
 * Throws DomainError if base has a membership outside {0,1}.
 */
VerificationReport verify_classical_degeneracy(const FuzzySet& base, std::span<const SetExpr> probes);

}  // namespace fuzzyset
