#include "fuzzyset/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fuzzyset/errors.hpp"
#include "fuzzyset/level_map.hpp"

namespace fuzzyset {

FuzzySet::FuzzySet(AtomUniverse universe, std::vector<Element> elements)
    : universe_(std::move(universe)), elements_(std::move(elements)) {
  std::unordered_set<std::string> seen;
  for (const auto& [expr, mu] : elements_) {
    const std::string text = print_expr(expr);
    if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("membership of " + text + " is outside [0,1]");
    if (!is_canonical(expr)) throw DomainError("element " + text + " is not in canonical form");
    if (!in_superstructure(expr, universe_)) throw UniverseError("element " + text + " uses atoms outside the universe");
    if (expr.is_empty() && mu != 1.0) throw DomainError("the empty set must have membership 1");
    if (!seen.insert(text).second) throw DuplicateElement("duplicate element " + text);
  }
}

std::optional<double> FuzzySet::membership(const SetExpr& e) const {
  auto it = std::find_if(elements_.begin(), elements_.end(), [&](const Element& el) { return el.expr == e; });
  if (it == elements_.end()) return std::nullopt;
  return it->mu;
}

FuzzySet make_flat_fuzzy_set(const std::vector<std::pair<std::string, double>>& memberships) {
  std::vector<std::string> atoms;
  std::vector<Element> elements;
  for (const auto& [name, mu] : memberships) {
    atoms.push_back(name);
    elements.push_back({SetExpr::braced(name, 0), mu});
  }
  return FuzzySet(AtomUniverse(std::move(atoms)), std::move(elements));
}

VerificationReport VerificationReport::make(std::string label, double computed, double expected, double tolerance) {
  VerificationReport r;
  r.label = std::move(label);
  r.computed = computed;
  r.expected = expected;
  r.abs_diff = std::abs(computed - expected);
  r.tolerance = tolerance;
  r.pass = r.abs_diff <= tolerance;
  return r;
}

double scalar_cardinality(const FuzzySet& set) {
  double sum = 0.0;
  for (const auto& el : set.elements()) sum += el.mu;
  return sum;
}

namespace {

double propagate(const FuzzySet& base, const SetExpr& y) {
  if (y.is_empty()) return 1.0;
  if (auto stored = base.membership(y)) return *stored;

  if (y.is_braced()) {
    auto u = base.membership(SetExpr::braced(y.atom(), 0));
    if (!u) throw MissingMembership("atom '" + y.atom() + "' has no membership in the base fuzzy set");
    return iterate_level(*u, y.level());
  }

  double product = 1.0;
  for (const auto& el : y.elements()) product *= raise_level(propagate(base, el));
  return product;
}

}  // namespace

double propagate_membership(const FuzzySet& base, const SetExpr& y) {
  const SetExpr canonical = normalize(y);
  if (!in_superstructure(canonical, base.universe())) {
    throw UniverseError(print_expr(canonical) + " is not in the superstructure over the base universe");
  }
  return propagate(base, canonical);
}

FuzzySet construct_fuzzy_set(const FuzzySet& base, std::span<const SetExpr> exprs) {
  std::vector<Element> elements;
  std::unordered_set<std::string> seen;
  elements.reserve(exprs.size());
  for (const auto& raw : exprs) {
    SetExpr e = normalize(raw);
    if (!seen.insert(print_expr(e)).second) throw DuplicateElement("duplicate element " + print_expr(e));
    const double mu = propagate_membership(base, e);
    elements.push_back({std::move(e), mu});
  }
  return FuzzySet(base.universe(), std::move(elements));
}

FuzzySet fuzzy_power_set(const FuzzySet& base, std::size_t cap) {
  const auto& atoms = base.universe().atoms();
  const std::size_t n = atoms.size();

  bool flat = base.size() == n;
  std::vector<double> factor(n);
  for (std::size_t i = 0; flat && i < n; ++i) {
    auto mu = base.membership(SetExpr::braced(atoms[i], 0));
    if (!mu) {
      flat = false;
    } else {
      factor[i] = raise_level(*mu);
    }
  }
  if (!flat) throw DomainError("power set construction needs exactly one level-0 element per atom");
  if (n > cap) {
    throw CapExceeded("power set of " + std::to_string(n) + " atoms exceeds the cap of " + std::to_string(cap));
  }

  std::vector<Element> elements;
  elements.reserve(std::size_t{1} << n);
  elements.push_back({SetExpr::empty(), 1.0});

  // Lexicographic k-combinations of atom positions for k = 1..n.
  std::vector<std::size_t> pick;
  for (std::size_t k = 1; k <= n; ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::vector<SetExpr> members;
      members.reserve(k);
      double mu = 1.0;
      for (std::size_t i : pick) {
        members.push_back(SetExpr::braced(atoms[i], 0));
        mu *= factor[i];
      }
      elements.push_back({make_set(std::move(members)), mu});

      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return FuzzySet(FuzzySet::Trusted{}, base.universe(), std::move(elements));
}

VerificationReport verify_power_cardinality(const FuzzySet& base, double tol, std::size_t cap) {
  const FuzzySet power = fuzzy_power_set(base, cap);
  return VerificationReport::make("card(power set) = 2^card(base)", scalar_cardinality(power),
                                  std::exp2(scalar_cardinality(base)), tol);
}

VerificationReport verify_classical_degeneracy(const FuzzySet& base, std::span<const SetExpr> probes) {
  std::unordered_set<std::string> zero_atoms;
  for (const auto& [expr, mu] : base.elements()) {
    if (mu != 0.0 && mu != 1.0) throw DomainError("base is not classical: " + print_expr(expr) + " has membership strictly between 0 and 1");
    if (mu == 0.0 && expr.is_braced() && expr.level() == 0) zero_atoms.insert(expr.atom());
  }

  double worst = 0.0;
  for (const auto& probe : probes) {
    const double mu = propagate_membership(base, probe);
    const auto atoms = atoms_of(probe);
    const bool has_zero = std::any_of(atoms.begin(), atoms.end(), [&](const auto& a) { return zero_atoms.count(a) > 0; });
    const double indicator = has_zero ? 0.0 : 1.0;
    worst = std::max(worst, std::abs(mu - indicator));
  }
  return VerificationReport::make("classical degeneracy", worst, 0.0, 0.0);
}

}  // namespace fuzzyset
