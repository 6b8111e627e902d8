#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fuzzyset/errors.hpp"
#include "fuzzyset/fuzzy_set.hpp"
#include "fuzzyset/level_map.hpp"

using namespace fuzzyset;

namespace {

// 60-digit values from tests/oracle/reference_values.py.
constexpr double kPairWithEmpty = 0.1486983549970350068;      // {∅, x1}
constexpr double kTwoSingletons = 0.057789607468756465639;    // {{x2},{x3}}
constexpr double kDeepChain = 0.0081380919432180088465;       // {x1,{x2,{x3,{x4}}}}

FuzzySet example_base() { return make_flat_fuzzy_set({{"x1", 0.2}, {"x2", 0.3}, {"x3", 0.5}, {"x4", 1.0}}); }

FuzzySet random_flat(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mu(0.0, 1.0);
  std::vector<std::pair<std::string, double>> m;
  for (int i = 0; i < n; ++i) m.emplace_back("x" + std::to_string(i + 1), mu(rng));
  return make_flat_fuzzy_set(m);
}

/// Random canonical probe over the given atoms with levels in [-2, 2].
SetExpr random_probe(std::mt19937_64& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<std::size_t> pick_atom(0, atoms.size() - 1);
  std::uniform_int_distribution<int> level(-2, 2);
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 1);
  switch (kind(rng)) {
    case 0:
      return rng() % 4 == 0 ? SetExpr::empty() : SetExpr::braced(atoms[pick_atom(rng)], 0);
    case 1:
      return SetExpr::braced(atoms[pick_atom(rng)], level(rng));
    default: {
      std::vector<SetExpr> elements;
      for (int i = 1 + static_cast<int>(rng() % 3); i > 0; --i) elements.push_back(random_probe(rng, atoms, depth - 1));
      return make_set(std::move(elements));
    }
  }
}

}  // namespace

TEST(FuzzySet, RejectsInvalidElements) {
  const AtomUniverse u({"x1", "x2"});
  EXPECT_THROW(FuzzySet(u, {{SetExpr::braced("x1"), 1.5}}), DomainError);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::braced("x1"), -0.1}}), DomainError);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::braced("x1"), std::nan("")}}), DomainError);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::empty(), 0.5}}), DomainError);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::braced("y"), 0.5}}), UniverseError);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::braced("x1"), 0.5}, {SetExpr::braced("x1"), 0.4}}), DuplicateElement);
  EXPECT_THROW(FuzzySet(u, {{SetExpr::set_of({SetExpr::braced("x1")}), 0.5}}), DomainError);
  EXPECT_NO_THROW(FuzzySet(u, {{SetExpr::empty(), 1.0}, {parse_expr("{x1,{x2}}"), 0.25}}));
}

TEST(ScalarCardinality, Examples) {
  EXPECT_DOUBLE_EQ(scalar_cardinality(make_flat_fuzzy_set({{"x1", 0.2}, {"x2", 0.3}, {"x3", 0.5}})), 1.0);
  EXPECT_EQ(scalar_cardinality(FuzzySet(AtomUniverse({"x"}), {})), 0.0);
  const FuzzySet levels(AtomUniverse({"x"}), {{SetExpr::braced("x", -2), 0.4884},
                                              {SetExpr::braced("x", 0), 0.3222},
                                              {SetExpr::braced("x", 2), 0.1894}});
  EXPECT_NEAR(scalar_cardinality(levels), 1.0, 1e-4);
}

TEST(Propagate, WorkedExampleAgainstOracle) {
  const FuzzySet base = example_base();
  EXPECT_NEAR(propagate_membership(base, parse_expr("{∅,x1}")), kPairWithEmpty, 1e-15);
  EXPECT_NEAR(propagate_membership(base, parse_expr("{{x2},{x3}}")), kTwoSingletons, 1e-15);
  EXPECT_NEAR(propagate_membership(base, parse_expr("{x1,{x2,{x3,{x4}}}}")), kDeepChain, 1e-15);
}

TEST(Propagate, WorkedExampleFourDecimals) {
  const FuzzySet base = example_base();
  EXPECT_NEAR(propagate_membership(base, parse_expr("{∅,x1}")), 0.1487, 5e-5);
  EXPECT_NEAR(propagate_membership(base, parse_expr("{x1,{x2,{x3,{x4}}}}")), 0.0081, 5e-5);
  // The published 4-decimal figure for {{x2},{x3}} is 0.0364, which does not
  // follow from (2^(2^0.3 - 1) - 1)(2^(2^0.5 - 1) - 1); the product formula gives 0.0578.
  const double direct = (std::pow(2.0, std::pow(2.0, 0.3) - 1) - 1) * (std::pow(2.0, std::pow(2.0, 0.5) - 1) - 1);
  EXPECT_NEAR(propagate_membership(base, parse_expr("{{x2},{x3}}")), direct, 1e-15);
}

TEST(Propagate, BasicRules) {
  const FuzzySet base = example_base();
  EXPECT_EQ(propagate_membership(base, SetExpr::empty()), 1.0);
  EXPECT_EQ(propagate_membership(base, SetExpr::braced("x4")), 1.0);
  EXPECT_EQ(propagate_membership(base, SetExpr::braced("x1")), 0.2);
  EXPECT_EQ(propagate_membership(make_flat_fuzzy_set({{"x", 1.0}}), SetExpr::braced("x", -1)), 1.0);
  EXPECT_NEAR(propagate_membership(base, SetExpr::braced("x3", 1)), std::sqrt(2.0) - 1.0, 1e-15);
}

TEST(Propagate, StoredMembershipWinsForExactMatch) {
  const AtomUniverse u({"x1", "x2"});
  const SetExpr pair = parse_expr("{x1,x2}");
  const FuzzySet base(u, {{SetExpr::braced("x1"), 0.5}, {SetExpr::braced("x2"), 0.5}, {pair, 0.9}});
  EXPECT_EQ(propagate_membership(base, pair), 0.9);
  // Inside a larger set the stored value feeds the product.
  EXPECT_NEAR(propagate_membership(base, parse_expr("{{x1,x2},∅}")), raise_level(0.9), 1e-15);
}

TEST(Propagate, Errors) {
  const FuzzySet base = make_flat_fuzzy_set({{"x1", 0.2}});
  EXPECT_THROW(propagate_membership(base, parse_expr("{x1,y}")), UniverseError);
  const FuzzySet partial(AtomUniverse({"x1", "x2"}), {{SetExpr::braced("x1"), 0.2}});
  EXPECT_THROW(propagate_membership(partial, parse_expr("{x1,x2}")), MissingMembership);
}

TEST(ConstructFuzzySet, WorkedExample) {
  const std::vector<SetExpr> y{parse_expr("{∅,x1}"), parse_expr("{{x2},{x3}}"), parse_expr("{x1,{x2,{x3,{x4}}}}")};
  const FuzzySet b = construct_fuzzy_set(example_base(), y);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b.elements()[0].expr, y[0]);
  EXPECT_NEAR(b.elements()[0].mu, kPairWithEmpty, 1e-15);
  EXPECT_NEAR(b.elements()[1].mu, kTwoSingletons, 1e-15);
  EXPECT_NEAR(b.elements()[2].mu, kDeepChain, 1e-15);
  EXPECT_EQ(b.universe(), example_base().universe());
}

TEST(ConstructFuzzySet, EdgeCases) {
  const FuzzySet only_empty = construct_fuzzy_set(example_base(), std::vector<SetExpr>{SetExpr::empty()});
  ASSERT_EQ(only_empty.size(), 1u);
  EXPECT_EQ(only_empty.elements()[0].mu, 1.0);

  const FuzzySet ones = make_flat_fuzzy_set({{"a", 1.0}, {"b", 1.0}});
  const std::vector<SetExpr> exprs{parse_expr("{a,{b}}"), parse_expr("{{a,b},{a}^(-3)}"), parse_expr("{b}^(5)")};
  for (const auto& el : construct_fuzzy_set(ones, exprs).elements()) EXPECT_EQ(el.mu, 1.0);

  EXPECT_THROW(construct_fuzzy_set(ones, std::vector<SetExpr>{parse_expr("{a}"), parse_expr("{{a}^(0)}")}),
               DuplicateElement);
}

TEST(FuzzyPowerSet, WorkedExample) {
  const FuzzySet base = make_flat_fuzzy_set({{"x1", 0.2}, {"x2", 0.3}, {"x3", 0.5}});
  const FuzzySet p = fuzzy_power_set(base);
  ASSERT_EQ(p.size(), 8u);
  const char* const order[] = {"∅", "{x1}", "{x2}", "{x3}", "{x1,x2}", "{x1,x3}", "{x2,x3}", "{x1,x2,x3}"};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(print_expr(p.elements()[i].expr), order[i]);

  const double f1 = std::pow(2.0, 0.2) - 1, f2 = std::pow(2.0, 0.3) - 1, f3 = std::pow(2.0, 0.5) - 1;
  EXPECT_EQ(p.elements()[0].mu, 1.0);
  EXPECT_NEAR(p.elements()[1].mu, f1, 1e-15);
  EXPECT_NEAR(p.elements()[4].mu, f1 * f2, 1e-15);
  // Expanded forms of the two- and three-element products.
  EXPECT_NEAR(p.elements()[4].mu, std::pow(2.0, 0.5) - std::pow(2.0, 0.3) - std::pow(2.0, 0.2) + 1, 1e-15);
  EXPECT_NEAR(p.elements()[7].mu,
              1 + std::pow(2.0, 0.2) + std::pow(2.0, 0.3) - std::pow(2.0, 0.7) - std::pow(2.0, 0.8), 1e-15);
  EXPECT_NEAR(p.elements()[7].mu, f1 * f2 * f3, 1e-15);
  EXPECT_NEAR(scalar_cardinality(p), 2.0, 1e-12);
}

TEST(FuzzyPowerSet, SmallCases) {
  const FuzzySet none = fuzzy_power_set(FuzzySet(AtomUniverse(), {}));
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none.elements()[0].expr, SetExpr::empty());
  EXPECT_EQ(scalar_cardinality(none), 1.0);

  const double u = 0.37;
  const FuzzySet one = fuzzy_power_set(make_flat_fuzzy_set({{"x1", u}}));
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one.elements()[1].expr, SetExpr::braced("x1", 1));
  EXPECT_NEAR(scalar_cardinality(one), std::exp2(u), 1e-15);
}

TEST(FuzzyPowerSet, Errors) {
  std::vector<std::pair<std::string, double>> many;
  for (int i = 0; i < 21; ++i) many.emplace_back("x" + std::to_string(i), 0.5);
  EXPECT_THROW(fuzzy_power_set(make_flat_fuzzy_set(many)), CapExceeded);
  EXPECT_THROW(fuzzy_power_set(make_flat_fuzzy_set({{"a", 0.5}, {"b", 0.5}}), 1), CapExceeded);

  const FuzzySet not_flat(AtomUniverse({"a", "b"}), {{SetExpr::braced("a"), 0.5}, {parse_expr("{a,b}"), 0.5}});
  EXPECT_THROW(fuzzy_power_set(not_flat), DomainError);
  const FuzzySet missing(AtomUniverse({"a", "b"}), {{SetExpr::braced("a"), 0.5}});
  EXPECT_THROW(fuzzy_power_set(missing), DomainError);
}

TEST(VerifyPowerCardinality, Examples) {
  const auto r = verify_power_cardinality(make_flat_fuzzy_set({{"x1", 0.2}, {"x2", 0.3}, {"x3", 0.5}}), 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.computed, 2.0, 1e-12);
  EXPECT_EQ(r.expected, 2.0);
  EXPECT_EQ(r.abs_diff, std::abs(r.computed - r.expected));

  const auto zeros = verify_power_cardinality(make_flat_fuzzy_set({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}), 1e-9);
  EXPECT_TRUE(zeros.pass);
  EXPECT_EQ(zeros.computed, 1.0);
  EXPECT_EQ(zeros.expected, 1.0);
}

TEST(VerifyPowerCardinality, MatchesBruteForceSubsetSum) {
  std::mt19937_64 rng(2024);
  const FuzzySet base = random_flat(rng, 10);
  // Oracle: sum over all 1024 bit masks of the product of per-atom factors.
  double brute = 0.0;
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    double product = 1.0;
    for (unsigned i = 0; i < 10; ++i) {
      if (mask & (1u << i)) product *= std::pow(2.0, base.elements()[i].mu) - 1.0;
    }
    brute += product;
  }
  const auto r = verify_power_cardinality(base, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.computed, brute, 1e-12);
  EXPECT_NEAR(brute, std::pow(2.0, scalar_cardinality(base)), 1e-12);
}

TEST(VerifyClassicalDegeneracy, Examples) {
  const FuzzySet ones = make_flat_fuzzy_set({{"x", 1.0}, {"y", 1.0}});
  // Pairing, union and power-set shaped probes.
  const std::vector<SetExpr> probes{parse_expr("{x,y}"), parse_expr("{x}"), parse_expr("{∅,{x},{y},{x,y}}")};
  const auto all_one = verify_classical_degeneracy(ones, probes);
  EXPECT_TRUE(all_one.pass);
  EXPECT_EQ(all_one.computed, 0.0);

  const FuzzySet mixed = make_flat_fuzzy_set({{"x1", 0.0}, {"x2", 1.0}});
  EXPECT_EQ(propagate_membership(mixed, parse_expr("{x1,{x2}}")), 0.0);
  EXPECT_TRUE(verify_classical_degeneracy(mixed, std::vector<SetExpr>{parse_expr("{x1,{x2}}")}).pass);
  EXPECT_TRUE(verify_classical_degeneracy(mixed, std::vector<SetExpr>{SetExpr::empty()}).pass);
}

TEST(VerifyClassicalDegeneracy, DetectsInconsistentStoredValue) {
  // {x} stored with 0 although its atom has membership 1.
  const FuzzySet odd(AtomUniverse({"x"}), {{SetExpr::braced("x"), 1.0}, {SetExpr::braced("x", 1), 0.0}});
  EXPECT_FALSE(verify_classical_degeneracy(odd, std::vector<SetExpr>{SetExpr::braced("x", 1)}).pass);
}

TEST(VerifyClassicalDegeneracy, RejectsFuzzyBase) {
  EXPECT_THROW(verify_classical_degeneracy(make_flat_fuzzy_set({{"x", 0.5}}), std::vector<SetExpr>{}), DomainError);
}

TEST(FuzzyCoreProperty, RangeClosureAndRule3) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const FuzzySet base = random_flat(rng, 1 + static_cast<int>(rng() % 5));
    const SetExpr probe = random_probe(rng, base.universe().atoms(), 4);
    const double mu = propagate_membership(base, probe);
    EXPECT_GE(mu, 0.0);
    EXPECT_LE(mu, 1.0);
    EXPECT_EQ(propagate_membership(base, SetExpr::empty()), 1.0);
  }
}

TEST(FuzzyCoreProperty, MonotoneInEachAtom) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::pair<std::string, double>> m;
    for (int i = 0; i < n; ++i) m.emplace_back("x" + std::to_string(i + 1), unit(rng));
    const FuzzySet base = make_flat_fuzzy_set(m);
    const SetExpr probe = random_probe(rng, base.universe().atoms(), 4);

    const std::size_t raised = rng() % static_cast<std::size_t>(n);
    auto higher = m;
    higher[raised].second += (1.0 - higher[raised].second) * unit(rng);
    EXPECT_GE(propagate_membership(make_flat_fuzzy_set(higher), probe), propagate_membership(base, probe))
        << print_expr(probe);
  }
}

TEST(FuzzyCoreProperty, ClassicalBasesStayClassical) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<std::pair<std::string, double>> m;
    for (int i = 0; i < n; ++i) m.emplace_back("x" + std::to_string(i + 1), static_cast<double>(rng() % 2));
    const FuzzySet base = make_flat_fuzzy_set(m);
    std::vector<SetExpr> probes;
    for (int k = 0; k < 5; ++k) probes.push_back(random_probe(rng, base.universe().atoms(), 4));
    for (const auto& p : probes) {
      const double mu = propagate_membership(base, p);
      EXPECT_TRUE(mu == 0.0 || mu == 1.0) << print_expr(p) << " -> " << mu;
    }
    EXPECT_TRUE(verify_classical_degeneracy(base, probes).pass);
  }
}

TEST(FuzzyCoreProperty, PowerSetLaw) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const FuzzySet base = random_flat(rng, static_cast<int>(rng() % 13));
    const auto r = verify_power_cardinality(base, 1e-9);
    EXPECT_TRUE(r.pass) << "n=" << base.size() << " diff=" << r.abs_diff;
  }
}

TEST(FuzzyCoreProperty, LevelCompositionMemberships) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> level(-6, 6);
  for (int t = 0; t < 500; ++t) {
    const double u = unit(rng);
    const int m = level(rng), n = level(rng);
    // Evaluate the inner level first, then treat it as the membership of a fresh atom.
    const double inner_m = propagate_membership(make_flat_fuzzy_set({{"x", u}}), SetExpr::braced("x", m));
    const double inner_n = propagate_membership(make_flat_fuzzy_set({{"x", u}}), SetExpr::braced("x", n));
    const double mn = propagate_membership(make_flat_fuzzy_set({{"y", inner_m}}), SetExpr::braced("y", n));
    const double nm = propagate_membership(make_flat_fuzzy_set({{"y", inner_n}}), SetExpr::braced("y", m));
    const double direct = propagate_membership(make_flat_fuzzy_set({{"x", u}}), SetExpr::braced("x", m + n));
    EXPECT_NEAR(mn, direct, 1e-12);
    EXPECT_NEAR(nm, direct, 1e-12);
    EXPECT_NEAR(mn, nm, 1e-12);
  }
}
