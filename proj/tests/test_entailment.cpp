#include "test_util.hpp"

#include "pentail/oracle.hpp"

#include <gtest/gtest.h>

using namespace pentail;
using namespace pentail::testing;

namespace {

void expect_sound(const EntailmentQuery& q, const EntailmentVerdict& v) {
  if (v.holds) {
    ASSERT_TRUE(v.certificate.has_value());
    EXPECT_TRUE(check_certificate(q, *v.certificate).valid);
  } else {
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_TRUE(separates(*v.counterexample, q));
  }
}

const std::vector<Rational>& gamma_grid() {
  static const std::vector<Rational> g{R(1, 10), R(1, 4), R(1, 3), R(2, 5), R(1, 2), R(3, 5), R(2, 3), R(9, 10)};
  return g;
}

}  // namespace

TEST(DecideLp, TwoPremiseExampleHolds) {
  auto q = query(two_premise_example(), imp("ACD", "B"), R(1, 2));
  auto v = decide_lp(q);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.regime, Regime::LpDirect);
  expect_sound(q, v);
}

TEST(DecideLp, ProjectionFailsWithSmallCounterexample) {
  auto q = query({imp("A", "B")}, imp("AC", "BC"), R(1, 2));
  auto v = decide_lp(q);
  EXPECT_FALSE(v.holds);
  expect_sound(q, v);

  Dataset manual(3);
  manual.add(S("AB"), 1);
  manual.add(S("AC"), 1);
  EXPECT_EQ(confidence(manual, imp("A", "B")), R(1, 2));
  EXPECT_EQ(confidence(manual, imp("AC", "BC")), R(0));
  EXPECT_TRUE(separates(manual, q));
}

TEST(DecideLp, FiveAttributeExampleAroundCriticalThreshold) {
  auto premises = five_attribute_premises();
  auto above = query(premises, imp("BCDH", "A"), R(57, 100));
  auto below = query(premises, imp("BCDH", "A"), R(11, 20));
  auto v_above = decide_lp(above);
  auto v_below = decide_lp(below);
  EXPECT_TRUE(v_above.holds);
  EXPECT_FALSE(v_below.holds);
  expect_sound(above, v_above);
  expect_sound(below, v_below);
}

TEST(DecideLp, BoundaryThresholds) {
  // γ = 0: everything holds. γ = 1: classical entailment.
  auto q0 = query({imp("A", "B")}, imp("C", "D"), R(0));
  EXPECT_TRUE(decide_lp(q0).holds);
  auto q1 = query({imp("A", "B"), imp("B", "C")}, imp("A", "C"), R(1));
  EXPECT_TRUE(decide_lp(q1).holds);
  auto q1_fail = query({imp("A", "B")}, imp("A", "C"), R(1));
  auto v = decide_lp(q1_fail);
  EXPECT_FALSE(v.holds);
  expect_sound(q1_fail, v);
}

TEST(DecideLp, AttributeCapIsAResourceError) {
  auto q = query({imp("ABCDEFGH", "IJ")}, imp("A", "B"), R(1, 2));
  Limits tight;
  tight.attribute_cap = 6;
  EXPECT_THROW(decide_lp(q, tight), ResourceError);
}

TEST(DecideOnePremise, Examples) {
  auto taut = query({}, imp("AB", "A"), R(1, 2));
  EXPECT_TRUE(decide_one_premise(taut).holds);

  auto projection = query({imp("A", "B")}, imp("AC", "BC"), R(1, 2));
  auto v = decide_one_premise(projection);
  EXPECT_FALSE(v.holds);
  expect_sound(projection, v);

  auto weaken = query({imp("A", "BC")}, imp("A", "B"), R(1, 2));
  auto w = decide_one_premise(weaken);
  EXPECT_TRUE(w.holds);
  expect_sound(weaken, w);
}

TEST(DecideOnePremise, ContractAndRouting) {
  EXPECT_THROW(decide_one_premise(query(two_premise_example(), imp("A", "B"), R(1, 2))), ContractViolation);
  auto boundary = decide_one_premise(query({imp("A", "B")}, imp("A", "C"), R(1)));
  EXPECT_EQ(boundary.regime, Regime::LpDirect);
}

TEST(DecideTwoPremise, Examples) {
  auto q = query(two_premise_example(), imp("ACD", "B"), R(1, 2));
  auto v = decide_two_premise(q);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.regime, Regime::TwoPremise);
  expect_sound(q, v);

  // ACDE ⊄ ABCD breaks inclusion (iii).
  auto wider = query(two_premise_example(), imp("ACDE", "B"), R(1, 2));
  auto w = decide_two_premise(wider);
  EXPECT_FALSE(w.holds);
  EXPECT_FALSE(decide_lp(wider).holds);
  expect_sound(wider, w);

  auto dup = query({imp("A", "B"), imp("A", "B")}, imp("A", "B"), R(3, 4));
  EXPECT_TRUE(decide_two_premise(dup).holds);
}

TEST(DecideTwoPremise, LowGammaIsRouted) {
  auto q = query(two_premise_example(), imp("ACD", "B"), R(2, 5));
  auto v = decide_two_premise(q);
  EXPECT_EQ(v.regime, Regime::LowGamma);
  EXPECT_FALSE(v.holds);
}

TEST(DecideLowGamma, Examples) {
  auto q = query(two_premise_example(), imp("ACD", "B"), R(2, 5));
  auto v = decide_low_gamma(q);
  EXPECT_FALSE(v.holds);
  expect_sound(q, v);

  auto via_first = query({imp("A", "BC"), imp("C", "D")}, imp("A", "B"), R(1, 3));
  auto w = decide_low_gamma(via_first);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.premise_subset, std::vector<std::size_t>{0});
  expect_sound(via_first, w);

  auto taut = query({imp("A", "B")}, imp("AB", "A"), R(1, 4));
  EXPECT_TRUE(decide_low_gamma(taut).holds);
}

TEST(DecideLowGamma, RejectsGammaAtOrAboveOneOverK) {
  EXPECT_THROW(decide_low_gamma(query(two_premise_example(), imp("ACD", "B"), R(1, 2))), ContractViolation);
  EXPECT_THROW(decide_low_gamma(query({}, imp("A", "B"), R(1, 10))), ContractViolation);
}

TEST(DecideHighGamma, Examples) {
  auto five = query(five_attribute_premises(), imp("BCDH", "A"), R(2, 3));
  auto v = decide_high_gamma(five);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.premise_subset, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(*v.certificate, (std::vector<Rational>{R(1, 3), R(1, 3), R(1, 3)}));
  expect_sound(five, v);

  auto two = query(two_premise_example(), imp("ACD", "B"), R(1, 2));
  auto w = decide_high_gamma(two);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.premise_subset, (std::vector<std::size_t>{0, 1}));

  auto apart = query({imp("A", "B"), imp("C", "D")}, imp("AC", "BD"), R(1, 2));
  auto u = decide_high_gamma(apart);
  EXPECT_FALSE(u.holds);
  EXPECT_FALSE(decide_lp(apart).holds);
  expect_sound(apart, u);
}

TEST(DecideHighGamma, RejectsGammaBelowThreshold) {
  EXPECT_THROW(decide_high_gamma(query(five_attribute_premises(), imp("BCDH", "A"), R(3, 5))), ContractViolation);
}

TEST(Decide, DispatchesByRegime) {
  EXPECT_EQ(decide(query(five_attribute_premises(), imp("BCDH", "A"), R(57, 100))).regime,
            Regime::GeneralGammaStar);
  EXPECT_EQ(decide(query(two_premise_example(), imp("ACD", "B"), R(3, 4))).regime, Regime::HighGamma);
  EXPECT_EQ(decide(query({imp("A", "B")}, imp("AC", "BC"), R(1, 3))).regime, Regime::OnePremise);
  EXPECT_EQ(decide(query(two_premise_example(), imp("ACD", "B"), R(1, 5))).regime, Regime::LowGamma);
  EXPECT_EQ(decide(query({imp("A", "B")}, imp("AB", "B"), R(1, 3))).regime, Regime::Tautology);
  EXPECT_EQ(decide(query({}, imp("A", "B"), R(1, 3))).regime, Regime::Tautology);
  EXPECT_EQ(decide(query({imp("A", "B")}, imp("A", "B"), R(1))).regime, Regime::LpDirect);
  EXPECT_EQ(decide(query({imp("A", "B")}, imp("A", "B"), R(1, 2)), Method::Lp).regime, Regime::LpDirect);
  EXPECT_THROW(decide(query({imp("A", "B")}, imp("A", "B"), R(0)), Method::Characterization), DomainError);
}

TEST(Decide, LargePremiseSetsUseLpUnderAuto) {
  std::vector<PartialImplication> many;
  for (int i = 0; i < 14; ++i) many.push_back(imp("A", "B"));
  Limits limits;
  EXPECT_EQ(decide(query(many, imp("A", "BC"), R(1, 2)), Method::Auto, limits).regime, Regime::LpDirect);
}

TEST(CheckCertificate, UniformLambdaOnFiveAttributeExample) {
  const std::vector<Rational> uniform{R(1, 3), R(1, 3), R(1, 3)};
  EXPECT_TRUE(check_certificate(query(five_attribute_premises(), imp("BCDH", "A"), R(2, 3)), uniform).valid);
  auto bad = check_certificate(query(five_attribute_premises(), imp("BCDH", "A"), R(3, 5)), uniform);
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.violated_at, S("ABCD"));
}

TEST(CheckCertificate, CriticalLambdaJustAboveCriticalThreshold) {
  // λ_c = (1-g, (1-g)^2/g, (1-g)^3/g^2) evaluated at g = 5699/10000, normalised, used at γ = 57/100.
  const Rational g(5699, 10000);
  std::vector<Rational> lambda{1 - g, (1 - g) * (1 - g) / g, (1 - g) * (1 - g) * (1 - g) / (g * g)};
  const Rational sum = lambda[0] + lambda[1] + lambda[2];
  EXPECT_LT(sum, 1);
  for (auto& l : lambda) l /= sum;
  EXPECT_TRUE(check_certificate(query(five_attribute_premises(), imp("BCDH", "A"), R(57, 100)), lambda).valid);
}

TEST(CheckCertificate, RejectsMalformedLambda) {
  auto q = query(two_premise_example(), imp("ACD", "B"), R(1, 2));
  EXPECT_THROW(check_certificate(q, std::vector<Rational>{R(1)}), ContractViolation);
  EXPECT_THROW(check_certificate(q, std::vector<Rational>{R(-1), R(1)}), ContractViolation);
}

TEST(ProperlyEntails, Examples) {
  auto two = properly_entails(query(two_premise_example(), imp("ACD", "B"), R(1, 2)));
  EXPECT_TRUE(two.holds);
  EXPECT_TRUE(two.proper);
  EXPECT_EQ(two.minimal, (std::vector<std::size_t>{0, 1}));

  auto improper = properly_entails(query({imp("A", "B"), imp("C", "D")}, imp("A", "B"), R(1, 2)));
  EXPECT_TRUE(improper.holds);
  EXPECT_FALSE(improper.proper);
  EXPECT_EQ(improper.minimal, std::vector<std::size_t>{0});

  auto taut = properly_entails(query({}, imp("AB", "A"), R(1, 2)));
  EXPECT_TRUE(taut.proper);
  EXPECT_EQ(taut.minimal, std::vector<std::size_t>{});

  auto fails = properly_entails(query({imp("A", "B")}, imp("AC", "BC"), R(1, 2)));
  EXPECT_FALSE(fails.holds);
  EXPECT_FALSE(fails.proper);
}

TEST(Prune, Examples) {
  AttributeUniverse u({"A", "B", "C", "D"});
  ImplicationSet three(u, {imp("A", "BC"), imp("A", "BD"), imp("ACD", "B")});
  EXPECT_EQ(prune(three, R(1, 2)).rules, (std::vector<PartialImplication>{imp("A", "BC"), imp("A", "BD")}));

  ImplicationSet one(u, {imp("A", "B")});
  for (auto g : {R(1, 10), R(1, 2), R(9, 10)}) EXPECT_EQ(prune(one, g).rules, one.rules);

  ImplicationSet weaker(u, {imp("A", "BC"), imp("A", "B")});
  EXPECT_EQ(prune(weaker, R(1, 2)).rules, std::vector<PartialImplication>{imp("A", "BC")});
}

TEST(Prune, ResultEntailsEveryInputRule) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oracle::InstanceGenerator gen({5, 4, seed, 0.35});
    std::vector<PartialImplication> rules;
    for (int i = 0; i < 5; ++i) {
      auto q = gen.query(3, R(1, 2));
      rules.push_back(i % 2 ? q.conclusion : q.premises[0]);
    }
    ImplicationSet in(AttributeUniverse({"A", "B", "C", "D", "E"}), rules);
    for (auto g : {R(1, 4), R(3, 5), R(9, 10)}) {
      auto kept = prune(in, g);
      EXPECT_LE(kept.size(), in.size());
      for (const auto& r : in.rules) EXPECT_TRUE(decide_lp(query(kept.rules, r, g)).holds);
    }
  }
}

// Every characterisation agrees with the LP wherever it applies; every
// verdict carries a certificate or counterexample that re-verifies.
TEST(CrossRegime, CharacterisationsAgreeWithLp) {
  int holds = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 pick(seed * 7919 + 1);
    const std::size_t n = 3 + pick() % 4;
    const std::size_t k = pick() % 4;
    oracle::InstanceGenerator gen({n, k, seed, 0.3});
    const Rational gamma = gamma_grid()[pick() % gamma_grid().size()];
    auto q = gen.query(k, gamma);
    auto lp = decide_lp(q);
    expect_sound(q, lp);
    ++total;
    holds += lp.holds ? 1 : 0;

    auto agree = [&](const EntailmentVerdict& v, const char* who) {
      EXPECT_EQ(v.holds, lp.holds) << who << " seed " << seed;
      expect_sound(q, v);
    };
    if (k <= 1) agree(decide_one_premise(q), "one-premise");
    if (k >= 1 && gamma * k < 1) agree(decide_low_gamma(q), "low-gamma");
    if (k == 2 && gamma * 2 >= 1) agree(decide_two_premise(q), "two-premise");
    if (k >= 1 && gamma * k >= Rational(k - 1)) agree(decide_high_gamma(q), "high-gamma");
    if (k >= 1) agree(decide_general(q), "general");
    agree(decide(q), "auto");
  }
  EXPECT_GT(holds, total / 10);
  EXPECT_LT(holds, total * 9 / 10);
}

// One premise: the verdict does not move with γ.
TEST(CrossRegime, OnePremiseVerdictIndependentOfGamma) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracle::InstanceGenerator gen({5, 1, seed, 0.35});
    auto q = gen.query(1, R(1, 10));
    const bool at_low = decide_lp(q).holds;
    for (auto g : {R(1, 2), R(9, 10)}) {
      q.gamma = g;
      EXPECT_EQ(decide_lp(q).holds, at_low) << "seed " << seed;
    }
  }
}

// Structural consequences of a proper entailment with k >= 1, γ in (0,1).
TEST(ProperEntailment, CertificateStructure) {
  int proper = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    std::mt19937_64 pick(seed + 17);
    const std::size_t k = 1 + pick() % 3;
    oracle::InstanceGenerator gen({5, k, seed, 0.3});
    const Rational gamma = gamma_grid()[pick() % gamma_grid().size()];
    auto q = gen.query(k, gamma);
    auto p = properly_entails(q);
    if (!p.proper || q.conclusion.trivial()) continue;
    ++proper;

    const auto lambda = *decide_lp(q).certificate;
    Rational sum = 0;
    AttrSet everything;
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_GT(lambda[i], 0);
      sum += lambda[i];
      everything |= q.premises[i].both();
      EXPECT_TRUE(q.premises[i].antecedent.subset_of(q.conclusion.antecedent));
      EXPECT_FALSE(q.premises[i].both().subset_of(q.conclusion.antecedent));
      EXPECT_TRUE(q.conclusion.consequent.subset_of(q.conclusion.antecedent | q.premises[i].consequent));
    }
    EXPECT_EQ(sum, 1);
    EXPECT_TRUE(q.conclusion.both().subset_of(everything));
    EXPECT_TRUE(enforces_homogeneity(q.premises));
  }
  EXPECT_GT(proper, 20);
}

TEST(CrossRegime, MonotoneInGamma) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::mt19937_64 pick(seed + 3);
    const std::size_t k = pick() % 4;
    oracle::InstanceGenerator gen({5, k, seed, 0.3});
    auto q = gen.query(k, R(1, 10));
    bool held = false;
    for (const auto& g : gamma_grid()) {
      q.gamma = g;
      const bool now = decide_lp(q).holds;
      if (held) EXPECT_TRUE(now) << "seed " << seed << " gamma " << g;
      held = held || now;
    }
  }
}
