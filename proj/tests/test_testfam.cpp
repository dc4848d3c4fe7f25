#include <gtest/gtest.h>

#include "oracle.hpp"
#include "posthoc/errors.hpp"
#include "posthoc/generators.hpp"
#include "posthoc/testfam.hpp"

using namespace posthoc;
using oracle::q;
using oracle::qs;

namespace {

SpacePtr<Rational> uniform3() { return uniform_space<Rational>(3); }

}  // namespace

TEST(ThresholdFamily, ClosedRuleWithSentinels) {
  const auto s = uniform3();
  const auto phi = TestFamily<Rational>::threshold(s, qs({"0.05", "1", "0"}));
  EXPECT_EQ(phi.rejection_probability(0, q("0.05")), 1);
  EXPECT_EQ(phi.rejection_probability(0, q("0.04")), 0);
  EXPECT_EQ(phi.rejection_probability(1, q("0.99")), 0);
  EXPECT_EQ(phi.rejection_probability(2, q("0.001")), 1);
  EXPECT_TRUE(phi.deterministic());
  EXPECT_THROW(TestFamily<Rational>::threshold(s, qs({"0.5", "1.5", "0"})), ContractViolation);
}

TEST(CoupledFamily, RejectionProbabilityIgnoresLevel) {
  const auto s = uniform3();
  const auto phi = TestFamily<Rational>::coupled(s, qs({"0.1", "0", "1"}));
  EXPECT_EQ(phi.rejection_probability(0, q("0.01")), q("0.1"));
  EXPECT_EQ(phi.rejection_probability(0, q("0.9")), q("0.1"));
  EXPECT_FALSE(phi.deterministic());
  EXPECT_TRUE(TestFamily<Rational>::coupled(s, qs({"0", "1", "1"})).deterministic());
}

TEST(DataDependentLevel, MustLieStrictlyInsideTheUnitInterval) {
  const auto s = uniform3();
  EXPECT_THROW(DataDependentLevel<Rational>(s, qs({"0.1", "0", "0.2"})), ContractViolation);
  EXPECT_THROW(DataDependentLevel<Rational>(s, qs({"0.1", "1", "0.2"})), ContractViolation);
  EXPECT_THROW(DataDependentLevel<Rational>(s, qs({"0.1", "0.2"})), ContractViolation);
}

TEST(Evaluate, ThresholdProfileWorkedExample) {
  const auto s = make_space<Rational>({"x1", "x2"}, qs({"1/2", "1/2"}));
  const auto phi = TestFamily<Rational>::threshold(s, qs({"0.01", "0.6"}));
  const auto profile = evaluate(phi, DataDependentLevel<Rational>(s, qs({"0.01", "0.5"})));
  EXPECT_EQ(profile.reject_prob, qs({"1", "0"}));
  EXPECT_EQ(profile.decision(0), Decision<Rational>::reject_at(q("0.01")));
  EXPECT_EQ(profile.decision(1), Decision<Rational>::non_reject());
}

TEST(Evaluate, RandomizedProfileRefusesPointwiseDecisions) {
  const auto s = uniform3();
  const auto profile = evaluate(TestFamily<Rational>::coupled(s, qs({"0.5", "0", "1"})),
                                DataDependentLevel<Rational>::constant(s, q("0.1")));
  EXPECT_THROW(profile.decision(0), RandomizedEValue);
  EXPECT_EQ(profile.decision(2), Decision<Rational>::reject_at(q("0.1")));
}

TEST(ClassicalValidity, CoupledFamilyMarginIsLevelMinusProbability) {
  const auto s = uniform3();
  const auto phi = TestFamily<Rational>::coupled(s, qs({"0.1", "0.1", "0.1"}));
  const auto v = classical_validity(phi, q("0.05"));
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.reject_probability, q("0.1"));
  EXPECT_EQ(v.margin, q("-0.05"));
  EXPECT_TRUE(classical_validity(phi, q("0.1")).valid);
}

TEST(ClassicalValidity, UniformPValuesAreExactlyLevelAlpha) {
  const auto s = uniform_space<Rational>(100);
  std::vector<Rational> kappa;
  for (long i = 1; i <= 100; ++i) kappa.push_back(oracle::frac(i, 100));
  const auto phi = TestFamily<Rational>::threshold(s, kappa);
  for (long k = 1; k < 100; ++k) {
    const auto v = classical_validity(phi, oracle::frac(k, 100));
    EXPECT_TRUE(v.valid);
    EXPECT_EQ(v.margin, 0);
  }
  EXPECT_TRUE(classical_validity(TestFamily<Rational>::never_reject(s), q("0.01")).valid);
}

TEST(ConditioningPartition, GroupsEqualLevels) {
  const auto s = uniform3();
  const auto pi = conditioning_partition(DataDependentLevel<Rational>(s, qs({"0.1", "0.2", "0.1"})));
  ASSERT_EQ(pi.cells().size(), 2u);
  EXPECT_EQ(pi.cells()[0], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(pi.cells()[1], (std::vector<std::size_t>{1}));
}

TEST(Dominance, RejectingWhereTheOtherDoesNotDominates) {
  const auto s = uniform3();
  const auto phi = TestFamily<Rational>::threshold(s, qs({"0.01", "0.02", "0.5"}));
  const auto low = DataDependentLevel<Rational>::constant(s, q("0.01"));
  const auto mixed = DataDependentLevel<Rational>(s, qs({"0.01", "0.02", "0.01"}));
  EXPECT_TRUE(dominates(phi, low, mixed));
  EXPECT_FALSE(dominates(phi, mixed, low));
  EXPECT_TRUE(dominates(phi, low, low));
}

TEST(Dominance, CoupledFamiliesShareTheRejectionEvent) {
  const auto s = uniform3();
  const auto phi = TestFamily<Rational>::coupled(s, qs({"0.3", "0", "1"}));
  const auto a = DataDependentLevel<Rational>::constant(s, q("0.1"));
  const auto b = DataDependentLevel<Rational>::constant(s, q("0.2"));
  EXPECT_TRUE(dominates(phi, b, a));
  EXPECT_FALSE(dominates(phi, a, b));
  EXPECT_THROW(pointwise_le(evaluate(phi, b), evaluate(phi, a)), UncoupledComparison);
}

TEST(Properties, DominanceMatchesPointwiseDecisionOrder) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 6)));
    const auto phi = random_threshold_family<Rational>(rng, s);
    const auto a = random_level<Rational>(rng, s);
    const auto b = random_level<Rational>(rng, s);
    const auto pa = evaluate(phi, a);
    const auto pb = evaluate(phi, b);
    bool le = true;
    for (std::size_t x = 0; x < s->size(); ++x) le = le && pa.decision(x) <= pb.decision(x);
    EXPECT_EQ(dominates(phi, a, b), le);
    EXPECT_EQ(pointwise_le(pa, pb), le);
  }
}

TEST(Properties, ClassicalRejectionMatchesOracle) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 7)), true);
    const auto phi = random_threshold_family<Rational>(rng, s);
    const Rational alpha = oracle::frac(rng.between(1, 99), 100);
    Rational expected = 0;
    for (std::size_t x = 0; x < s->size(); ++x) {
      expected += s->mass(x) * oracle::threshold_reject(phi.values()[x], alpha);
    }
    const auto v = classical_validity(phi, alpha);
    EXPECT_EQ(v.reject_probability, expected);
    EXPECT_EQ(v.valid, expected <= alpha);
  }
}
