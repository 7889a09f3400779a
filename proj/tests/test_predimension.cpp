#include <gtest/gtest.h>

#include "predim/audits.hpp"
#include "predim/errors.hpp"
#include "predim/oracles.hpp"
#include "predim/predimension.hpp"
#include "support.hpp"

using namespace predim;
using namespace predim::testing;

TEST(Oracles, Names) {
  EXPECT_EQ(make_oracle("free")->name(), "free");
  EXPECT_EQ(make_oracle("uniform-3")->name(), "uniform-3");
  EXPECT_EQ(make_oracle("linear-5")->name(), "linear-5");
  EXPECT_THROW(make_oracle("linear-4"), Error);
  EXPECT_THROW(make_oracle("matroid"), Error);
  EXPECT_TRUE(make_oracle("free")->modular());
  EXPECT_FALSE(make_oracle("uniform-2")->modular());
  EXPECT_TRUE(make_oracle("linear-2")->modular());
}

TEST(Oracles, Ranks) {
  FinStructure s(Signature::graph(), 4);
  s.set_annotation(0, {"1", "0"});
  s.set_annotation(1, {"0", "1"});
  s.set_annotation(2, {"1", "1"});
  s.set_annotation(3, {"0", "0"});
  auto lin = linear_oracle(2)->bind(s);
  EXPECT_EQ(lin->rank({0, 1, 2}), 2);
  EXPECT_EQ(lin->rank({3}), 0);
  EXPECT_EQ(lin->rank({0, 3}), 1);
  auto uni = uniform_oracle(2)->bind(s);
  EXPECT_EQ(uni->rank({0, 1, 2, 3}), 2);
  EXPECT_EQ(uni->rank({1}), 1);
  auto fr = free_oracle()->bind(s);
  EXPECT_EQ(fr->rank({0, 1, 2, 3}), 4);
}

TEST(Oracles, LinearOverF3UsesGeneralElimination) {
  FinStructure s(Signature::graph(), 3);
  s.set_annotation(0, {"1", "2"});
  s.set_annotation(1, {"2", "1"});
  s.set_annotation(2, {"1", "1"});
  auto lin = linear_oracle(3)->bind(s);
  EXPECT_EQ(lin->rank({0, 1}), 1);  // (2,1) = 2 * (1,2) mod 3
  EXPECT_EQ(lin->rank({0, 2}), 2);
}

TEST(Oracles, MissingAnnotationIsOracleError) {
  FinStructure s(Signature::graph(), 2);
  s.set_annotation(0, {"1"});
  EXPECT_THROW(linear_oracle(2)->bind(s), OracleError);
  s.set_annotation(1, {"2"});
  EXPECT_THROW(linear_oracle(2)->bind(s), OracleError);
}

TEST(Delta, AbInitioExamples) {
  auto spec = PredimensionSpec::ab_initio();
  auto k3 = fixture("k3.txt");
  EXPECT_EQ(delta(spec, k3, {}), Rational(0));
  EXPECT_EQ(delta(spec, k3, k3.universe()), Rational(0));
  auto k4 = fixture("k4.txt");
  EXPECT_EQ(delta(spec, k4, k4.universe()), Rational(-2));
}

TEST(Delta, RationalWeights) {
  auto spec = PredimensionSpec::ab_initio();
  auto s = fixture("c4_chord_half.txt");
  EXPECT_EQ(delta(spec, s, s.universe()), Rational(4) - Rational(5, 2));
  auto t = fixture("ternary.txt");
  EXPECT_EQ(delta(spec, t, t.universe()), Rational(5) - Rational(4, 3) - Rational(1));
}

TEST(Delta, FusionExample) {
  auto spec = PredimensionSpec::fusion(2);
  FinStructure s(Signature::graph(), 3);
  s.set_annotation(0, {"1", "0"});
  s.set_annotation(1, {"0", "1"});
  s.set_annotation(2, {"1", "1"});
  // rank 2 + free rank 3 - cardinality 3
  EXPECT_EQ(delta(spec, s, s.universe()), Rational(2));
}

TEST(Delta, OutsideUniverseIsDomainError) {
  EXPECT_THROW(delta(PredimensionSpec::ab_initio(), fixture("k3.txt"), {0, 7}), DomainError);
}

TEST(DeltaRel, Examples) {
  auto spec = PredimensionSpec::ab_initio();
  auto k3 = fixture("k3.txt");
  EXPECT_EQ(delta_rel(spec, k3, {}, {0}), Rational(0));
  EXPECT_EQ(delta_rel(spec, k3, {1, 2}, {0}), Rational(-1));
  auto p = path(3);
  EXPECT_EQ(delta_rel(spec, p, {1}, {0, 2}), Rational(-1));
}

TEST(Spec, ParseSerializeRoundTrip) {
  auto spec = load_spec(fixture_path("fusion.spec"));
  EXPECT_TRUE(spec.relational);
  ASSERT_EQ(spec.matroids.size(), 2u);
  EXPECT_EQ(spec.cardinality_coefficient(), Rational(0));
  auto again = parse_spec_text(serialize_spec(spec));
  EXPECT_EQ(serialize_spec(again), serialize_spec(spec));
  EXPECT_TRUE(spec.uses_annotations());
}

TEST(Spec, ContractViolations) {
  EXPECT_THROW(parse_spec_text("component relational on\ncomponent matroid uniform-2 -1/1\n"),
               SpecError);
  auto broken = load_spec(fixture_path("broken.spec"));
  EXPECT_FALSE(broken.checked);
  EXPECT_EQ(broken.contract_violations().size(), 1u);
  EXPECT_THROW(parse_spec_text("component relational off\n"), SpecError);
  EXPECT_THROW(parse_spec_text("component relational on\ncomponent matroid linear-2 1/1\n"
                               "component matroid linear-3 1/1\n"),
               SpecError);
}

TEST(Spec, ParseErrorsCarryLines) {
  try {
    parse_spec_text("component relational on\n\ncomponent matroid nope 1/1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_spec_text("prune maybe\n"), ParseError);
}

TEST(Spec, IntegerValuedAndSingletonCap) {
  auto ab = PredimensionSpec::ab_initio();
  EXPECT_TRUE(ab.integer_valued(Signature::graph()));
  EXPECT_FALSE(ab.integer_valued(Signature::graph(Rational(1, 2))));
  EXPECT_EQ(ab.singleton_cap(), Rational(1));
  EXPECT_EQ(PredimensionSpec::fusion().singleton_cap(), Rational(1));
}

TEST(Submodularity, AbInitioSampled) {
  auto report = verify_submodularity(PredimensionSpec::ab_initio(), Signature::graph(),
                                     {2000, 10, 5});
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checked, 2000u);
}

TEST(Submodularity, EqualSetsGiveEquality) {
  auto spec = PredimensionSpec::ab_initio();
  auto s = fixture("k3_pendant.txt");
  ElementSet x{0, 3};
  EXPECT_EQ(delta(spec, s, x) + delta(spec, s, x), delta(spec, s, x | x) + delta(spec, s, x & x));
}

TEST(Submodularity, BrokenSpecIsCaught) {
  auto broken = load_spec(fixture_path("broken.spec"));
  auto report = verify_submodularity(broken, Signature::graph(), {2000, 8, 5});
  EXPECT_GT(report.violations, 0u);
  EXPECT_FALSE(report.witnesses.empty());
}

TEST(Submodularity, ExhaustiveOnFixtures) {
  auto spec = PredimensionSpec::ab_initio();
  for (const char* name : {"k3.txt", "k4.txt", "c4_chord_half.txt", "ternary.txt", "star5.txt"})
    EXPECT_TRUE(check_submodularity_exhaustive(spec, fixture(name)).passed()) << name;
  EXPECT_TRUE(
      check_submodularity_exhaustive(PredimensionSpec::fusion(), fixture("fusion4.txt")).passed());
}

TEST(Submodularity, ZeroBudgetIsVacuous) {
  auto report = verify_submodularity(PredimensionSpec::ab_initio(), Signature::graph(), {0, 8, 1});
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checked, 0u);
  EXPECT_FALSE(report.warnings.empty());
}
