#include <gtest/gtest.h>

#include <random>

#include "predim/audits.hpp"
#include "predim/errors.hpp"
#include "predim/predimension.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "support.hpp"

using namespace predim;
using namespace predim::testing;

namespace {
const PredimensionSpec kAb = PredimensionSpec::ab_initio();
}

TEST(IsStrong, EqualSetsAreStrong) {
  auto k3 = fixture("k3.txt");
  auto r = is_strong(kAb, k3, {0, 1}, {0, 1});
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.deficiency, Rational(0));
  EXPECT_FALSE(r.witness.has_value());
}

TEST(IsStrong, EndOfPath) {
  auto r = is_strong(kAb, path(3), {0}, {0, 1, 2});
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.deficiency, Rational(0));
  ASSERT_TRUE(r.witness.has_value());
}

TEST(IsStrong, VertexOfTriangle) {
  auto k3 = fixture("k3.txt");
  auto r = is_strong(kAb, k3, {0}, k3.universe());
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.deficiency, Rational(-1));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (ElementSet{1, 2}));
}

TEST(IsStrong, NotASubsetIsDomainError) {
  auto k3 = fixture("k3.txt");
  EXPECT_THROW(is_strong(kAb, k3, {0, 1}, {1, 2}), DomainError);
  EXPECT_THROW(is_strong(kAb, k3, {0}, {0, 9}), DomainError);
}

TEST(BruteForce, Examples) {
  auto k3 = fixture("k3.txt");
  EXPECT_TRUE(brute_force_is_strong(kAb, k3, {0, 1}, {0, 1}).verdict);
  auto r = brute_force_is_strong(kAb, k3, {0}, k3.universe());
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(*r.witness, (ElementSet{1, 2}));
}

TEST(BruteForce, RefusesAboveBound) {
  auto s = path(16);
  EXPECT_THROW(brute_force_is_strong(kAb, s, {0}, s.universe()), RefusalError);
  EXPECT_NO_THROW(brute_force_is_strong(kAb, s, {0, 1}, s.universe(), 14));
}

TEST(Closure, Examples) {
  auto k3 = fixture("k3.txt");
  EXPECT_EQ(closure(kAb, k3, {0}), k3.universe());
  EXPECT_EQ(closure(kAb, path(3), {0, 2}), (ElementSet{0, 1, 2}));
  EXPECT_EQ(closure(kAb, path(3), {0}), (ElementSet{0}));
  EXPECT_EQ(closure(kAb, k3, {}), ElementSet{});
}

TEST(Closure, LeastStrongSuperset) {
  // K3 with a pendant: closure of the pendant's neighbour is the triangle.
  auto s = fixture("k3_pendant.txt");
  EXPECT_EQ(closure(kAb, s, {0}), (ElementSet{0, 1, 2}));
  // The leaf pulls in the whole triangle: delta({0,1,2}/{3}) = -1.
  EXPECT_EQ(closure(kAb, s, {3}), s.universe());
  EXPECT_EQ(closure(kAb, path(4), {3}), (ElementSet{3}));
}

TEST(InClass, Examples) {
  EXPECT_TRUE(in_class(kAb, FinStructure(Signature::graph(), 0)));
  EXPECT_TRUE(in_class(kAb, fixture("k3.txt")));
  auto k4 = fixture("k4.txt");
  EXPECT_FALSE(in_class(kAb, k4));
  Evaluator ev(kAb, k4);
  auto w = class_witness(ev);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(ev.delta(*w), Rational(-2));
}

TEST(InClass, HalfWeightAllowsDenserGraphs) {
  auto spec = PredimensionSpec::ab_initio();
  EXPECT_TRUE(in_class(spec, fixture("c4_chord_half.txt")));
}

TEST(Minimizer, LeastMinimiserMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 2 + below(rng, 9);
    auto s = random_structure(Signature::graph(), n, 0.45, exact_annotations(), rng);
    Evaluator ev(kAb, s);
    ElementSet w = random_subset(s.universe(), rng, 0.3);
    ElementSet k = s.universe() - w;
    auto got = minimize_extension(ev, w, k, true);
    // Brute force: minimum value and the intersection of all minimisers.
    std::int64_t best = 0;
    std::int64_t best_nonempty = INT64_MAX;
    auto kv = k.to_vector();
    std::vector<ElementSet> minimisers{ElementSet{}};
    for (std::uint32_t mask = 1; mask < (1u << kv.size()); ++mask) {
      ElementSet x;
      for (std::size_t j = 0; j < kv.size(); ++j)
        if (mask & (1u << j)) x.insert(kv[j]);
      std::int64_t v = ev.scaled_delta(w | x) - ev.scaled_delta(w);
      best_nonempty = std::min(best_nonempty, v);
      if (v < best) {
        best = v;
        minimisers = {x};
      } else if (v == best) {
        minimisers.push_back(x);
      }
    }
    ElementSet least = minimisers[0];
    for (const auto& m : minimisers) least &= m;
    EXPECT_EQ(got.value, best);
    EXPECT_EQ(got.least, least);
    if (!k.empty()) {
      ASSERT_TRUE(got.nonempty_value.has_value());
      EXPECT_EQ(*got.nonempty_value, best_nonempty);
      EXPECT_FALSE(got.nonempty_witness.empty());
      EXPECT_EQ(ev.scaled_delta(w | got.nonempty_witness) - ev.scaled_delta(w), best_nonempty);
    }
  }
}

TEST(Minimizer, PruningDoesNotChangeAnswers) {
  std::mt19937_64 rng(5);
  PredimensionSpec plain = PredimensionSpec::fusion(2);
  plain.prune = false;
  PredimensionSpec pruned = PredimensionSpec::fusion(2);
  for (int i = 0; i < 150; ++i) {
    std::size_t n = 1 + below(rng, 9);
    auto s = random_structure(Signature::graph(), n, 0.3, pruned.annotation_model(), rng);
    Evaluator a(plain, s);
    Evaluator b(pruned, s);
    ElementSet w = random_subset(s.universe(), rng, 0.3);
    auto x = is_strong(a, w, s.universe());
    auto y = is_strong(b, w, s.universe());
    EXPECT_EQ(x.verdict, y.verdict);
    EXPECT_EQ(x.deficiency, y.deficiency);
    EXPECT_EQ(closure(a, w), closure(b, w));
  }
}

TEST(OracleEquivalence, AbInitioSampled) {
  auto r = check_oracle_equivalence(kAb, Signature::graph(), {1500, 12, 9});
  EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
  EXPECT_EQ(r.checked, 1500u);
}

TEST(OracleEquivalence, TernarySignatureSampled) {
  Signature sig({{"R", 3, Rational(2, 3)}, {"E", 2, Rational(1)}});
  auto r = check_oracle_equivalence(kAb, sig, {500, 10, 4});
  EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
}

TEST(OracleEquivalence, FusionSampled) {
  auto r = check_oracle_equivalence(PredimensionSpec::fusion(2), Signature::graph(), {500, 10, 4});
  EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
}

TEST(StrongLaws, AbInitioSampled) {
  auto laws = check_strong_laws(kAb, Signature::graph(), {500, 10, 3});
  EXPECT_TRUE(laws.transitivity.passed());
  EXPECT_TRUE(laws.intersection.passed());
  EXPECT_TRUE(laws.absorption.passed());
  EXPECT_GT(laws.transitivity.checked, 0u);
}

TEST(StrongLaws, ZeroBudgetIsVacuous) {
  auto laws = check_strong_laws(kAb, Signature::graph(), {0, 10, 3});
  EXPECT_TRUE(laws.transitivity.passed());
  EXPECT_FALSE(laws.transitivity.warnings.empty());
}

TEST(Closure, ExhaustiveOnFixtures) {
  for (const char* name : {"k3.txt", "k4.txt", "k3_pendant.txt", "path4.txt", "star5.txt",
                           "c4_chord_half.txt", "ternary.txt"}) {
    auto r = check_closure_exhaustive(kAb, fixture(name));
    EXPECT_TRUE(r.passed()) << name << ": " << (r.witnesses.empty() ? "" : r.witnesses[0]);
  }
  auto r = check_closure_exhaustive(PredimensionSpec::fusion(), fixture("fusion4.txt"));
  EXPECT_TRUE(r.passed());
}

TEST(Closure, TableRefusesLargeStructures) {
  auto s = path(17);
  Evaluator ev(kAb, s);
  EXPECT_THROW(brute_force_closure_table(ev), RefusalError);
}
