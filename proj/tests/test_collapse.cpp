#include <gtest/gtest.h>

#include <random>

#include "predim/builder.hpp"
#include "predim/canonical.hpp"
#include "predim/collapse.hpp"
#include "predim/errors.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "support.hpp"

using namespace predim;
using namespace predim::testing;

namespace {

const PredimensionSpec kAb = PredimensionSpec::ab_initio();

ExtensionClass pendant_class() {
  ExtensionClass cls;
  cls.base = FinStructure(Signature::graph(), 1);
  cls.extension = graph(2, {{0, 1}});
  return cls;
}

MuFunction pendant_mu(std::size_t bound) {
  MuFunction mu;
  mu.table[mu_key(kAb, pendant_class())] = bound;
  return mu;
}

}  // namespace

TEST(CountCopies, StarHasOnePerLeaf) {
  EXPECT_EQ(count_independent_copies(kAb, star(3), {0}, pendant_class()), 3u);
  EXPECT_EQ(count_independent_copies(kAb, star(5), {0}, pendant_class()), 5u);
  EXPECT_GT(count_independent_copies(kAb, star(5), {0}, pendant_class(), 2), 2u);
  EXPECT_EQ(count_independent_copies(kAb, star(5), {0}, pendant_class(), 9), 5u);
}

TEST(CountCopies, TriangleEdgesAreNotStrong) {
  // {0, 1} is not strong in K3: the third vertex has delta -1 over it.
  EXPECT_EQ(count_independent_copies(kAb, fixture("k3.txt"), {0}, pendant_class()), 0u);
}

TEST(CountCopies, NoCopy) {
  EXPECT_EQ(count_independent_copies(kAb, fixture("point.txt"), {0}, pendant_class()), 0u);
  EXPECT_EQ(count_independent_copies(kAb, fixture("two_points.txt"), {0}, pendant_class()), 0u);
  EXPECT_EQ(count_independent_copies(kAb, path(4), {1}, pendant_class()), 2u);
}

TEST(CountCopies, BaseOutsideUniverse) {
  EXPECT_THROW(count_independent_copies(kAb, path(2), {5}, pendant_class()), DomainError);
}

TEST(MuKey, DependsOnTheClassOnly) {
  auto a = pendant_class();
  auto b = pendant_class();
  b.extension = graph(2, {{1, 0}});
  EXPECT_EQ(mu_key(kAb, a), mu_key(kAb, b));
  auto c = pendant_class();
  c.extension = fixture("two_points.txt");
  EXPECT_NE(mu_key(kAb, a), mu_key(kAb, c));
}

TEST(InClassMu, BoundedPendants) {
  auto mu = pendant_mu(2);
  EXPECT_TRUE(in_class_mu(kAb, mu, path(5), 2).ok);
  EXPECT_TRUE(in_class_mu(kAb, mu, star(2), 2).ok);
  auto r = in_class_mu(kAb, mu, star(3), 2);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].base, ElementSet{0});
  EXPECT_EQ(r.violations[0].count, 3u);
  EXPECT_EQ(r.violations[0].bound, 2u);
  EXPECT_TRUE(in_class_mu(kAb, mu, FinStructure(Signature::graph(), 0), 2).ok);
}

TEST(InClassMu, OutsideTheClassIsRejected) {
  EXPECT_THROW(in_class_mu(kAb, pendant_mu(2), fixture("k4.txt"), 2), PreconditionError);
}

TEST(InClassMu, IncrementalAgreesWithFull) {
  std::mt19937_64 rng(3);
  auto mu = pendant_mu(2);
  std::size_t compared = 0;
  for (int i = 0; i < 120; ++i) {
    std::size_t n = 1 + below(rng, 7);
    auto s = random_structure(Signature::graph(), n, 0.35, exact_annotations(), rng);
    if (!in_class(kAb, s)) continue;
    ElementSet fresh = ElementSet::range(n) - ElementSet::range(below(rng, n));
    auto old = induced_substructure(s, s.universe() - fresh);
    if (!in_class_mu(kAb, mu, old, 2).ok) continue;
    EXPECT_EQ(in_class_mu_incremental(kAb, mu, s, 2, fresh).ok, in_class_mu(kAb, mu, s, 2).ok);
    ++compared;
  }
  EXPECT_GT(compared, 20u);
}

TEST(MuFile, ParseAndSerialize) {
  auto mu = load_mu(fixture_path("mu_default.txt"));
  EXPECT_TRUE(mu.table.empty());
  EXPECT_EQ(mu.rule, MuFunction::Rule::linear);
  EXPECT_EQ(mu.a, 100u);
  auto table = pendant_mu(3);
  table.rule = MuFunction::Rule::weighted;
  table.a = 2;
  table.b = 5;
  auto again = parse_mu_text(serialize_mu(table));
  EXPECT_EQ(serialize_mu(again), serialize_mu(table));
  EXPECT_EQ(again.table, table.table);
  EXPECT_EQ(again.rule, MuFunction::Rule::weighted);
  EXPECT_THROW(parse_mu_text("mu zz 3\n"), ParseError);
  EXPECT_THROW(parse_mu_text("mu-default cubic 1 1\n"), ParseError);
}

TEST(MuFunction, DefaultRule) {
  MuFunction mu;
  mu.a = 1;
  mu.b = 2;
  EXPECT_EQ(mu(CanonicalCode{}, pendant_class()), 3u);
  mu.table[CanonicalCode{}] = 9;
  EXPECT_EQ(mu(CanonicalCode{}, pendant_class()), 9u);
}

TEST(BuildCollapsed, UnconstrainedMatchesGeneric) {
  for (std::uint64_t seed : {1u, 2u}) {
    auto generic = build_generic(kAb, Signature::graph(), 3, 20, seed);
    auto collapsed = build_collapsed(kAb, Signature::graph(), MuFunction{}, 3, 20, seed);
    EXPECT_EQ(canonical_form(collapsed.approx.current), canonical_form(generic.current));
  }
}

TEST(BuildCollapsed, BoundedPendantsStayBounded) {
  auto mu = pendant_mu(3);
  auto b = build_collapsed(kAb, Signature::graph(), mu, 3, 20, 1, 2);
  EXPECT_TRUE(in_class(kAb, b.approx.current));
  EXPECT_TRUE(in_class_mu(kAb, mu, b.approx.current, 2).ok);
  for (const auto& rec : b.context->log()) EXPECT_EQ(rec.incremental, rec.full);
  EXPECT_GT(b.approx.current.size(), 0u);
}

TEST(BuildCollapsed, ZeroBudget) {
  auto b = build_collapsed(kAb, Signature::graph(), pendant_mu(2), 3, 0, 1);
  EXPECT_EQ(b.approx.current.size(), 0u);
}

TEST(MinimalChain, StepsAreStrong) {
  auto b = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  auto chain = minimal_chain(kAb, b, {0});
  ASSERT_GE(chain.size(), 2u);
  EXPECT_EQ(chain.front(), ElementSet{0});
  EXPECT_EQ(chain.back(), b.universe());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    EXPECT_TRUE(chain[i].subset_of(chain[i + 1]));
    EXPECT_TRUE(is_strong(kAb, b, chain[i], b.universe()).verdict);
  }
}
