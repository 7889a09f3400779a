#include <gtest/gtest.h>

#include "predim/amalgam.hpp"
#include "predim/canonical.hpp"
#include "predim/collapse.hpp"
#include "predim/errors.hpp"
#include "predim/oracles.hpp"
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
  cls.delta = Rational(0);
  return cls;
}

std::shared_ptr<MuBoundedClass> pendant_bounded(std::size_t bound) {
  MuFunction mu;
  mu.table[mu_key(kAb, pendant_class())] = bound;
  return std::make_shared<MuBoundedClass>(kAb, mu, 2);
}

}  // namespace

TEST(FreeAmalgam, IdentityArrowsGiveA) {
  auto a = fixture("edge.txt");
  auto r = free_amalgam(a, a, a, {0, 1}, {0, 1});
  EXPECT_EQ(r.amalgam, a);
  EXPECT_EQ(r.base, (ElementSet{0, 1}));
}

TEST(FreeAmalgam, TwoEdgesOverAVertex) {
  auto a = fixture("point.txt");
  auto e = fixture("edge.txt");
  auto r = free_amalgam(a, e, e, {0}, {0});
  EXPECT_EQ(r.amalgam.size(), 3u);
  EXPECT_EQ(r.amalgam.instances().size(), 2u);
  EXPECT_EQ(canonical_form(r.amalgam), canonical_form(path(3)));
  EXPECT_EQ(r.right.map, (ElementMap{0, 2}));
}

TEST(FreeAmalgam, TrianglesOverAnEdge) {
  auto a = fixture("edge.txt");
  auto k3 = fixture("k3.txt");
  auto r = free_amalgam(a, k3, k3, {0, 1}, {0, 1});
  EXPECT_EQ(r.amalgam.size(), 4u);
  EXPECT_EQ(r.amalgam.instances().size(), 5u);
  EXPECT_FALSE(r.amalgam.has_tuple(0, {2, 3}));
}

TEST(FreeAmalgam, InvalidArrows) {
  auto a = fixture("edge.txt");
  auto k3 = fixture("k3.txt");
  auto two = fixture("two_points.txt");
  EXPECT_THROW(free_amalgam(two, k3, k3, {0, 1}, {0, 1}), DomainError);
  EXPECT_THROW(free_amalgam(a, k3, k3, {0, 0}, {0, 1}), DomainError);
  EXPECT_THROW(free_amalgam(a, k3, k3, {0, 1}, {0}), DomainError);
}

TEST(FreeAmalgam, LinearAnnotationsAreGluedAlongTheBase) {
  const auto& model = *linear_oracle(2)->annotation_model();
  FinStructure a(Signature::graph(), 1);
  a.set_annotation(0, {"1", "0"});
  FinStructure b1(Signature::graph(), 2);
  b1.set_annotation(0, {"1", "0"});
  b1.set_annotation(1, {"0", "1"});
  FinStructure b2(Signature::graph(), 2);
  b2.set_annotation(0, {"0", "1"});  // same base up to change of basis
  b2.set_annotation(1, {"1", "1"});
  auto r = free_amalgam(a, b1, b2, {0}, {0}, model);
  auto rank = linear_oracle(2)->bind(r.amalgam);
  EXPECT_EQ(rank->rank(r.amalgam.universe()), 3);
  EXPECT_EQ(rank->rank({0, 1}), 2);
  EXPECT_EQ(rank->rank({0, 2}), 2);
}

TEST(FreeAmalgam, AnnotationConflicts) {
  const auto& model = *linear_oracle(2)->annotation_model();
  FinStructure a(Signature::graph(), 2);
  a.set_annotation(0, {"1", "0"});
  a.set_annotation(1, {"0", "1"});
  FinStructure b(Signature::graph(), 2);
  b.set_annotation(0, {"1", "0"});
  b.set_annotation(1, {"1", "0"});  // parallel on this side only
  EXPECT_THROW(free_amalgam(a, a, b, {0, 1}, {0, 1}, model), DomainError);
  std::vector<Element> base{0, 1};
  EXPECT_THROW(model.amalgamate(a, b, base, base, base, 2), AmalgamError);
  FinStructure x(Signature::graph(), 1);
  FinStructure y(Signature::graph(), 1);
  x.set_annotation(0, {"p"});
  y.set_annotation(0, {"q"});
  std::vector<Element> one{0};
  EXPECT_THROW(exact_annotations().amalgamate(x, y, one, one, one, 1), AmalgamError);
}

TEST(VerifyAp, AbInitioSampled) {
  auto r = verify_ap(kAb, Signature::graph(), {1000, 8, 2});
  EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
  EXPECT_GT(r.checked, 0u);
  EXPECT_GT(r.skipped, 0u);  // bases that are not strong are filtered out
}

TEST(VerifyAp, FusionSampled) {
  auto r = verify_ap(PredimensionSpec::fusion(2), Signature::graph(), {300, 7, 3});
  EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
}

TEST(VerifyAp, TrivialAmalgamIsInClass) {
  auto a = fixture("k3.txt");
  auto r = free_amalgam(a, a, a, {0, 1, 2}, {0, 1, 2});
  EXPECT_TRUE(in_class(kAb, r.amalgam));
}

TEST(Thrifty, UnconstrainedMuAmalgamatesFreely) {
  auto ctx = std::make_shared<MuBoundedClass>(kAb, MuFunction{}, 2);
  auto m = star(2);
  auto out = thrifty_step(kAb, *ctx, fixture("point.txt"), fixture("edge.txt"), m, {0}, {0});
  EXPECT_EQ(out.kind, ThriftyOutcome::Kind::free_ok);
  ASSERT_TRUE(out.amalgam.has_value());
  EXPECT_EQ(canonical_form(out.amalgam->amalgam), canonical_form(star(3)));
}

TEST(Thrifty, BoundedPendantEmbedsInstead) {
  auto ctx = pendant_bounded(2);
  auto m = star(2);
  auto out = thrifty_step(kAb, *ctx, fixture("point.txt"), fixture("edge.txt"), m, {0}, {0});
  EXPECT_EQ(out.kind, ThriftyOutcome::Kind::embed_instead);
  ASSERT_EQ(out.embedding.size(), 2u);
  EXPECT_EQ(out.embedding[0], 0u);
  EXPECT_TRUE(out.embedding[1] == 1 || out.embedding[1] == 2);
}

TEST(Thrifty, PositiveDeltaIsNotConstrained) {
  auto ctx = pendant_bounded(1);
  auto m = star(2);
  // B adds an isolated vertex over the centre: delta(B/A) = 1.
  auto out = thrifty_step(kAb, *ctx, fixture("point.txt"), fixture("two_points.txt"), m, {0}, {0});
  EXPECT_EQ(out.kind, ThriftyOutcome::Kind::free_ok);
}

TEST(Thrifty, BaseMustBeStrong) {
  auto ctx = std::make_shared<MuBoundedClass>(kAb, MuFunction{}, 2);
  auto m = path(3);
  auto a = fixture("two_points.txt");
  auto b = fixture("two_points.txt");
  EXPECT_THROW(thrifty_step(kAb, *ctx, a, b, m, {0, 1}, {0, 2}), PreconditionError);
}

TEST(Thrifty, FailureIsSurfaced) {
  // Bound 1 on pendants: the free amalgam has two, and a point has no room.
  auto ctx = pendant_bounded(1);
  auto m = fixture("point.txt");
  auto b = star(2);
  EXPECT_THROW(thrifty_step(kAb, *ctx, fixture("point.txt"), b, m, {0}, {0}), ThriftyFailure);
}
