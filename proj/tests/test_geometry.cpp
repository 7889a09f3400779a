#include <gtest/gtest.h>

#include "predim/builder.hpp"
#include "predim/errors.hpp"
#include "predim/geometry.hpp"
#include "support.hpp"

using namespace predim;
using namespace predim::testing;

namespace {

const PredimensionSpec kAb = PredimensionSpec::ab_initio();

ExtensionClass over(const FinStructure& b, std::size_t base_size) {
  ExtensionClass cls;
  cls.extension = b;
  cls.base = induced_substructure(b, ElementSet::range(base_size));
  return cls;
}

}  // namespace

TEST(Dim, Examples) {
  auto k3 = fixture("k3.txt");
  EXPECT_EQ(dim(kAb, k3, {0}, {}), Rational(0));
  EXPECT_EQ(dim(kAb, k3, k3.universe(), {}), Rational(0));
  auto p = path(3);
  EXPECT_EQ(dim(kAb, p, {0}, {}), Rational(1));
  EXPECT_EQ(dim(kAb, p, {0, 2}, {}), Rational(1));
  EXPECT_EQ(dim(kAb, p, {1}, {0}), Rational(0));
  EXPECT_EQ(dim(kAb, fixture("two_points.txt"), {0, 1}, {}), Rational(2));
  EXPECT_EQ(dim(kAb, fixture("two_points.txt"), {1}, {0}), Rational(1));
}

TEST(Dim, EmptyStructure) {
  FinStructure empty(Signature::graph(), 0);
  EXPECT_EQ(dim(kAb, empty, {}, {}), Rational(0));
}

TEST(Gcl, Membership) {
  auto p = path(3);
  EXPECT_TRUE(gcl_member(kAb, p, 1, {0, 2}));
  EXPECT_TRUE(gcl_member(kAb, p, 1, {0}));
  EXPECT_FALSE(gcl_member(kAb, p, 0, {}));
  EXPECT_TRUE(gcl_member(kAb, p, 0, {0}));
  auto two = fixture("two_points.txt");
  EXPECT_FALSE(gcl_member(kAb, two, 1, {0}));
  auto k3 = fixture("k3.txt");
  EXPECT_TRUE(gcl_member(kAb, k3, 2, {}));
}

TEST(Gcl, WholeClosure) {
  auto s = fixture("k3_pendant.txt");
  Evaluator ev(kAb, s);
  // delta of the whole structure is 0, so even the leaf is algebraic over nothing.
  EXPECT_EQ(gcl(ev, {}), s.universe());
  auto p4 = path(4);
  Evaluator pe(kAb, p4);
  EXPECT_EQ(gcl(pe, {}), ElementSet{});
  EXPECT_EQ(gcl(pe, {0, 3}), (ElementSet{0, 1, 2, 3}));
  EXPECT_EQ(gcl(pe, {1}), p4.universe());  // each neighbour adds an edge and a vertex
}

TEST(Gcl, UnsupportedSpecs) {
  EXPECT_NO_THROW(require_gcl_support(kAb, Signature::graph()));
  EXPECT_NO_THROW(require_gcl_support(PredimensionSpec::fusion(2), Signature::graph()));
  EXPECT_THROW(require_gcl_support(kAb, Signature::graph(Rational(1, 2))), UnsupportedSpecError);
  EXPECT_NO_THROW(require_gcl_support(kAb, Signature::graph(Rational(2))));
}

TEST(Geometry, ExchangeAndAdditivityOnABuild) {
  auto ga = build_generic(kAb, Signature::graph(), 3, 30, 1);
  auto ex = check_exchange(kAb, ga.current, 400, 2);
  EXPECT_TRUE(ex.passed()) << (ex.witnesses.empty() ? "" : ex.witnesses[0]);
  EXPECT_GT(ex.checked, 0u);
  auto add = check_additivity(kAb, ga.current, 400, 3);
  EXPECT_TRUE(add.passed()) << (add.witnesses.empty() ? "" : add.witnesses[0]);
  auto cl = check_gcl_closure(kAb, ga.current, 200, 4);
  EXPECT_TRUE(cl.passed()) << (cl.witnesses.empty() ? "" : cl.witnesses[0]);
}

TEST(Geometry, FusionBuildIsAPregeometry) {
  auto spec = PredimensionSpec::fusion(2);
  auto ga = build_generic(spec, Signature::graph(), 2, 20, 1);
  EXPECT_TRUE(check_exchange(spec, ga.current, 200, 2).passed());
  EXPECT_TRUE(check_additivity(spec, ga.current, 200, 3).passed());
}

TEST(MinimalExtensions, OverAPoint) {
  auto classes = enumerate_minimal_extensions(kAb, fixture("point.txt"), 2);
  ASSERT_EQ(classes.size(), 2u);
  std::size_t pre_algebraic = 0;
  for (const auto& c : classes) {
    EXPECT_TRUE(c.tags.strong);
    EXPECT_TRUE(c.tags.minimal);
    if (c.tags.pre_algebraic) {
      ++pre_algebraic;
      EXPECT_EQ(c.extension.instances().size(), 1u);
      EXPECT_EQ(c.delta, Rational(0));
    }
  }
  EXPECT_EQ(pre_algebraic, 1u);
}

TEST(MinimalExtensions, EveryClassIsMinimal) {
  auto classes = enumerate_minimal_extensions(kAb, fixture("edge.txt"), 4);
  EXPECT_FALSE(classes.empty());
  for (const auto& c : classes) {
    Evaluator ev(kAb, c.extension);
    EXPECT_TRUE(is_minimal_extension(ev, 2));
    EXPECT_GE(c.delta, Rational(0));
  }
}

TEST(MinimalExtensions, BoundMustExceedBase) {
  EXPECT_THROW(enumerate_minimal_extensions(kAb, fixture("edge.txt"), 2), DomainError);
}

TEST(MinimalExtensions, Examples) {
  // Two pendants on one vertex: a single pendant is an intermediate step with
  // delta(B/A') = 0.
  auto cherry = graph(3, {{0, 1}, {0, 2}});
  Evaluator two(kAb, cherry);
  EXPECT_FALSE(is_minimal_extension(two, 1));
  // A path between the two base points: every intermediate step has delta -1.
  auto bridge = graph(4, {{0, 2}, {2, 3}, {3, 1}});
  Evaluator p(kAb, bridge);
  EXPECT_TRUE(is_minimal_extension(p, 2));
}

TEST(Biminimal, PendantOverTwoPoints) {
  auto cls = over(graph(3, {{0, 2}}), 2);
  EXPECT_EQ(biminimal_base(kAb, cls), ElementSet{0});
  auto r = restrict_to_base(kAb, cls, {0});
  EXPECT_EQ(r.base.size(), 1u);
  EXPECT_EQ(r.extension.instances().size(), 1u);
  EXPECT_TRUE(r.tags.pre_algebraic);
}

TEST(Biminimal, TriangleOverEdge) {
  // Base edge {0,1} plus vertex 2 joined to both: delta(B/A) = -1, so the
  // class is not pre-algebraic.
  auto cls = over(graph(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
  EXPECT_THROW(biminimal_base(kAb, cls), PreconditionError);
}

TEST(Biminimal, NonPreAlgebraicIsRejected) {
  auto cls = over(fixture("two_points.txt"), 1);
  EXPECT_THROW(biminimal_base(kAb, cls), PreconditionError);
}
