#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "predim/canonical.hpp"
#include "predim/errors.hpp"
#include "predim/extensions.hpp"
#include "predim/oracles.hpp"
#include "predim/predimension.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "support.hpp"

using namespace predim;
using namespace predim::testing;

TEST(ElementSet, BasicOperations) {
  ElementSet a{1, 3, 200};
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(200));
  EXPECT_FALSE(a.contains(2));
  EXPECT_EQ(a.to_string(), "{1,3,200}");
  ElementSet b{3, 4};
  EXPECT_EQ((a & b), (ElementSet{3}));
  EXPECT_EQ((a | b), (ElementSet{1, 3, 4, 200}));
  EXPECT_EQ((a - b), (ElementSet{1, 200}));
  EXPECT_TRUE((ElementSet{3}).subset_of(b));
  EXPECT_EQ(ElementSet::range(3), (ElementSet{0, 1, 2}));
}

TEST(ElementSet, ParsesLists) {
  EXPECT_EQ(parse_element_list("{0, 2,5}"), (ElementSet{0, 2, 5}));
  EXPECT_EQ(parse_element_list(""), ElementSet{});
  EXPECT_THROW(parse_element_list("1,x"), DomainError);
  EXPECT_THROW(parse_element_list("300"), DomainError);
}

TEST(InducedSubstructure, EdgeOfTriangle) {
  auto k3 = fixture("k3.txt");
  auto ab = induced_substructure(k3, {0, 1});
  EXPECT_EQ(ab.size(), 2u);
  ASSERT_EQ(ab.instances().size(), 1u);
  EXPECT_TRUE(ab.has_tuple(0, {0, 1}));
}

TEST(InducedSubstructure, WholeUniverseIsIdentity) {
  auto s = fixture("ternary.txt");
  EXPECT_EQ(induced_substructure(s, s.universe()), s);
}

TEST(InducedSubstructure, EmptySet) {
  auto e = induced_substructure(fixture("k3.txt"), {});
  EXPECT_EQ(e.size(), 0u);
  EXPECT_TRUE(e.instances().empty());
}

TEST(InducedSubstructure, Idempotent) {
  auto s = fixture("k3_pendant.txt");
  ElementSet x{0, 2, 3};
  auto once = induced_substructure(s, x);
  EXPECT_EQ(induced_substructure(once, once.universe()), once);
}

TEST(InducedSubstructure, OutsideUniverseIsDomainError) {
  EXPECT_THROW(induced_substructure(fixture("k3.txt"), {0, 5}), DomainError);
}

TEST(IsEmbedding, Examples) {
  auto k3 = fixture("k3.txt");
  EXPECT_TRUE(is_embedding({0, 1, 2}, k3, k3));
  auto edge = fixture("edge.txt");
  EXPECT_TRUE(is_embedding({0, 1}, edge, k3));
  // non-edge {a,c} of the path a-b-c onto an edge of K3
  auto ac = induced_substructure(path(3), {0, 2});
  EXPECT_FALSE(is_embedding({0, 1}, ac, k3));
  EXPECT_FALSE(is_embedding({0, 0}, edge, k3));
  EXPECT_THROW(is_embedding({0, kUnmapped}, edge, k3), DomainError);
}

TEST(TextFormat, RoundTrip) {
  for (const char* name : {"k3.txt", "k4.txt", "ternary.txt", "fusion4.txt", "empty_graph.txt"}) {
    auto s = fixture(name);
    auto again = parse_structure_text(serialize_structure(s));
    EXPECT_EQ(again, s) << name;
    EXPECT_EQ(serialize_structure(again), serialize_structure(s)) << name;
  }
}

TEST(TextFormat, OrderedSemantics) {
  auto s = parse_structure_text("universe 2\nsemantics ordered\nrel R 2 1/2\ntup R 1 0\ntup R 0 0\n");
  EXPECT_EQ(s.signature().semantics(), TupleSemantics::ordered);
  EXPECT_TRUE(s.has_tuple(0, {1, 0}));
  EXPECT_FALSE(s.has_tuple(0, {0, 1}));
  EXPECT_EQ(parse_structure_text(serialize_structure(s)), s);
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_structure_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("rel E 2 1/1\n"), 1u);
  EXPECT_EQ(line_of("universe 3\nrel E 2 1/1\ntup E 0 3\n"), 3u);
  EXPECT_EQ(line_of("universe 3\nrel E 2 1/1\ntup E 0 1\ntup E 1 0\n"), 4u);
  EXPECT_EQ(line_of("universe 3\n# c\nrel E 2 0/1\n"), 3u);
  EXPECT_EQ(line_of("universe 3\nrel E 2 1/1\ntup F 0 1\n"), 3u);
  EXPECT_EQ(line_of("universe 2\nrel E 2 1/1\ntup E 0 0\n"), 3u);
  EXPECT_EQ(line_of("universe 2\nrel E 2 1/1\nbogus\n"), 3u);
}

TEST(TextFormat, Maps) {
  auto m = parse_map_text("map 1 5\nmap 0 3\n");
  EXPECT_EQ(m, (ElementMap{3, 5}));
  EXPECT_EQ(parse_map_text(serialize_map(m)), m);
  EXPECT_THROW(parse_map_text("map 0 1\nmap 0 2\n"), ParseError);
  EXPECT_THROW(parse_map_text("map 1 1\n"), ParseError);
}

TEST(Rational, PrintsLowestTerms) {
  EXPECT_EQ(to_string(Rational(4, -6)), "-2/3");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_TRUE(Rational(0) == 0);
  EXPECT_TRUE(Rational(1, 2) != 0);
}

FinStructure relabelled(const FinStructure& s, std::mt19937_64& rng) {
  ElementMap perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(s, perm, s.size());
}

TEST(CanonicalForm, K3LabelingsAgree) {
  auto k3 = fixture("k3.txt");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(canonical_form(relabelled(k3, rng)), canonical_form(k3));
}

TEST(CanonicalForm, K3DiffersFromPath) {
  EXPECT_NE(canonical_form(fixture("k3.txt")), canonical_form(path(3)));
}

TEST(CanonicalForm, EmptySentinel) {
  EXPECT_EQ(canonical_form(FinStructure(Signature::graph(), 0)), empty_code());
  EXPECT_EQ(to_hex(empty_code()), "00");
  EXPECT_EQ(from_hex(to_hex(canonical_form(path(4)))), canonical_form(path(4)));
}

TEST(CanonicalForm, RandomRelabelingsAgreeAndDistinguish) {
  std::mt19937_64 rng(11);
  auto sig = Signature::graph();
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + below(rng, 9);
    auto s = random_structure(sig, n, 0.4, exact_annotations(), rng);
    auto code = canonical_form(s);
    EXPECT_EQ(canonical_form(relabelled(s, rng)), code);
    // Toggling one pair changes the edge count, hence the class.
    if (n >= 2) {
      FinStructure t(sig, n);
      for (const auto& inst : s.instances())
        if (!(inst.elements[0] == 0 && inst.elements[1] == 1)) t.add_tuple(0, inst.elements);
      if (!s.has_tuple(0, {0, 1})) t.add_tuple(0, {0, 1});
      EXPECT_NE(canonical_form(t), code);
    }
  }
}

TEST(CanonicalForm, SymmetricGraphsAreFast) {
  // Disjoint union of many triangles and a large star.
  FinStructure s(Signature::graph(), 60);
  for (Element t = 0; t < 10; ++t) {
    s.add_tuple(0, {3 * t, 3 * t + 1});
    s.add_tuple(0, {3 * t + 1, 3 * t + 2});
    s.add_tuple(0, {3 * t, 3 * t + 2});
  }
  for (Element e = 31; e < 60; ++e) s.add_tuple(0, {30, e});
  std::mt19937_64 rng(3);
  EXPECT_EQ(canonical_form(relabelled(s, rng)), canonical_form(s));
}

TEST(CanonicalForm, LinearAnnotationsUpToChangeOfBasis) {
  const auto& model = *linear_oracle(2)->annotation_model();
  auto s = fixture("fusion4.txt");
  // Apply the invertible map (x, y, z) -> (x + y, y, z) to every vector.
  FinStructure t = s;
  for (Element e = 0; e < s.size(); ++e) {
    auto v = s.annotation(e);
    int x = std::stoi(v[0]), y = std::stoi(v[1]);
    t.set_annotation(e, {std::to_string((x + y) % 2), v[1], v[2]});
  }
  EXPECT_EQ(canonical_form(t, model), canonical_form(s, model));
  EXPECT_NE(canonical_form(t), canonical_form(s));
  // Making element 3 parallel to element 0 changes the matroid.
  FinStructure u = s;
  u.set_annotation(3, {"1", "0", "0"});
  EXPECT_NE(canonical_form(u, model), canonical_form(s, model));
}

TEST(CanonicalForm, PointedAndSetwiseBases) {
  auto p = path(3);
  // Pointed at an end vs the middle.
  std::vector<Element> end{0};
  std::vector<Element> middle{1};
  std::vector<Element> other_end{2};
  EXPECT_NE(canonical_form_over(p, end), canonical_form_over(p, middle));
  EXPECT_EQ(canonical_form_over(p, end), canonical_form_over(p, other_end));
  std::vector<Element> ab{0, 1};
  std::vector<Element> ba{1, 0};
  EXPECT_NE(canonical_form_over(p, ab), canonical_form_over(p, ba));
  EXPECT_EQ(canonical_form_pair(p, {0, 1}), canonical_form_pair(p, {1, 2}));
  EXPECT_NE(canonical_form_pair(p, {0, 1}), canonical_form_pair(p, {0, 2}));
}

TEST(EnumerateExtensions, SingleVertexToTwo) {
  auto spec = PredimensionSpec::ab_initio();
  auto a = fixture("point.txt");
  auto filter = [&](const FinStructure& b) { return in_class(spec, b); };
  auto classes = enumerate_extensions(a, 2, a.signature(), filter);
  ASSERT_EQ(classes.size(), 2u);
  std::size_t edges = classes[0].extension.instances().size() + classes[1].extension.instances().size();
  EXPECT_EQ(edges, 1u);
}

TEST(EnumerateExtensions, EmptyToOne) {
  auto spec = PredimensionSpec::ab_initio();
  auto a = fixture("empty_graph.txt");
  auto classes = enumerate_extensions(a, 1, a.signature(),
                                      [&](const FinStructure& b) { return in_class(spec, b); });
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].extension.size(), 1u);
}

TEST(EnumerateExtensions, NoRoomAndBadBound) {
  auto a = fixture("edge.txt");
  auto all = [](const FinStructure&) { return true; };
  EXPECT_TRUE(enumerate_extensions(a, 2, a.signature(), all).empty());
  EXPECT_THROW(enumerate_extensions(a, 1, a.signature(), all), DomainError);
}

TEST(EnumerateExtensions, OneRepresentativePerClass) {
  auto a = fixture("point.txt");
  auto all = [](const FinStructure&) { return true; };
  auto classes = enumerate_extensions(a, 3, a.signature(), all);
  // Over a pointed vertex, graphs on 2 new vertices: the new pair is an edge
  // or not, and each new vertex attaches to the base or not, up to swapping.
  // Plus the 2 one-vertex extensions.
  std::size_t three = 0;
  for (const auto& c : classes) three += c.extension.size() == 3 ? 1 : 0;
  EXPECT_EQ(classes.size() - three, 2u);
  EXPECT_EQ(three, 6u);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) EXPECT_NE(classes[i].code, classes[j].code);
}
