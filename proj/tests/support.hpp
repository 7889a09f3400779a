#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>

#include "predim/structure.hpp"
#include "predim/text_format.hpp"

namespace predim {
inline void PrintTo(const ElementSet& s, std::ostream* os) { *os << s.to_string(); }
}  // namespace predim

namespace predim::testing {

inline FinStructure fixture(const std::string& name) {
  return load_structure(std::string(PREDIM_FIXTURES) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(PREDIM_FIXTURES) + "/" + name;
}

/// Graph with edge weight alpha.
inline FinStructure graph(std::size_t n, std::initializer_list<std::pair<Element, Element>> edges,
                          Rational alpha = Rational(1)) {
  FinStructure s(Signature::graph(alpha), n);
  for (auto [a, b] : edges) s.add_tuple(0, {a, b});
  return s;
}

inline FinStructure complete_graph(std::size_t n) {
  FinStructure s(Signature::graph(), n);
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) s.add_tuple(0, {a, b});
  return s;
}

inline FinStructure star(std::size_t leaves) {
  FinStructure s(Signature::graph(), leaves + 1);
  for (Element b = 1; b <= leaves; ++b) s.add_tuple(0, {0, b});
  return s;
}

inline FinStructure path(std::size_t n) {
  FinStructure s(Signature::graph(), n);
  for (Element a = 0; a + 1 < n; ++a) s.add_tuple(0, {a, a + 1});
  return s;
}

}  // namespace predim::testing
