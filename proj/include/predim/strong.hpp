#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "predim/predimension.hpp"

namespace predim {

struct StrongReport {
  bool verdict = true;
  /// min delta(X/A) over nonempty X within B\A; 0 when A = B.
  Rational deficiency{0};
  /// A nonempty set attaining the deficiency (absent only when A = B).
  std::optional<ElementSet> witness;
};

/// Exact minimum of X -> delta(W u X) - delta(W) over X within K, in the
/// evaluator's scaled units.
struct SubsetMinimum {
  std::int64_t value = 0;
  /// The inclusion-least minimiser (minimisers form a lattice).
  ElementSet least;
  /// Minimum over nonempty X, when requested and K is nonempty.
  std::optional<std::int64_t> nonempty_value;
  ElementSet nonempty_witness;
};

SubsetMinimum minimize_extension(const Evaluator& ev, const ElementSet& w, const ElementSet& k,
                                 bool need_nonempty);

/// A <= B: delta(X/A) >= 0 for every X within B\A. Throws DomainError
/// unless A is a subset of B and B of the universe.
StrongReport is_strong(const Evaluator& ev, const ElementSet& a, const ElementSet& b);
StrongReport is_strong(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& a,
                       const ElementSet& b);
/// A <= the whole structure.
bool strong_in(const Evaluator& ev, const ElementSet& a);

inline constexpr std::size_t kBruteForceBound = 14;

/// Exhaustive enumeration of the nonempty subsets of B\A. Throws
/// RefusalError when |B\A| exceeds the bound.
StrongReport brute_force_is_strong(const Evaluator& ev, const ElementSet& a, const ElementSet& b,
                                   std::size_t bound = kBruteForceBound);
StrongReport brute_force_is_strong(const PredimensionSpec& spec, const FinStructure& s,
                                   const ElementSet& a, const ElementSet& b,
                                   std::size_t bound = kBruteForceBound);

/// The least strong superset of A.
ElementSet closure(const Evaluator& ev, const ElementSet& a);
ElementSet closure(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& a);

/// delta(X) >= 0 for every X.
bool in_class(const Evaluator& ev);
bool in_class(const PredimensionSpec& spec, const FinStructure& s);
/// The least set of minimal negative delta, if any.
std::optional<ElementSet> class_witness(const Evaluator& ev);

/// Closure of every subset (indexed by bit mask) from a table of all delta
/// values; independent of the minimiser. Refuses more than 16 elements.
std::vector<std::uint32_t> brute_force_closure_table(const Evaluator& ev);

}  // namespace predim
