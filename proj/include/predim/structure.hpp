#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "predim/element_set.hpp"
#include "predim/rational.hpp"

namespace predim {

class AnnotationModel;

using SymbolId = std::uint32_t;

enum class TupleSemantics {
  unordered_distinct,  // instances are sets of distinct elements
  ordered,             // instances are ordered tuples; entries may repeat
};

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  Rational weight{1};

  bool operator==(const Symbol&) const = default;
};

/// Relational signature with a positive rational weight per symbol.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols,
                     TupleSemantics semantics = TupleSemantics::unordered_distinct);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  TupleSemantics semantics() const { return semantics_; }
  std::optional<SymbolId> find(std::string_view name) const;

  /// One binary symbol `E` with the given weight.
  static Signature graph(Rational weight = Rational(1));

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
  TupleSemantics semantics_ = TupleSemantics::unordered_distinct;
};

struct Instance {
  SymbolId symbol = 0;
  std::vector<Element> elements;  // sorted under unordered semantics
  ElementSet support;
};

using Annotation = std::vector<std::string>;

/// Finite relational structure on the universe {0, ..., n-1}.
class FinStructure {
 public:
  FinStructure() = default;
  FinStructure(Signature signature, std::size_t n);

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return n_; }
  ElementSet universe() const { return ElementSet::range(n_); }

  /// Adds an instance; returns false when it is already present.
  /// Throws DomainError on arity mismatch, out-of-range entries, or
  /// repeated entries under unordered semantics.
  bool add_tuple(SymbolId symbol, std::vector<Element> elements);
  bool add_tuple(std::string_view symbol, std::vector<Element> elements);
  bool has_tuple(SymbolId symbol, std::vector<Element> elements) const;

  void set_annotation(Element e, Annotation tokens);
  const Annotation& annotation(Element e) const { return annotations_.at(e); }
  bool has_annotations() const;

  const std::vector<Instance>& instances() const { return instances_; }
  /// Indices into instances() of the instances containing e.
  const std::vector<std::uint32_t>& incident(Element e) const { return incidence_.at(e); }

  /// Normalised entries for a tuple (sorted under unordered semantics).
  std::vector<Element> normalize(std::vector<Element> elements) const;

  /// Instances sorted by (symbol, entries); used for equality and output.
  std::vector<std::pair<SymbolId, std::vector<Element>>> sorted_instances() const;

  /// Exact (labelled) equality.
  bool operator==(const FinStructure& other) const;

 private:
  Signature signature_;
  std::size_t n_ = 0;
  std::vector<Instance> instances_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::vector<Annotation> annotations_;
  std::set<std::pair<SymbolId, std::vector<Element>>> index_;
};

inline constexpr Element kUnmapped = std::numeric_limits<Element>::max();

/// map[i] is the image of source element i.
using ElementMap = std::vector<Element>;

struct Embedding {
  ElementMap map;

  Element operator()(Element e) const { return map.at(e); }
  ElementSet image(const ElementSet& s) const;
  ElementSet image() const;
};

/// The substructure induced on X, renumbered 0..|X|-1 in ascending order of
/// the original ids (so X.to_vector() maps new ids back to old ones).
FinStructure induced_substructure(const FinStructure& s, const ElementSet& x);

/// Relabels s: element i becomes new_id[i]; the result has size new_size.
FinStructure relabel(const FinStructure& s, const ElementMap& new_id, std::size_t new_size);

/// True iff f is injective and carries s isomorphically onto the
/// substructure of t induced on f(universe(s)), annotations compared under
/// the model's symmetry. Throws DomainError when f is undefined somewhere.
bool is_embedding(const ElementMap& f, const FinStructure& s, const FinStructure& t);
bool is_embedding(const ElementMap& f, const FinStructure& s, const FinStructure& t,
                  const AnnotationModel& model);

/// Total relation weight of the instances inside s.
Rational total_weight(const FinStructure& s);

}  // namespace predim
