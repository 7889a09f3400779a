#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "predim/oracles.hpp"
#include "predim/report.hpp"
#include "predim/structure.hpp"

namespace predim {

struct MatroidComponent {
  OraclePtr oracle;
  Rational coefficient;
};

/// delta(X) = [relational] (|X| - sum alpha_R |R(X)|) + sum_j c_j rank_j(X).
class PredimensionSpec {
 public:
  bool relational = true;
  std::vector<MatroidComponent> matroids;
  /// Lets the strong-set minimiser use its bound and decomposition prunes.
  bool prune = true;
  /// When false, contract violations are tolerated (for negative tests).
  bool checked = true;

  static PredimensionSpec ab_initio();
  /// relational + linear rank over F_p - cardinality.
  static PredimensionSpec fusion(std::uint32_t p = 2);

  std::vector<std::string> contract_violations() const;
  /// Throws SpecError on contract violations unless unchecked.
  void validate() const;

  /// Model of the annotation-owning oracle, or the exact model.
  const AnnotationModel& annotation_model() const;
  bool uses_annotations() const;

  /// Coefficient of |X| after folding in free-matroid components.
  Rational cardinality_coefficient() const;
  /// True when every delta value on structures over sig is an integer.
  bool integer_valued(const Signature& sig) const;
  /// Largest possible delta of a singleton.
  Rational singleton_cap() const;
};

PredimensionSpec parse_spec(std::istream& in);
PredimensionSpec parse_spec_text(std::string_view text);
PredimensionSpec load_spec(const std::filesystem::path& path);
std::string serialize_spec(const PredimensionSpec& spec);

/// delta bound to one structure. Values are kept internally as integers
/// over the common denominator of all weights and coefficients.
class Evaluator {
 public:
  Evaluator(const PredimensionSpec& spec, const FinStructure& s);
  Evaluator(const PredimensionSpec&, FinStructure&&) = delete;
  Evaluator(PredimensionSpec&&, const FinStructure&) = delete;

  const PredimensionSpec& spec() const { return spec_; }
  const FinStructure& structure() const { return s_; }
  std::size_t size() const { return s_.size(); }

  Rational delta(const ElementSet& x) const;
  /// delta(A u B) - delta(B).
  Rational delta_rel(const ElementSet& a, const ElementSet& b) const;
  /// delta(W + v) - delta(W) for v outside W.
  Rational gain(Element v, const ElementSet& w) const;

  std::int64_t scale() const { return scale_; }
  Rational unscale(std::int64_t v) const { return Rational(v, scale_); }
  std::int64_t scaled_delta(const ElementSet& x) const;
  std::int64_t scaled_gain(Element v, const ElementSet& w) const;
  std::int64_t scaled_cardinality() const { return card_; }
  std::int64_t scaled_weight(std::size_t instance) const { return weights_[instance]; }

  struct RankTerm {
    std::int64_t coefficient;
    std::unique_ptr<BoundRank> rank;
  };
  /// Non-free matroid terms with nonzero coefficient.
  const std::vector<RankTerm>& rank_terms() const { return rank_terms_; }
  /// True when delta is a sum over relation-connected pieces.
  bool decomposable() const { return rank_terms_.empty(); }

  /// Throws DomainError when x leaves the universe.
  void require_subset(const ElementSet& x) const;

 private:
  const PredimensionSpec& spec_;
  const FinStructure& s_;
  ElementSet universe_;
  std::int64_t scale_ = 1;
  std::int64_t card_ = 0;
  std::vector<std::int64_t> weights_;
  std::vector<RankTerm> rank_terms_;
};

Rational delta(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& x);
Rational delta_rel(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& a,
                   const ElementSet& b);

struct SamplingBounds {
  std::size_t budget = 10000;
  std::size_t max_size = 10;
  std::uint64_t seed = 1;
};

/// Samples random (S, X, Y) and checks delta(X)+delta(Y) >= delta(XuY)+delta(X^Y).
AuditReport verify_submodularity(const PredimensionSpec& spec, const Signature& sig,
                                 const SamplingBounds& bounds);

}  // namespace predim
