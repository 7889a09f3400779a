#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "predim/annotation.hpp"
#include "predim/structure.hpp"

namespace predim {

/// Rank function of a matroid oracle, bound to the annotations of one
/// structure.
class BoundRank {
 public:
  virtual ~BoundRank() = default;
  virtual int rank(const ElementSet& x) const = 0;
};

class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;
  virtual std::string name() const = 0;
  virtual bool modular() const = 0;
  /// The free matroid is folded into the cardinality term by evaluators.
  virtual bool is_free() const { return false; }
  /// Throws OracleError when the structure's annotations are unusable.
  virtual std::unique_ptr<BoundRank> bind(const FinStructure& s) const = 0;
  /// Non-null when this oracle owns the per-element annotations.
  virtual const AnnotationModel* annotation_model() const { return nullptr; }

  int rank(const FinStructure& s, const ElementSet& x) const { return bind(s)->rank(x); }
};

using OraclePtr = std::shared_ptr<const MatroidOracle>;

/// rank = cardinality; modular.
OraclePtr free_oracle();
/// U_{k,n}: rank = min(|X|, k); not modular.
OraclePtr uniform_oracle(int k);
/// Rank of the annotation vectors over F_p (annotations are coordinate
/// tokens in 0..p-1, missing trailing coordinates read as 0); modular.
OraclePtr linear_oracle(std::uint32_t p);

/// Resolves `free`, `uniform-<k>`, `linear-<p>`. Throws SpecError.
OraclePtr make_oracle(std::string_view name);

/// Linear-algebra helpers over F_p used by the linear oracle.
namespace fp {

using Vector = std::vector<std::uint32_t>;

Vector parse_vector(const Annotation& tokens, std::uint32_t p);
Annotation format_vector(const Vector& v);
int rank(std::vector<Vector> rows, std::uint32_t p);
/// Nonzero rows of the reduced row echelon form of the matrix whose columns
/// are `columns`; equal for two column sequences iff they satisfy the same
/// linear dependencies.
std::vector<Vector> dependency_form(const std::vector<Vector>& columns, std::uint32_t p);
/// Coordinates of v in the given independent vectors, or empty when v lies
/// outside their span.
std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v,
                                  std::uint32_t p);

}  // namespace fp

}  // namespace predim
