#pragma once

#include <functional>
#include <vector>

#include "predim/canonical.hpp"
#include "predim/structure.hpp"

namespace predim {

struct ExtensionTags {
  bool strong = false;
  bool minimal = false;
  bool pre_algebraic = false;
};

/// An isomorphism class over A of extensions A < B. The extension's first
/// |A| elements are A itself, in order.
struct ExtensionClass {
  FinStructure base;
  FinStructure extension;
  ExtensionTags tags;
  Rational delta{0};  // delta(B/A), once a spec has been applied
  CanonicalCode code;  // canonical code of B over the pointed base

  std::size_t base_size() const { return base.size(); }
  ElementSet base_set() const { return ElementSet::range(base.size()); }
  ElementSet new_elements() const { return extension.universe() - base_set(); }
};

using ExtensionFilter = std::function<bool(const FinStructure& extension)>;

/// One representative per isomorphism-over-A class of proper extensions B
/// with |B| <= n that pass the filter, ordered by (|B|, code). Throws
/// DomainError when n < |A| or when sig differs from A's signature.
std::vector<ExtensionClass> enumerate_extensions(const FinStructure& a, std::size_t n,
                                                 const Signature& sig,
                                                 const ExtensionFilter& filter,
                                                 const AnnotationModel& model = exact_annotations());

/// Upper limit on candidate tuples per extension size.
inline constexpr std::size_t kMaxCandidateTuples = 22;

}  // namespace predim
