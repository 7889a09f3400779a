#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "predim/annotation.hpp"
#include "predim/structure.hpp"

namespace predim {

/// Byte string equal for two structures iff they are isomorphic.
using CanonicalCode = std::string;

enum class BaseMode {
  none,       // plain isomorphism
  pointwise,  // isomorphism fixing the listed base elements one by one
  setwise,    // isomorphism mapping the base set onto itself
};

struct CanonicalLabeling {
  /// order[i] is the element that receives canonical label i.
  std::vector<Element> order;
  CanonicalCode code;
};

/// Individualisation-refinement search with automorphism pruning. Under
/// pointwise mode the base elements receive labels 0..m-1 in the given
/// order; under setwise mode they receive labels 0..m-1 in some order.
CanonicalLabeling canonical_labeling(const FinStructure& s, const AnnotationModel& model,
                                     std::span<const Element> base = {},
                                     BaseMode mode = BaseMode::none);

CanonicalCode canonical_form(const FinStructure& s,
                             const AnnotationModel& model = exact_annotations());

/// Code for isomorphism over a pointed base.
CanonicalCode canonical_form_over(const FinStructure& s, std::span<const Element> base,
                                  const AnnotationModel& model = exact_annotations());

/// Code for the isomorphism type of the pair (base set, s).
CanonicalCode canonical_form_pair(const FinStructure& s, const ElementSet& base,
                                  const AnnotationModel& model = exact_annotations());

/// Code of the empty structure.
const CanonicalCode& empty_code();

std::string to_hex(const CanonicalCode& code);
CanonicalCode from_hex(std::string_view hex);

}  // namespace predim
