#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "predim/structure.hpp"

namespace predim {

/// How per-element annotations behave under isomorphism. The owner of the
/// annotations (a matroid oracle) decides which relabelings of the
/// annotation data count as the same structure.
class AnnotationModel {
 public:
  virtual ~AnnotationModel() = default;

  virtual std::string name() const = 0;

  /// Appends a code for the annotations of the elements listed in `order`.
  /// Two sequences get the same code iff they are equivalent under the
  /// model's symmetry.
  virtual void encode(const FinStructure& s, std::span<const Element> order,
                      std::string& out) const = 0;

  /// Per-element invariant used to seed colour refinement.
  virtual std::string invariant(const FinStructure& s, Element e) const = 0;

  /// Annotations worth trying for element `next` of `partial` when
  /// enumerating extensions; elements [0, next) are already annotated.
  virtual std::vector<Annotation> extension_candidates(const FinStructure& partial,
                                                       Element next) const = 0;

  /// Annotations of the free amalgam of `left` and `right` glued along the
  /// base (base_left[i] and base_right[i] are the two copies of base element
  /// i). Left element j keeps id j; right element j becomes right_to_amalgam[j].
  /// Throws AmalgamError when the two sides disagree on the base.
  virtual std::vector<Annotation> amalgamate(const FinStructure& left, const FinStructure& right,
                                             std::span<const Element> base_left,
                                             std::span<const Element> base_right,
                                             std::span<const Element> right_to_amalgam,
                                             std::size_t amalgam_size) const = 0;

  virtual Annotation random_annotation(std::mt19937_64& rng) const = 0;

  struct Tuple {
    std::uint32_t kind = 0;
    std::vector<Element> elements;  // sorted
  };
  /// Relations among annotated elements that every symmetry of the model
  /// preserves; used only to sharpen colour refinement.
  virtual std::vector<Tuple> invariant_tuples(const FinStructure&) const { return {}; }
};

/// Annotations are opaque token lists compared for equality.
const AnnotationModel& exact_annotations();

/// Code equality of the two ordered annotation sequences.
bool annotations_equivalent(const AnnotationModel& model, const FinStructure& s,
                            std::span<const Element> s_order, const FinStructure& t,
                            std::span<const Element> t_order);

}  // namespace predim
