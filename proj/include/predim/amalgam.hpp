#pragma once

#include <optional>

#include "predim/predimension.hpp"
#include "predim/report.hpp"

namespace predim {

struct AmalgamResult {
  FinStructure amalgam;
  Embedding left;
  Embedding right;
  ElementSet base;  // image of A
};

/// Glues B1 and B2 along A. B1 keeps its ids; the elements of B2 outside
/// the image of A follow in increasing order. No instance crosses the two
/// sides. Throws DomainError on invalid arrows and AmalgamError when the
/// annotations disagree on A.
AmalgamResult free_amalgam(const FinStructure& a, const FinStructure& b1, const FinStructure& b2,
                           const ElementMap& s1, const ElementMap& s2,
                           const AnnotationModel& model = exact_annotations());

/// Samples A <= B1, A <= B2 in the class and checks that the free amalgam is
/// in the class, both factors are strong in it, and delta adds up.
AuditReport verify_ap(const PredimensionSpec& spec, const Signature& sig,
                      const SamplingBounds& bounds);

/// Membership oracle for a bounded subclass, consulted by thrifty steps.
class MuContext {
 public:
  virtual ~MuContext() = default;
  /// True iff s lies in the bounded class; `fresh` are the elements just
  /// added to a structure that was already in it.
  virtual bool admits(const FinStructure& s, const ElementSet& fresh) const = 0;
};

struct ThriftyOutcome {
  enum class Kind { free_ok, embed_instead };
  Kind kind = Kind::free_ok;
  std::optional<AmalgamResult> amalgam;  // free_ok
  ElementMap embedding;                  // embed_instead: B -> M over A
};

/// The free amalgam of M and B over A when the bounded class admits it,
/// otherwise the first strong embedding of B into M over A. Throws
/// ThriftyFailure when neither exists and PreconditionError when tau(A)
/// is not strong in M.
ThriftyOutcome thrifty_step(const PredimensionSpec& spec, const MuContext& context,
                            const FinStructure& a, const FinStructure& b, const FinStructure& m,
                            const ElementMap& sigma, const ElementMap& tau);

}  // namespace predim
