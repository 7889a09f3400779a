#pragma once

#include "predim/extensions.hpp"
#include "predim/predimension.hpp"
#include "predim/report.hpp"

namespace predim {

/// d(A/C) = delta(cl(A u C)) - delta(cl(C)), relative to the evaluator's
/// structure.
Rational dim(const Evaluator& ev, const ElementSet& a, const ElementSet& c);
Rational dim(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& a,
             const ElementSet& c);

/// Throws UnsupportedSpecError unless the spec is integer valued on sig and
/// singletons have delta at most 1 with that cap attained.
void require_gcl_support(const PredimensionSpec& spec, const Signature& sig);

/// d({a}/B) = 0.
bool gcl_member(const Evaluator& ev, Element a, const ElementSet& b);
bool gcl_member(const PredimensionSpec& spec, const FinStructure& m, Element a,
                const ElementSet& b);
/// All points of the geometric closure of B.
ElementSet gcl(const Evaluator& ev, const ElementSet& b);

/// Samples (B, c), then a from gcl(Bc) \ gcl(B), and checks c in gcl(Ba).
AuditReport check_exchange(const PredimensionSpec& spec, const FinStructure& m,
                           std::size_t budget, std::uint64_t seed);
/// Samples (X, Y, C) and checks d(XY/C) = d(X/YC) + d(Y/C).
AuditReport check_additivity(const PredimensionSpec& spec, const FinStructure& m,
                             std::size_t budget, std::uint64_t seed);
/// Samples B, B' and checks gcl is increasing, monotone and idempotent.
AuditReport check_gcl_closure(const PredimensionSpec& spec, const FinStructure& m,
                              std::size_t budget, std::uint64_t seed);

/// delta(B/A') < 0 for every A' strictly between A and B (first |A| ids).
bool is_minimal_extension(const Evaluator& ev, std::size_t base_size);

/// Minimal strong proper extensions with |B| <= n, tagged. Throws
/// DomainError unless n > |A|.
std::vector<ExtensionClass> enumerate_minimal_extensions(const PredimensionSpec& spec,
                                                         const FinStructure& a, std::size_t n);

/// The least A0 within the base (as base ids) that is strong in B and over
/// which A0 u (B \ A) is minimal and pre-algebraic. Throws AmbiguityError
/// when the qualifying sets have no least member, PreconditionError when the
/// class is not minimal pre-algebraic over its base.
ElementSet biminimal_base(const PredimensionSpec& spec, const ExtensionClass& cls);

/// The class of A0 < A0 u (B \ A) as a standalone extension (A0 first).
ExtensionClass restrict_to_base(const PredimensionSpec& spec, const ExtensionClass& cls,
                                const ElementSet& a0);

}  // namespace predim
