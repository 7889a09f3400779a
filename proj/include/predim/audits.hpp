#pragma once

#include "predim/predimension.hpp"
#include "predim/report.hpp"

namespace predim {

struct StrongLawReports {
  AuditReport transitivity;
  AuditReport intersection;
  AuditReport absorption;
};

/// Transitivity of strong chains, closure of strong sets under
/// intersection, and absorption of zero-delta extensions, on random class
/// members.
StrongLawReports check_strong_laws(const PredimensionSpec& spec, const Signature& sig,
                                   const SamplingBounds& bounds);

/// is_strong against brute_force_is_strong on random (S, A, B) with
/// |B \ A| <= max_rest: verdict, deficiency, and the value of each witness.
AuditReport check_oracle_equivalence(const PredimensionSpec& spec, const Signature& sig,
                                     const SamplingBounds& bounds, std::size_t max_rest = 12);

/// closure(A) against the brute-force table for every subset A of s.
AuditReport check_closure_exhaustive(const PredimensionSpec& spec, const FinStructure& s);

/// Exhaustive submodularity over all pairs of subsets (small structures).
AuditReport check_submodularity_exhaustive(const PredimensionSpec& spec, const FinStructure& s);

}  // namespace predim
