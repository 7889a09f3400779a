#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "predim/extensions.hpp"
#include "predim/predimension.hpp"
#include "predim/strong_embeddings.hpp"

namespace predim {

/// Strong proper extensions A < B with B in the class and |B| <= k, per
/// labelled base structure. Shared between rounds and audits.
class ClassCache {
 public:
  const std::vector<ExtensionClass>& classes(const PredimensionSpec& spec, const FinStructure& a,
                                             std::size_t k);

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::string>, std::shared_ptr<std::vector<ExtensionClass>>>
      cache_;
};

/// Subsets of at most max_size elements that are strong in the cache's
/// structure, ordered by size then lexicographically.
std::vector<ElementSet> strong_subsets(StrongCache& cache, std::size_t max_size);

struct Task {
  ElementSet base;  // strong subset of the current structure
  std::shared_ptr<const ExtensionClass> extension;
  std::uint64_t key = 0;
};

struct StepRecord {
  std::size_t size_before = 0;
  std::size_t size_after = 0;
  ElementSet base;
  CanonicalCode code;
  std::string kind;
};

struct StepResult {
  FinStructure next;
  std::string kind;
};

/// How an unmet obligation is discharged. The result must contain the
/// current structure as a strong substructure on the same ids.
class ExtensionStrategy {
 public:
  virtual ~ExtensionStrategy() = default;
  virtual StepResult extend(const PredimensionSpec& spec, const FinStructure& m,
                            const ElementSet& base, const ExtensionClass& cls) = 0;
};

/// Free amalgamation of the class representative over the base.
class FreeStrategy final : public ExtensionStrategy {
 public:
  StepResult extend(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& base,
                    const ExtensionClass& cls) override;
};

struct GenericApprox {
  PredimensionSpec spec;
  Signature signature;
  std::size_t k = 0;
  std::size_t budget = 0;  // cap on the universe size
  std::uint64_t seed = 0;

  FinStructure current;
  std::vector<FinStructure> history;  // history[0] is the empty structure
  std::vector<StepRecord> steps;

  std::vector<Task> queue;  // remaining tasks of the open round
  bool round_open = false;
  bool round_added = false;
  std::size_t rounds = 0;
  bool complete = false;
  std::string stop_reason;

  std::shared_ptr<ClassCache> classes;
  std::shared_ptr<ExtensionStrategy> strategy;
};

GenericApprox build_generic(const PredimensionSpec& spec, const Signature& sig, std::size_t k,
                            std::size_t budget, std::uint64_t seed);
/// Same schedule with a custom extension strategy.
GenericApprox build_with_strategy(const PredimensionSpec& spec, const Signature& sig,
                                  std::size_t k, std::size_t budget, std::uint64_t seed,
                                  std::shared_ptr<ExtensionStrategy> strategy);
/// Raises the budget and continues the schedule where it stopped.
GenericApprox resume(GenericApprox ga, std::size_t extra_budget);

struct Obligation {
  ElementSet base;
  CanonicalCode code;
  std::size_t extension_size = 0;
};

struct RichnessReport {
  std::size_t satisfied = 0;
  std::size_t total = 0;
  std::vector<Obligation> unmet;
  Rational fraction() const {
    return total == 0 ? Rational(1) : Rational(static_cast<std::int64_t>(satisfied),
                                               static_cast<std::int64_t>(total));
  }
};

RichnessReport audit_richness(const PredimensionSpec& spec, const FinStructure& m, std::size_t k,
                              ClassCache* classes = nullptr);

}  // namespace predim
