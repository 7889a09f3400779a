#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "predim/strong.hpp"

namespace predim {

/// Memoised strongness and closure queries on one structure.
class StrongCache {
 public:
  explicit StrongCache(const Evaluator& ev) : ev_(ev) {}
  const Evaluator& evaluator() const { return ev_; }
  bool strong(const ElementSet& x);
  ElementSet closure(const ElementSet& x);

 private:
  const Evaluator& ev_;
  std::mutex mutex_;
  std::unordered_map<ElementSet, bool, ElementSetHash> strong_;
  std::unordered_map<ElementSet, ElementSet, ElementSetHash> closure_;
};

/// Embeddings f of `pattern` into the cache's structure with f(i) =
/// base_map[i] wherever base_map[i] != kUnmapped, whose image is strong.
/// Candidates are visited in lexicographic order of the images of the
/// unmapped pattern elements (taken in id order); the visitor returns false
/// to stop. Returns the number of embeddings visited.
std::size_t for_each_strong_embedding(StrongCache& cache, const FinStructure& pattern,
                                      const ElementMap& base_map, const AnnotationModel& model,
                                      const std::function<bool(const ElementMap&)>& visit);

/// The first strong embedding in that order.
std::optional<ElementMap> find_strong_embedding(StrongCache& cache, const FinStructure& pattern,
                                                const ElementMap& base_map,
                                                const AnnotationModel& model);

/// base_map sending pattern element i to base[i] for i < |base|.
ElementMap pointed_base_map(std::span<const Element> base, std::size_t pattern_size);

}  // namespace predim
