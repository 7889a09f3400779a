#pragma once

#include <cstdint>
#include <random>

#include "predim/predimension.hpp"

namespace predim {

/// Independent stream seed for sample i of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i);

/// Uniform in [0, n).
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n);

/// Each element of `from` kept with probability p.
ElementSet random_subset(const ElementSet& from, std::mt19937_64& rng, double p = 0.5);

/// Random structure on n elements: each possible instance present with the
/// given probability, plus random annotations from the model.
FinStructure random_structure(const Signature& sig, std::size_t n, double density,
                              const AnnotationModel& model, std::mt19937_64& rng);

/// Random member of the class: instances are proposed in random order and
/// kept only while every subset keeps delta >= 0.
FinStructure random_class_member(const PredimensionSpec& spec, const Signature& sig,
                                 std::size_t n, std::mt19937_64& rng, double density = 0.5);

/// Random class member extending A (which must be in the class): A keeps
/// ids 0..|A|-1, `extra` new elements follow, and instances touching them
/// are proposed in random order and kept while membership holds.
FinStructure random_class_extension(const PredimensionSpec& spec, const FinStructure& a,
                                    std::size_t extra, std::mt19937_64& rng,
                                    double density = 0.5);

/// Closure of a random subset.
ElementSet random_strong_subset(const Evaluator& ev, std::mt19937_64& rng, double p = 0.3);

/// All possible instance tuples for the symbol (normalised), when few enough.
std::vector<std::vector<Element>> all_tuples(const Signature& sig, SymbolId symbol, std::size_t n,
                                             std::size_t cap);

}  // namespace predim
