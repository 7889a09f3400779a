#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>

#include "predim/amalgam.hpp"
#include "predim/builder.hpp"
#include "predim/extensions.hpp"

namespace predim {

/// Bound on independent strong copies per bi-minimal pre-algebraic class,
/// keyed by the canonical code of the pair (A0, B).
struct MuFunction {
  enum class Rule {
    linear,    // a + b * |B \ A0|
    weighted,  // a + b * ceil(total relation weight of B)
  };
  std::map<CanonicalCode, std::size_t> table;
  Rule rule = Rule::linear;
  std::size_t a = 100;
  std::size_t b = 100;

  std::size_t operator()(const CanonicalCode& code, const ExtensionClass& cls) const;
};

/// Lines `mu <hex-code> <int>` and `mu-default linear|weighted <a> <b>`.
MuFunction parse_mu(std::istream& in);
MuFunction parse_mu_text(std::string_view text);
MuFunction load_mu(const std::filesystem::path& path);
std::string serialize_mu(const MuFunction& mu);

/// Code under which a bi-minimal class is looked up in the table.
CanonicalCode mu_key(const PredimensionSpec& spec, const ExtensionClass& cls);

/// Bi-minimal pre-algebraic classes over the labelled structure A0 with
/// |B| <= bound, one per pair code. Shared and thread-safe.
class BiminimalCache {
 public:
  struct Entry {
    ExtensionClass cls;
    CanonicalCode key;
  };
  const std::vector<Entry>& classes(const PredimensionSpec& spec, const FinStructure& a0,
                                    std::size_t bound);

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::string>, std::shared_ptr<std::vector<Entry>>> cache_;
};

/// Largest family of strong copies of cls.extension over A0 (which must be
/// listed in the class's base order via some identification) that are
/// pairwise disjoint over A0 and pairwise free. The search stops once the
/// count exceeds `cap`.
std::size_t count_independent_copies(const PredimensionSpec& spec, const FinStructure& m,
                                     const ElementSet& a0, const ExtensionClass& cls,
                                     std::size_t cap = SIZE_MAX);

struct MuViolation {
  ElementSet base;
  CanonicalCode code;
  std::size_t count = 0;
  std::size_t bound = 0;
};

struct MuReport {
  bool ok = true;
  std::vector<MuViolation> violations;
  std::size_t pairs_checked = 0;
};

/// Membership in C_mu for classes with |B| <= bound. Throws
/// PreconditionError when s is not in the class C.
MuReport in_class_mu(const PredimensionSpec& spec, const MuFunction& mu, const FinStructure& s,
                     std::size_t bound, BiminimalCache* cache = nullptr);
/// Same verdict, recounting only around `fresh`, for s obtained by adding
/// `fresh` to a structure already in C_mu.
MuReport in_class_mu_incremental(const PredimensionSpec& spec, const MuFunction& mu,
                                 const FinStructure& s, std::size_t bound,
                                 const ElementSet& fresh, BiminimalCache* cache = nullptr);

struct MuCheckRecord {
  std::size_t size = 0;
  bool incremental = false;
  bool full = false;
};

/// Membership oracle for C_mu; every query is also answered by a full
/// recount and both verdicts are logged.
class MuBoundedClass final : public MuContext {
 public:
  MuBoundedClass(PredimensionSpec spec, MuFunction mu, std::size_t bound);
  bool admits(const FinStructure& s, const ElementSet& fresh) const override;
  std::vector<MuCheckRecord> log() const;

 private:
  PredimensionSpec spec_;
  MuFunction mu_;
  std::size_t bound_;
  mutable std::shared_ptr<BiminimalCache> cache_;
  mutable std::mutex log_mutex_;
  mutable std::vector<MuCheckRecord> log_;
};

/// Discharges obligations by thrifty amalgamation along a chain of minimal
/// steps; tries the whole free amalgam first.
class ThriftyStrategy final : public ExtensionStrategy {
 public:
  explicit ThriftyStrategy(std::shared_ptr<MuBoundedClass> context)
      : context_(std::move(context)) {}
  StepResult extend(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& base,
                    const ExtensionClass& cls) override;
  const MuBoundedClass& context() const { return *context_; }

 private:
  std::shared_ptr<MuBoundedClass> context_;
};

/// Minimal chain A = C0 < C1 < ... < Ct = B of strong subsets of B, each
/// step a smallest strong enlargement (ties by element order).
std::vector<ElementSet> minimal_chain(const PredimensionSpec& spec, const FinStructure& b,
                                      const ElementSet& a);

struct CollapsedBuild {
  GenericApprox approx;
  std::shared_ptr<MuBoundedClass> context;
};

CollapsedBuild build_collapsed(const PredimensionSpec& spec, const Signature& sig,
                               const MuFunction& mu, std::size_t k, std::size_t budget,
                               std::uint64_t seed, std::size_t bound = 0);

}  // namespace predim
