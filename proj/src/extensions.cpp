#include "predim/extensions.hpp"

#include <map>

#include "predim/errors.hpp"
#include "predim/sampling.hpp"

namespace predim {

namespace {

/// Annotation choices for the new elements, one element at a time.
void annotate(FinStructure& b, Element next, const AnnotationModel& model,
              const std::function<void(const FinStructure&)>& emit) {
  if (next == b.size()) {
    emit(b);
    return;
  }
  for (auto& ann : model.extension_candidates(b, next)) {
    b.set_annotation(next, ann);
    annotate(b, next + 1, model, emit);
  }
}

}  // namespace

std::vector<ExtensionClass> enumerate_extensions(const FinStructure& a, std::size_t n,
                                                 const Signature& sig,
                                                 const ExtensionFilter& filter,
                                                 const AnnotationModel& model) {
  if (n < a.size()) throw DomainError("size bound below |A|");
  if (!(sig == a.signature())) throw DomainError("signature differs from the base's");
  const std::size_t m = a.size();
  std::vector<Element> base_order(m);
  for (Element i = 0; i < m; ++i) base_order[i] = i;

  std::map<std::pair<std::size_t, CanonicalCode>, ExtensionClass> found;
  for (std::size_t size = m + 1; size <= n; ++size) {
    std::vector<std::pair<SymbolId, std::vector<Element>>> candidates;
    for (SymbolId id = 0; id < sig.size(); ++id) {
      for (auto& t : all_tuples(sig, id, size, 1u << 20)) {
        bool touches = std::any_of(t.begin(), t.end(), [&](Element e) { return e >= m; });
        if (touches) candidates.emplace_back(id, std::move(t));
      }
    }
    if (candidates.size() > kMaxCandidateTuples)
      throw DomainError("extension enumeration needs " + std::to_string(candidates.size()) +
                        " candidate tuples; cap is " + std::to_string(kMaxCandidateTuples));

    FinStructure skeleton(sig, size);
    for (const auto& inst : a.instances()) skeleton.add_tuple(inst.symbol, inst.elements);
    for (Element e = 0; e < m; ++e) skeleton.set_annotation(e, a.annotation(e));

    annotate(skeleton, static_cast<Element>(m), model, [&](const FinStructure& annotated) {
      const std::uint64_t subsets = std::uint64_t{1} << candidates.size();
      for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        FinStructure b = annotated;
        for (std::size_t i = 0; i < candidates.size(); ++i)
          if (mask & (std::uint64_t{1} << i)) b.add_tuple(candidates[i].first, candidates[i].second);
        if (!filter(b)) continue;
        CanonicalCode code = canonical_form_over(b, base_order, model);
        auto key = std::make_pair(size, code);
        if (found.count(key)) continue;
        ExtensionClass cls;
        cls.base = a;
        cls.extension = std::move(b);
        cls.code = std::move(code);
        found.emplace(std::move(key), std::move(cls));
      }
    });
  }
  std::vector<ExtensionClass> out;
  out.reserve(found.size());
  for (auto& [key, cls] : found) out.push_back(std::move(cls));
  return out;
}

}  // namespace predim
