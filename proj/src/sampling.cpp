#include "predim/sampling.hpp"

#include <algorithm>

#include "predim/errors.hpp"
#include "predim/strong.hpp"

namespace predim {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  return rng() % n;
}

namespace {

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

void tuples_rec(std::size_t n, std::size_t arity, bool ordered, std::vector<Element>& cur,
                std::vector<std::vector<Element>>& out, std::size_t cap) {
  if (out.size() > cap) return;
  if (cur.size() == arity) {
    out.push_back(cur);
    return;
  }
  Element start = (!ordered && !cur.empty()) ? cur.back() + 1 : 0;
  for (Element e = start; e < n; ++e) {
    cur.push_back(e);
    tuples_rec(n, arity, ordered, cur, out, cap);
    cur.pop_back();
  }
}

}  // namespace

ElementSet random_subset(const ElementSet& from, std::mt19937_64& rng, double p) {
  ElementSet out;
  for (Element e : from)
    if (coin(rng, p)) out.insert(e);
  return out;
}

std::vector<std::vector<Element>> all_tuples(const Signature& sig, SymbolId symbol, std::size_t n,
                                             std::size_t cap) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> cur;
  tuples_rec(n, sig.symbol(symbol).arity, sig.semantics() == TupleSemantics::ordered, cur, out,
             cap);
  if (out.size() > cap) throw DomainError("too many candidate tuples");
  return out;
}

FinStructure random_structure(const Signature& sig, std::size_t n, double density,
                              const AnnotationModel& model, std::mt19937_64& rng) {
  FinStructure s(sig, n);
  for (Element e = 0; e < n; ++e) s.set_annotation(e, model.random_annotation(rng));
  for (SymbolId id = 0; id < sig.size(); ++id) {
    for (auto& t : all_tuples(sig, id, n, 1u << 16))
      if (coin(rng, density)) s.add_tuple(id, t);
  }
  return s;
}

FinStructure random_class_member(const PredimensionSpec& spec, const Signature& sig,
                                 std::size_t n, std::mt19937_64& rng, double density) {
  const AnnotationModel& model = spec.annotation_model();
  std::vector<Annotation> annotations;
  for (std::size_t e = 0; e < n; ++e) annotations.push_back(model.random_annotation(rng));

  std::vector<std::pair<SymbolId, std::vector<Element>>> proposals;
  for (SymbolId id = 0; id < sig.size(); ++id)
    for (auto& t : all_tuples(sig, id, n, 1u << 16))
      if (coin(rng, density)) proposals.emplace_back(id, std::move(t));
  std::shuffle(proposals.begin(), proposals.end(), rng);

  FinStructure s(sig, n);
  for (Element e = 0; e < n; ++e) s.set_annotation(e, annotations[e]);
  for (auto& [id, t] : proposals) {
    FinStructure trial = s;
    trial.add_tuple(id, t);
    if (in_class(spec, trial)) s = std::move(trial);
  }
  return s;
}

FinStructure random_class_extension(const PredimensionSpec& spec, const FinStructure& a,
                                    std::size_t extra, std::mt19937_64& rng, double density) {
  const AnnotationModel& model = spec.annotation_model();
  const std::size_t m = a.size();
  const std::size_t n = m + extra;
  FinStructure s(a.signature(), n);
  for (const auto& inst : a.instances()) s.add_tuple(inst.symbol, inst.elements);
  for (Element e = 0; e < m; ++e) s.set_annotation(e, a.annotation(e));
  for (Element e = static_cast<Element>(m); e < n; ++e)
    s.set_annotation(e, model.random_annotation(rng));
  const Signature& sig = a.signature();
  std::vector<std::pair<SymbolId, std::vector<Element>>> proposals;
  for (SymbolId id = 0; id < sig.size(); ++id)
    for (auto& t : all_tuples(sig, id, n, 1u << 16)) {
      bool touches = std::any_of(t.begin(), t.end(), [&](Element e) { return e >= m; });
      if (touches && coin(rng, density)) proposals.emplace_back(id, std::move(t));
    }
  std::shuffle(proposals.begin(), proposals.end(), rng);
  for (auto& [id, t] : proposals) {
    FinStructure trial = s;
    trial.add_tuple(id, t);
    if (in_class(spec, trial)) s = std::move(trial);
  }
  return s;
}

ElementSet random_strong_subset(const Evaluator& ev, std::mt19937_64& rng, double p) {
  return closure(ev, random_subset(ev.structure().universe(), rng, p));
}

}  // namespace predim
