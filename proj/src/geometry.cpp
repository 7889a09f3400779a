#include "predim/geometry.hpp"

#include <random>

#include "predim/errors.hpp"
#include "predim/parallel.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"

namespace predim {

Rational dim(const Evaluator& ev, const ElementSet& a, const ElementSet& c) {
  ev.require_subset(a | c);
  ElementSet outer = closure(ev, a | c);
  ElementSet inner = closure(ev, c);
  return ev.delta(outer) - ev.delta(inner);
}

Rational dim(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& a,
             const ElementSet& c) {
  return dim(Evaluator(spec, m), a, c);
}

void require_gcl_support(const PredimensionSpec& spec, const Signature& sig) {
  if (!spec.integer_valued(sig))
    throw UnsupportedSpecError("geometric closure needs an integer-valued predimension");
  if (spec.singleton_cap() != 1)
    throw UnsupportedSpecError("geometric closure needs singleton dimension cap 1, got " +
                               to_string(spec.singleton_cap()));
}

bool gcl_member(const Evaluator& ev, Element a, const ElementSet& b) {
  require_gcl_support(ev.spec(), ev.structure().signature());
  ev.require_subset(b.with(a));
  if (b.contains(a)) return true;
  return dim(ev, ElementSet{a}, b) == 0;
}

bool gcl_member(const PredimensionSpec& spec, const FinStructure& m, Element a,
                const ElementSet& b) {
  return gcl_member(Evaluator(spec, m), a, b);
}

ElementSet gcl(const Evaluator& ev, const ElementSet& b) {
  require_gcl_support(ev.spec(), ev.structure().signature());
  ElementSet out = b;
  ElementSet inner = closure(ev, b);
  Rational base = ev.delta(inner);
  for (Element a : ev.structure().universe() - b)
    if (ev.delta(closure(ev, inner.with(a))) == base) out.insert(a);
  return out;
}

namespace {

ElementSet small_subset(const ElementSet& universe, std::mt19937_64& rng, std::size_t max) {
  auto all = universe.to_vector();
  ElementSet out;
  std::size_t count = below(rng, std::min(max, all.size()) + 1);
  for (std::size_t i = 0; i < count; ++i) out.insert(all[below(rng, all.size())]);
  return out;
}

constexpr int kExchangeAttempts = 32;

Element random_element(const FinStructure& m, std::mt19937_64& rng) {
  return static_cast<Element>(below(rng, m.size()));
}

}  // namespace

AuditReport check_exchange(const PredimensionSpec& spec, const FinStructure& m,
                           std::size_t budget, std::uint64_t seed) {
  require_gcl_support(spec, m.signature());
  AuditReport report;
  report.name = "exchange";
  if (budget == 0 || m.size() == 0) {
    report.warnings.push_back("nothing sampled; vacuous pass");
    return report;
  }
  Evaluator ev(spec, m);
  std::vector<AuditReport> slots(budget);
  parallel_for(budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    auto& slot = slots[i];
    // Draw (B, c) until gcl(Bc) \ gcl(B) has a point other than c, then take a from it.
    for (int attempt = 0; attempt < kExchangeAttempts; ++attempt) {
      Element c = random_element(m, rng);
      ElementSet b = small_subset(m.universe(), rng, 4);
      auto candidates = (gcl(ev, b.with(c)) - gcl(ev, b)).without(c).to_vector();
      if (candidates.empty()) continue;
      Element a = candidates[below(rng, candidates.size())];
      ++slot.checked;
      if (!gcl_member(ev, c, b.with(a)))
        slot.fail("a=" + std::to_string(a) + " c=" + std::to_string(c) + " B=" + b.to_string());
      return;
    }
    ++slot.skipped;
  });
  for (const auto& s : slots) report.absorb(s);
  if (report.checked == 0) report.warnings.push_back("antecedent never held");
  return report;
}

AuditReport check_additivity(const PredimensionSpec& spec, const FinStructure& m,
                             std::size_t budget, std::uint64_t seed) {
  AuditReport report;
  report.name = "additivity";
  if (budget == 0) {
    report.warnings.push_back("zero sample budget; vacuous pass");
    return report;
  }
  Evaluator ev(spec, m);
  std::vector<AuditReport> slots(budget);
  parallel_for(budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    ElementSet x = small_subset(m.universe(), rng, 3);
    ElementSet y = small_subset(m.universe(), rng, 3);
    ElementSet c = small_subset(m.universe(), rng, 3);
    auto& slot = slots[i];
    ++slot.checked;
    Rational lhs = dim(ev, x | y, c);
    Rational rhs = dim(ev, x, y | c) + dim(ev, y, c);
    if (lhs != rhs)
      slot.fail("X=" + x.to_string() + " Y=" + y.to_string() + " C=" + c.to_string() + " " +
                to_string(lhs) + " != " + to_string(rhs));
  });
  for (const auto& s : slots) report.absorb(s);
  return report;
}

AuditReport check_gcl_closure(const PredimensionSpec& spec, const FinStructure& m,
                              std::size_t budget, std::uint64_t seed) {
  require_gcl_support(spec, m.signature());
  AuditReport report;
  report.name = "gcl-closure";
  if (budget == 0 || m.size() == 0) {
    report.warnings.push_back("nothing sampled; vacuous pass");
    return report;
  }
  Evaluator ev(spec, m);
  std::vector<AuditReport> slots(budget);
  parallel_for(budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    ElementSet b = small_subset(m.universe(), rng, 4);
    ElementSet bigger = b | small_subset(m.universe(), rng, 2);
    auto& slot = slots[i];
    ++slot.checked;
    ElementSet g = gcl(ev, b);
    std::string where = "B=" + b.to_string() + ": ";
    if (!b.subset_of(g)) slot.fail(where + "not increasing");
    if (!g.subset_of(gcl(ev, bigger))) slot.fail(where + "not monotone");
    if (gcl(ev, g) != g) slot.fail(where + "not idempotent");
  });
  for (const auto& s : slots) report.absorb(s);
  return report;
}

bool is_minimal_extension(const Evaluator& ev, std::size_t base_size) {
  const ElementSet base = ElementSet::range(base_size);
  const ElementSet all = ev.structure().universe();
  auto rest = (all - base).to_vector();
  if (rest.size() > 20) throw RefusalError("minimality test refuses more than 20 new elements");
  const std::int64_t top = ev.scaled_delta(all);
  for (std::uint32_t mask = 1; mask + 1 < (1u << rest.size()); ++mask) {
    ElementSet mid = base;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (1u << i)) mid.insert(rest[i]);
    if (top - ev.scaled_delta(mid) >= 0) return false;
  }
  return true;
}

std::vector<ExtensionClass> enumerate_minimal_extensions(const PredimensionSpec& spec,
                                                         const FinStructure& a, std::size_t n) {
  if (n <= a.size()) throw DomainError("bound must exceed |A|");
  const ElementSet base = ElementSet::range(a.size());
  auto filter = [&](const FinStructure& b) {
    Evaluator ev(spec, b);
    return strong_in(ev, base) && is_minimal_extension(ev, a.size());
  };
  auto out = enumerate_extensions(a, n, a.signature(), filter, spec.annotation_model());
  for (auto& cls : out) {
    Evaluator ev(spec, cls.extension);
    cls.delta = ev.delta_rel(cls.extension.universe(), base);
    cls.tags.strong = true;
    cls.tags.minimal = true;
    cls.tags.pre_algebraic = cls.delta == 0;
  }
  return out;
}

ExtensionClass restrict_to_base(const PredimensionSpec& spec, const ExtensionClass& cls,
                                const ElementSet& a0) {
  ElementSet keep = a0 | cls.new_elements();
  // Induced substructure renumbers ascending, so A0 comes first.
  ExtensionClass out;
  out.extension = induced_substructure(cls.extension, keep);
  out.base = induced_substructure(cls.extension, a0);
  std::vector<Element> order(a0.size());
  for (Element i = 0; i < a0.size(); ++i) order[i] = i;
  out.code = canonical_form_over(out.extension, order, spec.annotation_model());
  Evaluator ev(spec, out.extension);
  const ElementSet base = ElementSet::range(a0.size());
  out.delta = ev.delta_rel(out.extension.universe(), base);
  out.tags.strong = strong_in(ev, base);
  out.tags.minimal = is_minimal_extension(ev, a0.size());
  out.tags.pre_algebraic = out.delta == 0;
  return out;
}

ElementSet biminimal_base(const PredimensionSpec& spec, const ExtensionClass& cls) {
  const std::size_t m = cls.base_size();
  {
    Evaluator ev(spec, cls.extension);
    if (ev.delta_rel(cls.extension.universe(), cls.base_set()) != 0 ||
        !is_minimal_extension(ev, m) || !strong_in(ev, cls.base_set()))
      throw PreconditionError("extension is not minimal pre-algebraic over its base");
  }
  if (m > 20) throw RefusalError("base search refuses more than 20 base elements");
  Evaluator whole(spec, cls.extension);
  std::vector<ElementSet> qualifying;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    ElementSet a0;
    for (Element i = 0; i < m; ++i)
      if (mask & (1u << i)) a0.insert(i);
    if (!strong_in(whole, a0)) continue;
    ExtensionClass sub = restrict_to_base(spec, cls, a0);
    if (sub.tags.strong && sub.tags.minimal && sub.tags.pre_algebraic) qualifying.push_back(a0);
  }
  std::vector<ElementSet> least;
  for (const auto& q : qualifying) {
    bool has_smaller = std::any_of(qualifying.begin(), qualifying.end(), [&](const ElementSet& o) {
      return o != q && o.subset_of(q);
    });
    if (!has_smaller) least.push_back(q);
  }
  if (least.size() != 1) {
    std::string list;
    for (const auto& l : least) list += l.to_string() + " ";
    throw AmbiguityError("no unique least base; minimal candidates: " + list);
  }
  return least.front();
}

}  // namespace predim
