#include "predim/audits.hpp"

#include "predim/errors.hpp"
#include "predim/parallel.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "predim/text_format.hpp"

namespace predim {

StrongLawReports check_strong_laws(const PredimensionSpec& spec, const Signature& sig,
                                   const SamplingBounds& bounds) {
  StrongLawReports out;
  out.transitivity.name = "transitivity";
  out.intersection.name = "intersection";
  out.absorption.name = "absorption";
  if (bounds.budget == 0) {
    for (auto* r : {&out.transitivity, &out.intersection, &out.absorption})
      r->warnings.push_back("zero sample budget; vacuous pass");
    return out;
  }
  std::vector<StrongLawReports> slots(bounds.budget);
  parallel_for(bounds.budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(bounds.seed, i));
    std::size_t n = 1 + below(rng, bounds.max_size);
    FinStructure s = random_class_member(spec, sig, n, rng);
    Evaluator ev(spec, s);
    auto& slot = slots[i];
    std::string tag = "sample " + std::to_string(i) + ": ";

    // A <= B <= C built by closures inside induced substructures.
    ElementSet c = random_subset(s.universe(), rng, 0.7);
    FinStructure sc = induced_substructure(s, c);
    Evaluator evc(spec, sc);
    ElementSet b_local = closure(evc, random_subset(sc.universe(), rng, 0.4));
    auto c_ids = c.to_vector();
    ElementSet b;
    for (Element e : b_local) b.insert(c_ids[e]);
    FinStructure sb = induced_substructure(s, b);
    Evaluator evb(spec, sb);
    ElementSet a_local = closure(evb, random_subset(sb.universe(), rng, 0.4));
    auto b_ids = b.to_vector();
    ElementSet a;
    for (Element e : a_local) a.insert(b_ids[e]);
    if (is_strong(ev, a, b).verdict && is_strong(ev, b, c).verdict) {
      ++slot.transitivity.checked;
      if (!is_strong(ev, a, c).verdict)
        slot.transitivity.fail(tag + "A=" + a.to_string() + " B=" + b.to_string() +
                               " C=" + c.to_string());
    } else {
      ++slot.transitivity.skipped;
    }

    ElementSet p = random_strong_subset(ev, rng);
    ElementSet q = random_strong_subset(ev, rng);
    ++slot.intersection.checked;
    if (!strong_in(ev, p & q))
      slot.intersection.fail(tag + "P=" + p.to_string() + " Q=" + q.to_string());

    ElementSet x = random_subset(s.universe() - p, rng, 0.5);
    if (!x.empty() && ev.delta_rel(x, p) == 0) {
      ++slot.absorption.checked;
      if (!strong_in(ev, p | x))
        slot.absorption.fail(tag + "B=" + p.to_string() + " X=" + x.to_string());
    } else {
      ++slot.absorption.skipped;
    }
  });
  for (const auto& s : slots) {
    out.transitivity.absorb(s.transitivity);
    out.intersection.absorb(s.intersection);
    out.absorption.absorb(s.absorption);
  }
  return out;
}

AuditReport check_oracle_equivalence(const PredimensionSpec& spec, const Signature& sig,
                                     const SamplingBounds& bounds, std::size_t max_rest) {
  AuditReport report;
  report.name = "oracle-equivalence";
  if (bounds.budget == 0) {
    report.warnings.push_back("zero sample budget; vacuous pass");
    return report;
  }
  std::vector<AuditReport> slots(bounds.budget);
  parallel_for(bounds.budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(bounds.seed, i));
    std::size_t n = 1 + below(rng, bounds.max_size);
    FinStructure s = (i % 2 == 0)
                         ? random_class_member(spec, sig, n, rng, 0.6)
                         : random_structure(sig, n, static_cast<double>(below(rng, 50)) / 100.0,
                                            spec.annotation_model(), rng);
    Evaluator ev(spec, s);
    ElementSet b = random_subset(s.universe(), rng, 0.8);
    ElementSet a = random_subset(b, rng, 0.3);
    while ((b - a).size() > max_rest) a.insert(static_cast<Element>((b - a).first()));
    StrongReport fast = is_strong(ev, a, b);
    StrongReport slow = brute_force_is_strong(ev, a, b, max_rest);
    auto& slot = slots[i];
    ++slot.checked;
    std::string tag = "sample " + std::to_string(i) + " A=" + a.to_string() + " B=" +
                      b.to_string() + ": ";
    if (fast.verdict != slow.verdict) slot.fail(tag + "verdicts differ");
    if (fast.deficiency != slow.deficiency)
      slot.fail(tag + "deficiency " + to_string(fast.deficiency) + " vs " +
                to_string(slow.deficiency));
    if (fast.witness.has_value() != slow.witness.has_value()) {
      slot.fail(tag + "witness presence differs");
    } else if (fast.witness) {
      if (fast.witness->empty() || !fast.witness->subset_of(b - a) ||
          ev.delta_rel(*fast.witness, a) != fast.deficiency)
        slot.fail(tag + "witness " + fast.witness->to_string() + " misses the deficiency");
      if (ev.delta_rel(*slow.witness, a) != slow.deficiency)
        slot.fail(tag + "brute-force witness misses the deficiency");
    }
  });
  for (const auto& s : slots) report.absorb(s);
  return report;
}

AuditReport check_closure_exhaustive(const PredimensionSpec& spec, const FinStructure& s) {
  AuditReport report;
  report.name = "closure";
  Evaluator ev(spec, s);
  auto table = brute_force_closure_table(ev);
  const std::size_t n = s.size();
  std::vector<AuditReport> slots(table.size());
  parallel_for(table.size(), [&](std::size_t mask) {
    ElementSet a;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) a.insert(static_cast<Element>(i));
    ElementSet expected;
    for (std::size_t i = 0; i < n; ++i)
      if (table[mask] & (1u << i)) expected.insert(static_cast<Element>(i));
    ++slots[mask].checked;
    ElementSet got = closure(ev, a);
    if (got != expected)
      slots[mask].fail("A=" + a.to_string() + " closure " + got.to_string() + " expected " +
                       expected.to_string());
  });
  for (const auto& r : slots) report.absorb(r);
  return report;
}

AuditReport check_submodularity_exhaustive(const PredimensionSpec& spec, const FinStructure& s) {
  AuditReport report;
  report.name = "submodularity-exhaustive";
  const std::size_t n = s.size();
  if (n > 10) throw RefusalError("exhaustive submodularity refuses more than 10 elements");
  Evaluator ev(spec, s);
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::int64_t> value(count);
  std::vector<ElementSet> sets(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sets[mask].insert(static_cast<Element>(i));
    value[mask] = ev.scaled_delta(sets[mask]);
  }
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t y = x; y < count; ++y) {
      ++report.checked;
      if (value[x] + value[y] < value[x | y] + value[x & y])
        report.fail("X=" + sets[x].to_string() + " Y=" + sets[y].to_string());
    }
  return report;
}

}  // namespace predim
