#include "predim/strong.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "predim/errors.hpp"

namespace predim {

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

struct Candidate {
  std::int64_t value = kInfinity;
  ElementSet set;

  bool beats(const Candidate& other) const {
    return value < other.value || (value == other.value && set.size() < other.set.size());
  }
};

struct Outcome {
  Candidate all;
  Candidate nonempty;
};

class Minimizer {
 public:
  explicit Minimizer(const Evaluator& ev) : ev_(ev), s_(ev.structure()) {
    std::size_t max_arity = 1;
    for (const auto& sym : s_.signature().symbols()) max_arity = std::max(max_arity, sym.arity);
    share_scale_ = 1;
    for (std::size_t a = 2; a <= max_arity; ++a)
      share_scale_ = std::lcm(share_scale_, static_cast<std::int64_t>(a));
  }

  Outcome solve(const ElementSet& w, const ElementSet& k, bool need_nonempty) {
    Outcome out;
    if (k.empty()) {
      out.all = {0, {}};
      return out;
    }
    if (k.size() == 1) {
      Element v = static_cast<Element>(k.first());
      std::int64_t g = ev_.scaled_gain(v, w);
      out.nonempty = {g, k};
      out.all = g < 0 ? out.nonempty : Candidate{0, {}};
      return out;
    }
    if (ev_.spec().prune && need_nonempty) {
      out.all = solve(w, k, false).all;
      out.nonempty = out.all.value < 0 ? out.all : first_element_minimum(w, k);
      return out;
    }
    if (ev_.spec().prune) {
      ElementSet w2 = w;
      ElementSet k2 = k;
      std::int64_t offset = 0;
      if (reduce(w2, k2, offset)) {
        Outcome sub = solve(w2, k2, false);
        out.all = {offset + sub.all.value, (w2 - w) | sub.all.set};
        return out;
      }
      if (ev_.decomposable()) {
        auto parts = components(w, k);
        if (parts.size() > 1) return combine(w, parts, need_nonempty);
      }
      if (lower_bound_nonnegative(w, k)) {
        out.all = {0, {}};
        if (need_nonempty) out.nonempty = first_element_minimum(w, k);
        return out;
      }
    }
    Element v = branch_element(w, k);
    ElementSet rest = k.without(v);
    Outcome ex = solve(w, rest, need_nonempty);
    Outcome tail = solve(w.with(v), rest, false);
    Candidate inc{ev_.scaled_gain(v, w) + tail.all.value, tail.all.set.with(v)};
    out.all = inc.beats(ex.all) ? inc : ex.all;
    out.nonempty = inc.beats(ex.nonempty) ? inc : ex.nonempty;
    return out;
  }

 private:
  /// Pieces of K linked by instances that live inside W u K.
  std::vector<ElementSet> components(const ElementSet& w, const ElementSet& k) const {
    std::vector<Element> parent(s_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    ElementSet wk = w | k;
    for (Element v : k) {
      for (auto idx : s_.incident(v)) {
        const Instance& inst = s_.instances()[idx];
        if (!inst.support.subset_of(wk)) continue;
        for (Element u : inst.support) {
          if (!k.contains(u)) continue;
          Element a = find(u);
          Element b = find(v);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::vector<ElementSet> out;
    std::vector<int> slot(s_.size(), -1);
    for (Element v : k) {
      Element r = find(v);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[slot[r]].insert(v);
    }
    return out;
  }

  Outcome combine(const ElementSet& w, const std::vector<ElementSet>& parts, bool need_nonempty) {
    std::vector<Outcome> sub;
    sub.reserve(parts.size());
    Outcome out;
    out.all = {0, {}};
    for (const auto& part : parts) {
      sub.push_back(solve(w, part, need_nonempty));
      out.all.value += sub.back().all.value;
      out.all.set |= sub.back().all.set;
    }
    if (need_nonempty) {
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (sub[i].nonempty.value >= kInfinity) continue;
        Candidate c{sub[i].nonempty.value, sub[i].nonempty.set};
        for (std::size_t j = 0; j < parts.size(); ++j) {
          if (j == i) continue;
          c.value += sub[j].all.value;
          c.set |= sub[j].all.set;
        }
        if (c.beats(out.nonempty)) out.nonempty = c;
      }
    }
    return out;
  }

  /// Drops elements whose gain on top of everything else is nonnegative
  /// (never in the least minimiser) and fixes those whose gain over W alone
  /// is negative (in every minimiser), until neither applies.
  bool reduce(ElementSet& w, ElementSet& k, std::int64_t& offset) const {
    bool any = false;
    bool changed = true;
    while (changed && !k.empty()) {
      changed = false;
      ElementSet wk = w | k;
      for (Element v : k) {
        if (ev_.scaled_gain(v, wk.without(v)) >= 0) {
          k.erase(v);
          wk.erase(v);
          changed = true;
        }
      }
      for (Element v : k) {
        std::int64_t g = ev_.scaled_gain(v, w);
        if (g < 0) {
          k.erase(v);
          w.insert(v);
          offset += g;
          changed = true;
        }
      }
      any = any || changed;
    }
    return any;
  }

  /// Every nonempty X has a least element v, and X - v lies above v.
  Candidate first_element_minimum(const ElementSet& w, const ElementSet& k) {
    Candidate best;
    ElementSet above = k;
    for (Element v : k) {
      above.erase(v);
      Outcome tail = solve(w.with(v), above, false);
      Candidate c{ev_.scaled_gain(v, w) + tail.all.value, tail.all.set.with(v)};
      if (c.beats(best)) best = c;
    }
    return best;
  }

  /// Sound test that no X within K has negative value. Relation weight is
  /// shared out among the K-members of each instance; non-free rank terms
  /// are bounded by monotonicity and unit increase.
  bool lower_bound_nonnegative(const ElementSet& w, const ElementSet& k) const {
    const std::int64_t L = share_scale_;
    const std::int64_t kk = static_cast<std::int64_t>(k.size());
    ElementSet wk = w | k;
    std::int64_t positive = 0;
    std::int64_t negative_part = 0;
    std::int64_t linearised = 0;
    for (const auto& t : ev_.rank_terms()) {
      std::int64_t r = t.rank->rank(wk) - t.rank->rank(w);
      if (t.coefficient < 0) {
        negative_part += t.coefficient * r * L;
      } else {
        positive += t.coefficient;
        linearised += t.coefficient * (r - kk) * L;
      }
    }
    std::int64_t plain = negative_part;
    std::int64_t lin = negative_part + linearised;
    for (Element y : k) {
      std::int64_t term = ev_.scaled_cardinality() * L;
      for (auto idx : s_.incident(y)) {
        const Instance& inst = s_.instances()[idx];
        if (!inst.support.subset_of(wk)) continue;
        auto inside = static_cast<std::int64_t>((inst.support & k).size());
        term -= ev_.scaled_weight(idx) * (L / inside);
      }
      plain += std::min<std::int64_t>(0, term);
      lin += std::min<std::int64_t>(0, term + positive * L);
    }
    // Values are integers in scaled units, so a bound above -1 means >= 0.
    std::int64_t bound = ev_.rank_terms().empty() ? plain : std::max(plain, lin);
    return bound > -L;
  }

  Element branch_element(const ElementSet& w, const ElementSet& k) const {
    ElementSet wk = w | k;
    Element best = static_cast<Element>(k.first());
    std::int64_t best_degree = -1;
    for (Element v : k) {
      std::int64_t degree = 0;
      for (auto idx : s_.incident(v))
        if (s_.instances()[idx].support.subset_of(wk)) degree += ev_.scaled_weight(idx);
      if (degree > best_degree) {
        best_degree = degree;
        best = v;
      }
    }
    return best;
  }

  const Evaluator& ev_;
  const FinStructure& s_;
  std::int64_t share_scale_ = 1;
};

void require_chain(const Evaluator& ev, const ElementSet& a, const ElementSet& b) {
  ev.require_subset(b);
  if (!a.subset_of(b)) throw DomainError("A " + a.to_string() + " is not a subset of B " + b.to_string());
}

}  // namespace

SubsetMinimum minimize_extension(const Evaluator& ev, const ElementSet& w, const ElementSet& k,
                                 bool need_nonempty) {
  ev.require_subset(w | k);
  if (w.intersects(k)) throw DomainError("candidate set meets the fixed set");
  Outcome o = Minimizer(ev).solve(w, k, need_nonempty);
  SubsetMinimum out;
  out.value = o.all.value;
  out.least = o.all.set;
  if (need_nonempty && !k.empty()) {
    out.nonempty_value = o.nonempty.value;
    out.nonempty_witness = o.nonempty.set;
  }
  return out;
}

StrongReport is_strong(const Evaluator& ev, const ElementSet& a, const ElementSet& b) {
  require_chain(ev, a, b);
  StrongReport report;
  if (a == b) return report;
  auto m = minimize_extension(ev, a, b - a, true);
  report.deficiency = ev.unscale(*m.nonempty_value);
  report.verdict = *m.nonempty_value >= 0;
  report.witness = m.nonempty_witness;
  return report;
}

StrongReport is_strong(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& a,
                       const ElementSet& b) {
  return is_strong(Evaluator(spec, s), a, b);
}

bool strong_in(const Evaluator& ev, const ElementSet& a) {
  ElementSet u = ev.structure().universe();
  ev.require_subset(a);
  if (a == u) return true;
  return minimize_extension(ev, a, u - a, false).value >= 0;
}

StrongReport brute_force_is_strong(const Evaluator& ev, const ElementSet& a, const ElementSet& b,
                                   std::size_t bound) {
  require_chain(ev, a, b);
  auto rest = (b - a).to_vector();
  if (rest.size() > bound)
    throw RefusalError("brute force refuses |B\\A| = " + std::to_string(rest.size()) +
                       " above the bound " + std::to_string(bound));
  StrongReport report;
  if (rest.empty()) return report;
  const std::int64_t base = ev.scaled_delta(a);
  std::int64_t best = kInfinity;
  ElementSet best_set;
  for (std::uint32_t mask = 1; mask < (1u << rest.size()); ++mask) {
    ElementSet x;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (1u << i)) x.insert(rest[i]);
    std::int64_t v = ev.scaled_delta(a | x) - base;
    if (v < best || (v == best && x.size() < best_set.size())) {
      best = v;
      best_set = x;
    }
  }
  report.deficiency = ev.unscale(best);
  report.verdict = best >= 0;
  report.witness = best_set;
  return report;
}

StrongReport brute_force_is_strong(const PredimensionSpec& spec, const FinStructure& s,
                                   const ElementSet& a, const ElementSet& b, std::size_t bound) {
  return brute_force_is_strong(Evaluator(spec, s), a, b, bound);
}

ElementSet closure(const Evaluator& ev, const ElementSet& a) {
  ev.require_subset(a);
  const ElementSet u = ev.structure().universe();
  ElementSet c = a;
  Minimizer minimizer(ev);
  while (c != u) {
    Outcome o = minimizer.solve(c, u - c, false);
    if (o.all.value >= 0) break;
    c |= o.all.set;
  }
  return c;
}

ElementSet closure(const PredimensionSpec& spec, const FinStructure& m, const ElementSet& a) {
  return closure(Evaluator(spec, m), a);
}

bool in_class(const Evaluator& ev) { return !class_witness(ev).has_value(); }

bool in_class(const PredimensionSpec& spec, const FinStructure& s) {
  return in_class(Evaluator(spec, s));
}

std::optional<ElementSet> class_witness(const Evaluator& ev) {
  auto m = minimize_extension(ev, {}, ev.structure().universe(), false);
  if (m.value >= 0) return std::nullopt;
  return m.least;
}

std::vector<std::uint32_t> brute_force_closure_table(const Evaluator& ev) {
  const std::size_t n = ev.size();
  if (n > 16) throw RefusalError("closure table refuses more than 16 elements");
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((1ull << n) - 1);
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::int64_t> value(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    ElementSet x;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) x.insert(static_cast<Element>(i));
    value[mask] = ev.scaled_delta(x);
  }
  // Least delta over supersets.
  std::vector<std::int64_t> above = value;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 0; mask < count; ++mask)
      if (!(mask & (std::size_t{1} << i)))
        above[mask] = std::min(above[mask], above[mask | (std::size_t{1} << i)]);
  // Intersection of the strong supersets.
  std::vector<std::uint32_t> meet(count);
  for (std::size_t mask = 0; mask < count; ++mask)
    meet[mask] = above[mask] >= value[mask] ? static_cast<std::uint32_t>(mask) : full;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 0; mask < count; ++mask)
      if (!(mask & (std::size_t{1} << i))) meet[mask] &= meet[mask | (std::size_t{1} << i)];
  return meet;
}

}  // namespace predim
