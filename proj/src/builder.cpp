#include "predim/builder.hpp"

#include <algorithm>

#include "predim/amalgam.hpp"
#include "predim/errors.hpp"
#include "predim/parallel.hpp"
#include "predim/sampling.hpp"
#include "predim/text_format.hpp"

namespace predim {

const std::vector<ExtensionClass>& ClassCache::classes(const PredimensionSpec& spec,
                                                       const FinStructure& a, std::size_t k) {
  auto key = std::make_pair(k, serialize_structure(a));
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  const ElementSet base = ElementSet::range(a.size());
  auto filter = [&](const FinStructure& b) {
    Evaluator ev(spec, b);
    return in_class(ev) && strong_in(ev, base);
  };
  auto list = std::make_shared<std::vector<ExtensionClass>>(
      enumerate_extensions(a, k, a.signature(), filter, spec.annotation_model()));
  for (auto& cls : *list) {
    Evaluator ev(spec, cls.extension);
    cls.tags.strong = true;
    cls.delta = ev.delta_rel(cls.extension.universe(), base);
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(key, list);
  return *it->second;
}

std::vector<ElementSet> strong_subsets(StrongCache& cache, std::size_t max_size) {
  const std::size_t n = cache.evaluator().size();
  std::vector<ElementSet> candidates;
  std::vector<Element> cur;
  // size-major, lexicographic within a size
  for (std::size_t size = 0; size <= std::min(max_size, n); ++size) {
    std::vector<Element> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<Element>(i);
    while (true) {
      candidates.emplace_back(std::span<const Element>(idx));
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<char> strong(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t i) { strong[i] = cache.strong(candidates[i]); });
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (strong[i]) out.push_back(candidates[i]);
  return out;
}

StepResult FreeStrategy::extend(const PredimensionSpec& spec, const FinStructure& m,
                                const ElementSet& base, const ExtensionClass& cls) {
  ElementMap tau = base.to_vector();
  ElementMap sigma(base.size());
  for (Element i = 0; i < base.size(); ++i) sigma[i] = i;
  auto d = free_amalgam(cls.base, m, cls.extension, tau, sigma, spec.annotation_model());
  return {std::move(d.amalgam), "free"};
}

namespace {

std::uint64_t shuffle_key(std::uint64_t seed, const ElementSet& a) {
  std::uint64_t h = derive_seed(seed, a.size());
  for (Element e : a) h = derive_seed(h, e);
  return h;
}

bool satisfied(StrongCache& cache, const PredimensionSpec& spec, const Task& task) {
  ElementMap base_map = pointed_base_map(task.base.to_vector(), task.extension->extension.size());
  return find_strong_embedding(cache, task.extension->extension, base_map,
                               spec.annotation_model())
      .has_value();
}

void open_round(GenericApprox& ga) {
  Evaluator ev(ga.spec, ga.current);
  StrongCache cache(ev);
  std::size_t max_base = ga.k == 0 ? 0 : ga.k - 1;
  auto bases = strong_subsets(cache, max_base);
  std::vector<std::vector<Task>> per_base(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    FinStructure a = induced_substructure(ga.current, bases[i]);
    const auto& list = ga.classes->classes(ga.spec, a, ga.k);
    std::uint64_t key = shuffle_key(ga.seed, bases[i]);
    for (const auto& cls : list) {
      Task t;
      t.base = bases[i];
      t.extension = std::make_shared<const ExtensionClass>(cls);
      t.key = key;
      per_base[i].push_back(std::move(t));
    }
  });
  ga.queue.clear();
  for (auto& v : per_base)
    for (auto& t : v) ga.queue.push_back(std::move(t));
  std::stable_sort(ga.queue.begin(), ga.queue.end(), [](const Task& x, const Task& y) {
    auto kx = std::make_tuple(x.base.size(), x.extension->extension.size());
    auto ky = std::make_tuple(y.base.size(), y.extension->extension.size());
    if (kx != ky) return kx < ky;
    if (x.extension->code != y.extension->code) return x.extension->code < y.extension->code;
    if (x.key != y.key) return x.key < y.key;
    return x.base < y.base;
  });
  ga.round_open = true;
  ga.round_added = false;
  ++ga.rounds;
}

void run_schedule(GenericApprox& ga) {
  if (ga.budget == 0 || ga.complete) {
    if (ga.budget == 0) ga.stop_reason = "budget";
    return;
  }
  while (true) {
    if (!ga.round_open) open_round(ga);

    // Pre-check every task against the structure as it stands; satisfied
    // tasks stay satisfied as the structure grows.
    std::vector<char> known(ga.queue.size(), 0);
    {
      Evaluator ev(ga.spec, ga.current);
      StrongCache cache(ev);
      parallel_for(ga.queue.size(),
                   [&](std::size_t i) { known[i] = satisfied(cache, ga.spec, ga.queue[i]); });
    }
    std::size_t pos = 0;
    bool changed = false;
    std::unique_ptr<Evaluator> ev;
    std::unique_ptr<StrongCache> cache;
    for (; pos < ga.queue.size(); ++pos) {
      const Task& task = ga.queue[pos];
      if (known[pos]) continue;
      if (changed) {
        if (!cache) {
          ev = std::make_unique<Evaluator>(ga.spec, ga.current);
          cache = std::make_unique<StrongCache>(*ev);
        }
        if (satisfied(*cache, ga.spec, task)) continue;
      }
      std::size_t grow = task.extension->extension.size() - task.base.size();
      if (ga.current.size() + grow > ga.budget) {
        ga.stop_reason = "budget";
        ga.queue.erase(ga.queue.begin(), ga.queue.begin() + static_cast<std::ptrdiff_t>(pos));
        return;
      }
      StepResult step = ga.strategy->extend(ga.spec, ga.current, task.base, *task.extension);
      if (step.next.size() != ga.current.size() || !(step.next == ga.current)) {
        Evaluator next_ev(ga.spec, step.next);
        if (!strong_in(next_ev, ga.current.universe()))
          throw Error("builder step broke the strong chain at size " +
                      std::to_string(ga.current.size()));
        StepRecord rec;
        rec.size_before = ga.current.size();
        rec.size_after = step.next.size();
        rec.base = task.base;
        rec.code = task.extension->code;
        rec.kind = step.kind;
        ga.steps.push_back(std::move(rec));
        ga.current = std::move(step.next);
        ga.history.push_back(ga.current);
        ga.round_added = true;
        changed = true;
        cache.reset();
        ev.reset();
      } else {
        StepRecord rec;
        rec.size_before = rec.size_after = ga.current.size();
        rec.base = task.base;
        rec.code = task.extension->code;
        rec.kind = step.kind;
        ga.steps.push_back(std::move(rec));
      }
    }
    ga.queue.clear();
    ga.round_open = false;
    if (!ga.round_added) {
      ga.complete = true;
      ga.stop_reason = "complete";
      return;
    }
  }
}

}  // namespace

GenericApprox build_with_strategy(const PredimensionSpec& spec, const Signature& sig,
                                  std::size_t k, std::size_t budget, std::uint64_t seed,
                                  std::shared_ptr<ExtensionStrategy> strategy) {
  spec.validate();
  GenericApprox ga;
  ga.spec = spec;
  ga.signature = sig;
  ga.k = k;
  ga.budget = budget;
  ga.seed = seed;
  ga.current = FinStructure(sig, 0);
  ga.history.push_back(ga.current);
  ga.classes = std::make_shared<ClassCache>();
  ga.strategy = std::move(strategy);
  if (k == 0) {
    ga.complete = true;
    ga.stop_reason = "complete";
    return ga;
  }
  run_schedule(ga);
  return ga;
}

GenericApprox build_generic(const PredimensionSpec& spec, const Signature& sig, std::size_t k,
                            std::size_t budget, std::uint64_t seed) {
  return build_with_strategy(spec, sig, k, budget, seed, std::make_shared<FreeStrategy>());
}

GenericApprox resume(GenericApprox ga, std::size_t extra_budget) {
  if (extra_budget == 0) return ga;
  ga.budget += extra_budget;
  ga.stop_reason.clear();
  run_schedule(ga);
  return ga;
}

RichnessReport audit_richness(const PredimensionSpec& spec, const FinStructure& m, std::size_t k,
                              ClassCache* classes) {
  RichnessReport report;
  if (k == 0) return report;
  ClassCache local;
  ClassCache& cache_classes = classes ? *classes : local;
  Evaluator ev(spec, m);
  StrongCache cache(ev);
  auto bases = strong_subsets(cache, k - 1);
  struct Slot {
    std::size_t satisfied = 0;
    std::size_t total = 0;
    std::vector<Obligation> unmet;
  };
  std::vector<Slot> slots(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    FinStructure a = induced_substructure(m, bases[i]);
    const auto& list = cache_classes.classes(spec, a, k);
    for (const auto& cls : list) {
      ++slots[i].total;
      ElementMap base_map = pointed_base_map(bases[i].to_vector(), cls.extension.size());
      if (find_strong_embedding(cache, cls.extension, base_map, spec.annotation_model())) {
        ++slots[i].satisfied;
      } else {
        slots[i].unmet.push_back({bases[i], cls.code, cls.extension.size()});
      }
    }
  });
  for (auto& s : slots) {
    report.satisfied += s.satisfied;
    report.total += s.total;
    for (auto& o : s.unmet) report.unmet.push_back(std::move(o));
  }
  return report;
}

}  // namespace predim
