#include "predim/collapse.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "predim/errors.hpp"
#include "predim/geometry.hpp"
#include "predim/parallel.hpp"
#include "predim/strong_embeddings.hpp"
#include "predim/text_format.hpp"

namespace predim {

std::size_t MuFunction::operator()(const CanonicalCode& code, const ExtensionClass& cls) const {
  auto it = table.find(code);
  if (it != table.end()) return it->second;
  std::size_t size = cls.new_elements().size();
  if (rule == Rule::weighted) {
    Rational w = total_weight(cls.extension);
    auto ceil = static_cast<std::size_t>((w.numerator() + w.denominator() - 1) / w.denominator());
    return a + b * ceil;
  }
  return a + b * size;
}

MuFunction parse_mu(std::istream& in) {
  MuFunction mu;
  std::string raw;
  std::size_t line = 0;
  bool default_seen = false;
  auto number = [&](const std::string& tok) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.empty() || tok[0] == '-')
      throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, raw)) {
    ++line;
    auto tok = tokenize_line(raw);
    if (tok.empty()) continue;
    if (tok[0] == "mu") {
      if (tok.size() != 3) throw ParseError(line, "usage: mu <code> <int>");
      CanonicalCode code;
      try {
        code = from_hex(tok[1]);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      std::size_t v = number(tok[2]);
      if (v < 1) throw ParseError(line, "mu values must be at least 1");
      if (!mu.table.emplace(code, v).second) throw ParseError(line, "code listed twice");
    } else if (tok[0] == "mu-default") {
      if (default_seen) throw ParseError(line, "mu-default given twice");
      default_seen = true;
      if (tok.size() != 4) throw ParseError(line, "usage: mu-default linear|weighted <a> <b>");
      if (tok[1] == "linear") {
        mu.rule = MuFunction::Rule::linear;
      } else if (tok[1] == "weighted") {
        mu.rule = MuFunction::Rule::weighted;
      } else {
        throw ParseError(line, "unknown mu-default formula '" + tok[1] + "'");
      }
      mu.a = number(tok[2]);
      mu.b = number(tok[3]);
      if (mu.a < 1) throw ParseError(line, "mu-default constant must be at least 1");
    } else {
      throw ParseError(line, "unknown directive '" + tok[0] + "'");
    }
  }
  return mu;
}

MuFunction parse_mu_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mu(in);
}

MuFunction load_mu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return parse_mu(in);
}

std::string serialize_mu(const MuFunction& mu) {
  std::ostringstream out;
  out << "mu-default " << (mu.rule == MuFunction::Rule::linear ? "linear" : "weighted") << ' '
      << mu.a << ' ' << mu.b << '\n';
  for (const auto& [code, v] : mu.table) out << "mu " << to_hex(code) << ' ' << v << '\n';
  return out.str();
}

CanonicalCode mu_key(const PredimensionSpec& spec, const ExtensionClass& cls) {
  return canonical_form_pair(cls.extension, cls.base_set(), spec.annotation_model());
}

const std::vector<BiminimalCache::Entry>& BiminimalCache::classes(const PredimensionSpec& spec,
                                                                  const FinStructure& a0,
                                                                  std::size_t bound) {
  auto key = std::make_pair(bound, serialize_structure(a0));
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto list = std::make_shared<std::vector<Entry>>();
  if (bound > a0.size()) {
    const ElementSet whole = ElementSet::range(a0.size());
    std::set<CanonicalCode> seen;
    for (auto& cls : enumerate_minimal_extensions(spec, a0, bound)) {
      if (!cls.tags.pre_algebraic) continue;
      try {
        if (biminimal_base(spec, cls) != whole) continue;
      } catch (const AmbiguityError&) {
        continue;
      }
      CanonicalCode code = mu_key(spec, cls);
      if (!seen.insert(code).second) continue;
      list->push_back({std::move(cls), std::move(code)});
    }
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(key, list);
  return *it->second;
}

namespace {

struct Copy {
  ElementSet fresh;  // image of B \ A0
};

bool independent(const Evaluator& ev, const ElementSet& a0, const ElementSet& x,
                 const ElementSet& y) {
  if (x.intersects(y)) return false;
  const FinStructure& m = ev.structure();
  for (Element e : x)
    for (auto idx : m.incident(e))
      if (m.instances()[idx].support.intersects(y)) return false;
  for (const auto& t : ev.rank_terms()) {
    int both = t.rank->rank(a0 | x | y);
    int left = t.rank->rank(a0 | x);
    int right = t.rank->rank(a0 | y);
    int base = t.rank->rank(a0);
    if (both != left + right - base) return false;
  }
  return true;
}

class CliqueSearch {
 public:
  CliqueSearch(const std::vector<std::vector<char>>& adj, std::size_t cap) : adj_(adj), cap_(cap) {}

  std::size_t run() {
    std::vector<std::size_t> all(adj_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    expand(0, all);
    return best_;
  }

 private:
  void expand(std::size_t size, const std::vector<std::size_t>& candidates) {
    if (best_ > cap_) return;
    if (candidates.empty()) {
      best_ = std::max(best_, size);
      return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (size + (candidates.size() - i) <= best_ || best_ > cap_) return;
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (adj_[candidates[i]][candidates[j]]) next.push_back(candidates[j]);
      expand(size + 1, next);
    }
  }

  const std::vector<std::vector<char>>& adj_;
  std::size_t cap_;
  std::size_t best_ = 0;
};

/// Copy count; nullopt when `touch` is given and no copy meets it.
std::optional<std::size_t> count_copies(StrongCache& cache, const PredimensionSpec& spec,
                                        const ElementSet& a0, const ExtensionClass& cls,
                                        std::size_t cap, const ElementSet* touch) {
  const Evaluator& ev = cache.evaluator();
  const FinStructure& m = ev.structure();
  const AnnotationModel& model = spec.annotation_model();
  if (a0.size() != cls.base_size()) throw DomainError("A0 and the class base differ in size");
  std::vector<Element> perm = a0.to_vector();
  std::size_t best = 0;
  bool touched = touch == nullptr;
  do {
    if (!is_embedding(perm, cls.base, m, model)) continue;
    ElementMap base_map = pointed_base_map(perm, cls.extension.size());
    std::vector<Copy> copies;
    std::set<ElementSet> seen;
    for_each_strong_embedding(cache, cls.extension, base_map, model, [&](const ElementMap& f) {
      ElementSet fresh;
      for (Element i = static_cast<Element>(cls.base_size()); i < f.size(); ++i) fresh.insert(f[i]);
      if (seen.insert(fresh).second) copies.push_back({fresh});
      return true;
    });
    if (touch != nullptr)
      for (const auto& c : copies)
        if (c.fresh.intersects(*touch)) touched = true;
    std::vector<std::vector<char>> adj(copies.size(), std::vector<char>(copies.size(), 0));
    for (std::size_t i = 0; i < copies.size(); ++i)
      for (std::size_t j = i + 1; j < copies.size(); ++j)
        adj[i][j] = adj[j][i] = independent(ev, a0, copies[i].fresh, copies[j].fresh);
    best = std::max(best, CliqueSearch(adj, cap).run());
    if (best > cap && touched) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!touched) return std::nullopt;
  return best;
}

MuReport mu_audit(const PredimensionSpec& spec, const MuFunction& mu, const FinStructure& s,
                  std::size_t bound, const ElementSet* fresh, BiminimalCache* shared) {
  Evaluator ev(spec, s);
  if (!in_class(ev)) throw PreconditionError("structure is not in the class C");
  MuReport report;
  if (bound == 0) return report;
  BiminimalCache local;
  BiminimalCache& classes = shared ? *shared : local;
  StrongCache cache(ev);
  auto bases = strong_subsets(cache, bound - 1);
  struct Slot {
    std::vector<MuViolation> violations;
    std::size_t pairs = 0;
  };
  std::vector<Slot> slots(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    const ElementSet& a0 = bases[i];
    FinStructure base = induced_substructure(s, a0);
    const auto& list = classes.classes(spec, base, bound);
    bool meets = fresh == nullptr || a0.intersects(*fresh);
    for (const auto& entry : list) {
      ++slots[i].pairs;
      std::size_t limit = mu(entry.key, entry.cls);
      auto count = count_copies(cache, spec, a0, entry.cls, limit, meets ? nullptr : fresh);
      if (count && *count > limit)
        slots[i].violations.push_back({a0, entry.key, *count, limit});
    }
  });
  for (auto& slot : slots) {
    report.pairs_checked += slot.pairs;
    for (auto& v : slot.violations) report.violations.push_back(std::move(v));
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace

std::size_t count_independent_copies(const PredimensionSpec& spec, const FinStructure& m,
                                     const ElementSet& a0, const ExtensionClass& cls,
                                     std::size_t cap) {
  Evaluator ev(spec, m);
  ev.require_subset(a0);
  StrongCache cache(ev);
  return *count_copies(cache, spec, a0, cls, cap, nullptr);
}

MuReport in_class_mu(const PredimensionSpec& spec, const MuFunction& mu, const FinStructure& s,
                     std::size_t bound, BiminimalCache* cache) {
  return mu_audit(spec, mu, s, bound, nullptr, cache);
}

MuReport in_class_mu_incremental(const PredimensionSpec& spec, const MuFunction& mu,
                                 const FinStructure& s, std::size_t bound,
                                 const ElementSet& fresh, BiminimalCache* cache) {
  return mu_audit(spec, mu, s, bound, &fresh, cache);
}

MuBoundedClass::MuBoundedClass(PredimensionSpec spec, MuFunction mu, std::size_t bound)
    : spec_(std::move(spec)),
      mu_(std::move(mu)),
      bound_(bound),
      cache_(std::make_shared<BiminimalCache>()) {}

bool MuBoundedClass::admits(const FinStructure& s, const ElementSet& fresh) const {
  bool incremental = in_class_mu_incremental(spec_, mu_, s, bound_, fresh, cache_.get()).ok;
  bool full = in_class_mu(spec_, mu_, s, bound_, cache_.get()).ok;
  std::lock_guard lock(log_mutex_);
  log_.push_back({s.size(), incremental, full});
  return incremental;
}

std::vector<MuCheckRecord> MuBoundedClass::log() const {
  std::lock_guard lock(log_mutex_);
  return log_;
}

std::vector<ElementSet> minimal_chain(const PredimensionSpec& spec, const FinStructure& b,
                                      const ElementSet& a) {
  Evaluator ev(spec, b);
  if (!strong_in(ev, a)) throw PreconditionError("chain base is not strong");
  const ElementSet all = b.universe();
  std::vector<ElementSet> chain{a};
  ElementSet cur = a;
  while (cur != all) {
    auto rest = (all - cur).to_vector();
    std::optional<ElementSet> step;
    for (std::size_t size = 1; size <= rest.size() && !step; ++size) {
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        ElementSet x = cur;
        for (auto i : idx) x.insert(rest[i]);
        if (strong_in(ev, x)) {
          step = x;
          break;
        }
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == rest.size() - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    cur = *step;
    chain.push_back(cur);
  }
  return chain;
}

StepResult ThriftyStrategy::extend(const PredimensionSpec& spec, const FinStructure& m,
                                   const ElementSet& base, const ExtensionClass& cls) {
  {
    StepResult whole = FreeStrategy().extend(spec, m, base, cls);
    ElementSet fresh = whole.next.universe() - m.universe();
    if (context_->admits(whole.next, fresh)) return whole;
  }
  const FinStructure& b = cls.extension;
  auto chain = minimal_chain(spec, b, cls.base_set());
  ElementMap g(b.size(), kUnmapped);
  auto base_vec = base.to_vector();
  for (Element i = 0; i < base_vec.size(); ++i) g[i] = base_vec[i];
  FinStructure cur = m;
  std::string kinds;
  for (std::size_t step = 0; step + 1 < chain.size(); ++step) {
    const ElementSet& lo = chain[step];
    const ElementSet& hi = chain[step + 1];
    FinStructure a_struct = induced_substructure(b, lo);
    FinStructure b_struct = induced_substructure(b, hi);
    auto hi_vec = hi.to_vector();
    ElementMap sigma;
    ElementMap tau;
    for (Element j = 0; j < hi_vec.size(); ++j) {
      if (!lo.contains(hi_vec[j])) continue;
      sigma.push_back(j);
      tau.push_back(g[hi_vec[j]]);
    }
    ThriftyOutcome out;
    try {
      out = thrifty_step(spec, *context_, a_struct, b_struct, cur, sigma, tau);
    } catch (const ThriftyFailure& e) {
      throw ThriftyFailure(std::string(e.what()) + "\nwhile extending over " + base.to_string() +
                           " at chain step " + std::to_string(step) + " of size " +
                           std::to_string(cur.size()));
    }
    if (out.kind == ThriftyOutcome::Kind::free_ok) {
      for (Element j = 0; j < hi_vec.size(); ++j) g[hi_vec[j]] = out.amalgam->right.map[j];
      cur = std::move(out.amalgam->amalgam);
      kinds += 'f';
    } else {
      for (Element j = 0; j < hi_vec.size(); ++j) g[hi_vec[j]] = out.embedding[j];
      kinds += 'e';
    }
  }
  return {std::move(cur), "thrifty:" + kinds};
}

CollapsedBuild build_collapsed(const PredimensionSpec& spec, const Signature& sig,
                               const MuFunction& mu, std::size_t k, std::size_t budget,
                               std::uint64_t seed, std::size_t bound) {
  CollapsedBuild out;
  out.context = std::make_shared<MuBoundedClass>(spec, mu, bound == 0 ? k : bound);
  out.approx = build_with_strategy(spec, sig, k, budget, seed,
                                   std::make_shared<ThriftyStrategy>(out.context));
  return out;
}

}  // namespace predim
