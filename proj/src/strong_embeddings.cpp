#include "predim/strong_embeddings.hpp"

#include "predim/errors.hpp"

namespace predim {

bool StrongCache::strong(const ElementSet& x) {
  {
    std::lock_guard lock(mutex_);
    auto it = strong_.find(x);
    if (it != strong_.end()) return it->second;
  }
  bool verdict = strong_in(ev_, x);
  std::lock_guard lock(mutex_);
  strong_.emplace(x, verdict);
  return verdict;
}

ElementSet StrongCache::closure(const ElementSet& x) {
  {
    std::lock_guard lock(mutex_);
    auto it = closure_.find(x);
    if (it != closure_.end()) return it->second;
  }
  ElementSet c = predim::closure(ev_, x);
  std::lock_guard lock(mutex_);
  closure_.emplace(x, c);
  return c;
}

ElementMap pointed_base_map(std::span<const Element> base, std::size_t pattern_size) {
  if (base.size() > pattern_size) throw DomainError("base larger than the pattern");
  ElementMap map(pattern_size, kUnmapped);
  for (std::size_t i = 0; i < base.size(); ++i) map[i] = base[i];
  return map;
}

namespace {

class Search {
 public:
  Search(StrongCache& cache, const FinStructure& pattern, const ElementMap& base_map,
         const AnnotationModel& model, const std::function<bool(const ElementMap&)>& visit)
      : cache_(cache),
        m_(cache.evaluator().structure()),
        p_(pattern),
        model_(model),
        visit_(visit),
        map_(base_map),
        inverse_(m_.size(), kUnmapped) {
    if (map_.size() != p_.size()) throw DomainError("base map size differs from the pattern");
    if (!(p_.signature() == m_.signature())) throw DomainError("signatures differ");
    for (Element i = 0; i < map_.size(); ++i) {
      if (map_[i] == kUnmapped) {
        free_.push_back(i);
        continue;
      }
      if (map_[i] >= m_.size()) throw DomainError("base map leaves the target universe");
      if (inverse_[map_[i]] != kUnmapped) throw DomainError("base map is not injective");
      inverse_[map_[i]] = i;
      assigned_.insert(i);
    }
  }

  std::size_t run() {
    if (!consistent_base()) return 0;
    extend(0);
    return visited_;
  }

 private:
  bool consistent_base() const {
    for (Element i : assigned_)
      if (!locally_consistent(i)) return false;
    return true;
  }

  /// Instances touching pattern element i among assigned elements map both ways.
  bool locally_consistent(Element i) const {
    for (auto idx : p_.incident(i)) {
      const Instance& inst = p_.instances()[idx];
      if (!inst.support.subset_of(assigned_)) continue;
      std::vector<Element> img;
      for (Element e : inst.elements) img.push_back(map_[e]);
      if (!m_.has_tuple(inst.symbol, img)) return false;
    }
    Element x = map_[i];
    for (auto idx : m_.incident(x)) {
      const Instance& inst = m_.instances()[idx];
      std::vector<Element> pre;
      bool inside = true;
      for (Element e : inst.elements) {
        if (inverse_[e] == kUnmapped || !assigned_.contains(inverse_[e])) {
          inside = false;
          break;
        }
        pre.push_back(inverse_[e]);
      }
      if (inside && !p_.has_tuple(inst.symbol, pre)) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (stopped_) return;
    if (depth == free_.size()) {
      finish();
      return;
    }
    Element i = free_[depth];
    for (Element x = 0; x < m_.size() && !stopped_; ++x) {
      if (inverse_[x] != kUnmapped) continue;
      map_[i] = x;
      inverse_[x] = i;
      assigned_.insert(i);
      if (locally_consistent(i)) extend(depth + 1);
      assigned_.erase(i);
      inverse_[x] = kUnmapped;
      map_[i] = kUnmapped;
    }
  }

  void finish() {
    std::vector<Element> order(p_.size());
    for (Element i = 0; i < p_.size(); ++i) order[i] = i;
    if (p_.has_annotations() || m_.has_annotations()) {
      if (!annotations_equivalent(model_, p_, order, m_, map_)) return;
    }
    ElementSet image;
    for (Element x : map_) image.insert(x);
    if (!cache_.strong(image)) return;
    ++visited_;
    if (!visit_(map_)) stopped_ = true;
  }

  StrongCache& cache_;
  const FinStructure& m_;
  const FinStructure& p_;
  const AnnotationModel& model_;
  const std::function<bool(const ElementMap&)>& visit_;
  ElementMap map_;
  std::vector<Element> inverse_;
  std::vector<Element> free_;
  ElementSet assigned_;
  std::size_t visited_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::size_t for_each_strong_embedding(StrongCache& cache, const FinStructure& pattern,
                                      const ElementMap& base_map, const AnnotationModel& model,
                                      const std::function<bool(const ElementMap&)>& visit) {
  return Search(cache, pattern, base_map, model, visit).run();
}

std::optional<ElementMap> find_strong_embedding(StrongCache& cache, const FinStructure& pattern,
                                                const ElementMap& base_map,
                                                const AnnotationModel& model) {
  std::optional<ElementMap> found;
  for_each_strong_embedding(cache, pattern, base_map, model, [&](const ElementMap& f) {
    found = f;
    return false;
  });
  return found;
}

}  // namespace predim
