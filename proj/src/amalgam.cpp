#include "predim/amalgam.hpp"

#include "predim/errors.hpp"
#include "predim/parallel.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "predim/strong_embeddings.hpp"
#include "predim/text_format.hpp"

namespace predim {

AmalgamResult free_amalgam(const FinStructure& a, const FinStructure& b1, const FinStructure& b2,
                           const ElementMap& s1, const ElementMap& s2,
                           const AnnotationModel& model) {
  if (!(b1.signature() == b2.signature()) || !(a.signature() == b1.signature()))
    throw DomainError("amalgam factors have different signatures");
  if (s1.size() != a.size() || s2.size() != a.size())
    throw DomainError("arrow does not cover the base");
  if (!is_embedding(s1, a, b1, model)) throw DomainError("left arrow is not an embedding");
  if (!is_embedding(s2, a, b2, model)) throw DomainError("right arrow is not an embedding");

  const std::size_t size = b1.size() + b2.size() - a.size();
  if (size > kMaxUniverse) throw DomainError("amalgam exceeds the universe cap");
  ElementMap right(b2.size(), kUnmapped);
  for (Element i = 0; i < a.size(); ++i) right[s2[i]] = s1[i];
  Element next = static_cast<Element>(b1.size());
  for (Element e = 0; e < b2.size(); ++e)
    if (right[e] == kUnmapped) right[e] = next++;

  auto annotations = model.amalgamate(b1, b2, s1, s2, right, size);

  AmalgamResult out;
  out.amalgam = FinStructure(b1.signature(), size);
  for (const auto& inst : b1.instances()) out.amalgam.add_tuple(inst.symbol, inst.elements);
  for (const auto& inst : b2.instances()) {
    std::vector<Element> img;
    for (Element e : inst.elements) img.push_back(right[e]);
    out.amalgam.add_tuple(inst.symbol, std::move(img));
  }
  for (Element e = 0; e < size; ++e) out.amalgam.set_annotation(e, annotations[e]);
  out.left.map.resize(b1.size());
  for (Element e = 0; e < b1.size(); ++e) out.left.map[e] = e;
  out.right.map = right;
  for (Element i = 0; i < a.size(); ++i) out.base.insert(s1[i]);
  return out;
}

AuditReport verify_ap(const PredimensionSpec& spec, const Signature& sig,
                      const SamplingBounds& bounds) {
  AuditReport report;
  report.name = "amalgamation";
  if (bounds.budget == 0) {
    report.warnings.push_back("zero sample budget; vacuous pass");
    return report;
  }
  const AnnotationModel& model = spec.annotation_model();
  std::vector<AuditReport> slots(bounds.budget);
  parallel_for(bounds.budget, [&](std::size_t i) {
    auto& slot = slots[i];
    std::mt19937_64 rng(derive_seed(bounds.seed, i));
    std::size_t n1 = 1 + below(rng, bounds.max_size);
    FinStructure b1 = random_class_member(spec, sig, n1, rng);
    Evaluator ev1(spec, b1);
    ElementSet a_set = random_strong_subset(ev1, rng, 0.3);
    FinStructure a = induced_substructure(b1, a_set);
    std::size_t extra = below(rng, bounds.max_size - std::min(bounds.max_size, a.size()) + 1);
    FinStructure b2 = random_class_extension(spec, a, extra, rng);
    Evaluator ev2(spec, b2);
    ElementMap s1 = a_set.to_vector();
    ElementMap s2(a.size());
    for (Element e = 0; e < a.size(); ++e) s2[e] = e;
    if (!strong_in(ev2, ElementSet::range(a.size()))) {
      ++slot.skipped;
      return;
    }
    ++slot.checked;
    AmalgamResult d = free_amalgam(a, b1, b2, s1, s2, model);
    Evaluator ev(spec, d.amalgam);
    std::string where = "sample " + std::to_string(i) + ": ";
    if (!in_class(ev)) slot.fail(where + "amalgam left the class");
    if (!strong_in(ev, d.left.image())) slot.fail(where + "B1 not strong in the amalgam");
    if (!strong_in(ev, d.right.image())) slot.fail(where + "B2 not strong in the amalgam");
    Rational lhs = ev.delta(d.amalgam.universe());
    Rational rhs = ev1.delta(b1.universe()) + ev2.delta(b2.universe()) -
                   ev1.delta(a_set);
    if (lhs != rhs)
      slot.fail(where + "delta(D)=" + to_string(lhs) + " but sum is " + to_string(rhs) +
                "; amalgam: " + serialize_structure(d.amalgam));
  });
  for (const auto& s : slots) report.absorb(s);
  return report;
}

ThriftyOutcome thrifty_step(const PredimensionSpec& spec, const MuContext& context,
                            const FinStructure& a, const FinStructure& b, const FinStructure& m,
                            const ElementMap& sigma, const ElementMap& tau) {
  const AnnotationModel& model = spec.annotation_model();
  Evaluator ev(spec, m);
  ElementSet base_image;
  for (Element x : tau) base_image.insert(x);
  if (tau.size() != a.size() || !is_embedding(tau, a, m, model))
    throw DomainError("tau is not an embedding of A into M");
  if (!strong_in(ev, base_image))
    throw PreconditionError("image of A " + base_image.to_string() + " is not strong in M");

  AmalgamResult d = free_amalgam(a, m, b, tau, sigma, model);
  ElementSet fresh = d.amalgam.universe() - m.universe();
  ThriftyOutcome out;
  if (context.admits(d.amalgam, fresh)) {
    out.kind = ThriftyOutcome::Kind::free_ok;
    out.amalgam = std::move(d);
    return out;
  }
  ElementMap base_map(b.size(), kUnmapped);
  for (Element i = 0; i < a.size(); ++i) base_map[sigma[i]] = tau[i];
  StrongCache cache(ev);
  auto f = find_strong_embedding(cache, b, base_map, model);
  if (!f)
    throw ThriftyFailure("free amalgam leaves the bounded class and B has no strong copy over A " +
                         base_image.to_string() + "; B:\n" + serialize_structure(b));
  out.kind = ThriftyOutcome::Kind::embed_instead;
  out.embedding = std::move(*f);
  return out;
}

}  // namespace predim
