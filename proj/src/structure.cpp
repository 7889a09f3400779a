#include "predim/structure.hpp"

#include <algorithm>

#include "predim/annotation.hpp"
#include "predim/errors.hpp"

namespace predim {

Signature::Signature(std::vector<Symbol> symbols, TupleSemantics semantics)
    : symbols_(std::move(symbols)), semantics_(semantics) {
  std::set<std::string> names;
  for (const auto& sym : symbols_) {
    if (sym.arity < 1) throw DomainError("symbol '" + sym.name + "' has arity 0");
    if (sym.weight <= 0) throw DomainError("symbol '" + sym.name + "' needs a positive weight");
    if (!names.insert(sym.name).second)
      throw DomainError("duplicate symbol name '" + sym.name + "'");
  }
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<SymbolId>(i);
  return std::nullopt;
}

Signature Signature::graph(Rational weight) {
  return Signature({Symbol{"E", 2, weight}});
}

FinStructure::FinStructure(Signature signature, std::size_t n)
    : signature_(std::move(signature)), n_(n), incidence_(n), annotations_(n) {
  if (n > kMaxUniverse) throw DomainError("universe larger than the supported cap");
}

std::vector<Element> FinStructure::normalize(std::vector<Element> elements) const {
  if (signature_.semantics() == TupleSemantics::unordered_distinct)
    std::sort(elements.begin(), elements.end());
  return elements;
}

bool FinStructure::add_tuple(SymbolId symbol, std::vector<Element> elements) {
  if (symbol >= signature_.size()) throw DomainError("unknown symbol id");
  const Symbol& sym = signature_.symbol(symbol);
  if (elements.size() != sym.arity)
    throw DomainError("tuple for '" + sym.name + "' has wrong arity");
  for (Element e : elements)
    if (e >= n_) throw DomainError("tuple entry " + std::to_string(e) + " outside the universe");
  elements = normalize(std::move(elements));
  if (signature_.semantics() == TupleSemantics::unordered_distinct &&
      std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw DomainError("tuple for '" + sym.name + "' repeats an element");
  if (!index_.emplace(symbol, elements).second) return false;

  Instance inst;
  inst.symbol = symbol;
  inst.support = ElementSet(std::span<const Element>(elements));
  inst.elements = std::move(elements);
  auto idx = static_cast<std::uint32_t>(instances_.size());
  for (Element e : inst.support) incidence_[e].push_back(idx);
  instances_.push_back(std::move(inst));
  return true;
}

bool FinStructure::add_tuple(std::string_view symbol, std::vector<Element> elements) {
  auto id = signature_.find(symbol);
  if (!id) throw DomainError("unknown symbol '" + std::string(symbol) + "'");
  return add_tuple(*id, std::move(elements));
}

bool FinStructure::has_tuple(SymbolId symbol, std::vector<Element> elements) const {
  return index_.count({symbol, normalize(std::move(elements))}) != 0;
}

void FinStructure::set_annotation(Element e, Annotation tokens) {
  if (e >= n_) throw DomainError("annotation for element outside the universe");
  annotations_[e] = std::move(tokens);
}

bool FinStructure::has_annotations() const {
  return std::any_of(annotations_.begin(), annotations_.end(),
                     [](const Annotation& a) { return !a.empty(); });
}

std::vector<std::pair<SymbolId, std::vector<Element>>> FinStructure::sorted_instances() const {
  return {index_.begin(), index_.end()};
}

bool FinStructure::operator==(const FinStructure& other) const {
  return n_ == other.n_ && signature_ == other.signature_ && index_ == other.index_ &&
         annotations_ == other.annotations_;
}

ElementSet Embedding::image(const ElementSet& s) const {
  ElementSet out;
  for (Element e : s) out.insert(map.at(e));
  return out;
}

ElementSet Embedding::image() const {
  ElementSet out;
  for (Element e : map) out.insert(e);
  return out;
}

FinStructure induced_substructure(const FinStructure& s, const ElementSet& x) {
  if (!x.subset_of(s.universe())) throw DomainError("subset is not inside the universe");
  ElementMap new_id(s.size(), kUnmapped);
  Element next = 0;
  for (Element e : x) new_id[e] = next++;

  FinStructure out(s.signature(), x.size());
  for (const auto& inst : s.instances()) {
    if (!inst.support.subset_of(x)) continue;
    std::vector<Element> mapped;
    mapped.reserve(inst.elements.size());
    for (Element e : inst.elements) mapped.push_back(new_id[e]);
    out.add_tuple(inst.symbol, std::move(mapped));
  }
  for (Element e : x)
    if (!s.annotation(e).empty()) out.set_annotation(new_id[e], s.annotation(e));
  return out;
}

FinStructure relabel(const FinStructure& s, const ElementMap& new_id, std::size_t new_size) {
  if (new_id.size() != s.size()) throw DomainError("relabeling map has the wrong length");
  FinStructure out(s.signature(), new_size);
  for (const auto& inst : s.instances()) {
    std::vector<Element> mapped;
    mapped.reserve(inst.elements.size());
    for (Element e : inst.elements) mapped.push_back(new_id[e]);
    out.add_tuple(inst.symbol, std::move(mapped));
  }
  for (Element e = 0; e < s.size(); ++e)
    if (!s.annotation(e).empty()) out.set_annotation(new_id[e], s.annotation(e));
  return out;
}

bool is_embedding(const ElementMap& f, const FinStructure& s, const FinStructure& t) {
  return is_embedding(f, s, t, exact_annotations());
}

bool is_embedding(const ElementMap& f, const FinStructure& s, const FinStructure& t,
                  const AnnotationModel& model) {
  if (f.size() != s.size()) throw DomainError("map is not defined on the whole source");
  ElementSet image;
  for (Element e : f) {
    if (e == kUnmapped) throw DomainError("map is not defined on the whole source");
    if (e >= t.size()) return false;
    if (image.contains(e)) return false;
    image.insert(e);
  }
  if (!(s.signature() == t.signature())) return false;

  // Forward: every instance of s lands on an instance of t.
  for (const auto& inst : s.instances()) {
    std::vector<Element> mapped;
    for (Element e : inst.elements) mapped.push_back(f[e]);
    if (!t.has_tuple(inst.symbol, mapped)) return false;
  }
  // Backward: the image induces no extra instances.
  std::size_t induced = 0;
  for (const auto& inst : t.instances())
    if (inst.support.subset_of(image)) ++induced;
  if (induced != s.instances().size()) return false;

  std::vector<Element> order(s.size());
  for (Element e = 0; e < s.size(); ++e) order[e] = e;
  return annotations_equivalent(model, s, order, t, f);
}

Rational total_weight(const FinStructure& s) {
  Rational w(0);
  for (const auto& inst : s.instances()) w += s.signature().symbol(inst.symbol).weight;
  return w;
}

}  // namespace predim
