#include "predim/predimension.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "predim/errors.hpp"
#include "predim/parallel.hpp"
#include "predim/sampling.hpp"
#include "predim/text_format.hpp"

namespace predim {

PredimensionSpec PredimensionSpec::ab_initio() { return PredimensionSpec{}; }

PredimensionSpec PredimensionSpec::fusion(std::uint32_t p) {
  PredimensionSpec spec;
  spec.matroids.push_back({linear_oracle(p), Rational(1)});
  spec.matroids.push_back({free_oracle(), Rational(-1)});
  return spec;
}

std::vector<std::string> PredimensionSpec::contract_violations() const {
  std::vector<std::string> out;
  if (!relational && matroids.empty()) out.push_back("no component configured");
  for (const auto& m : matroids) {
    if (m.coefficient < 0 && !m.oracle->modular())
      out.push_back("negative coefficient " + to_string(m.coefficient) +
                    " on non-modular oracle " + m.oracle->name());
  }
  std::set<std::string> owner_names;
  for (const auto& m : matroids)
    if (m.oracle->annotation_model() != nullptr) owner_names.insert(m.oracle->name());
  if (owner_names.size() > 1) out.push_back("more than one oracle claims the annotations");
  return out;
}

void PredimensionSpec::validate() const {
  auto problems = contract_violations();
  if (!relational && matroids.empty()) throw SpecError("no component configured");
  if (problems.empty() || !checked) return;
  throw SpecError(problems.front());
}

const AnnotationModel& PredimensionSpec::annotation_model() const {
  for (const auto& m : matroids)
    if (const auto* model = m.oracle->annotation_model()) return *model;
  return exact_annotations();
}

bool PredimensionSpec::uses_annotations() const {
  for (const auto& m : matroids)
    if (m.oracle->annotation_model() != nullptr && m.coefficient != 0) return true;
  return false;
}

Rational PredimensionSpec::cardinality_coefficient() const {
  Rational c = relational ? Rational(1) : Rational(0);
  for (const auto& m : matroids)
    if (m.oracle->is_free()) c += m.coefficient;
  return c;
}

bool PredimensionSpec::integer_valued(const Signature& sig) const {
  for (const auto& m : matroids)
    if (!is_integer(m.coefficient)) return false;
  if (relational)
    for (const auto& sym : sig.symbols())
      if (!is_integer(sym.weight)) return false;
  return true;
}

Rational PredimensionSpec::singleton_cap() const {
  Rational cap = cardinality_coefficient();
  for (const auto& m : matroids)
    if (!m.oracle->is_free() && m.coefficient > 0) cap += m.coefficient;
  return cap;
}

PredimensionSpec parse_spec(std::istream& in) {
  PredimensionSpec spec;
  spec.matroids.clear();
  bool relational_seen = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto tok = tokenize_line(raw);
    if (tok.empty()) continue;
    auto on_off = [&](const std::string& word) {
      if (word == "on") return true;
      if (word == "off") return false;
      throw ParseError(line, "expected on|off, got '" + word + "'");
    };
    if (tok[0] == "component" && tok.size() == 3 && tok[1] == "relational") {
      if (relational_seen) throw ParseError(line, "relational component given twice");
      relational_seen = true;
      spec.relational = on_off(tok[2]);
    } else if (tok[0] == "component" && tok.size() == 4 && tok[1] == "matroid") {
      MatroidComponent c;
      try {
        c.oracle = make_oracle(tok[2]);
        c.coefficient = parse_rational(tok[3]);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      spec.matroids.push_back(std::move(c));
    } else if (tok[0] == "component") {
      throw ParseError(line, "usage: component relational on|off | component matroid <name> <p>/<q>");
    } else if (tok[0] == "prune" && tok.size() == 2) {
      spec.prune = on_off(tok[1]);
    } else if (tok[0] == "contract" && tok.size() == 2) {
      if (tok[1] == "checked") {
        spec.checked = true;
      } else if (tok[1] == "unchecked") {
        spec.checked = false;
      } else {
        throw ParseError(line, "expected checked|unchecked");
      }
    } else {
      throw ParseError(line, "unknown directive '" + tok[0] + "'");
    }
  }
  spec.validate();
  return spec;
}

PredimensionSpec parse_spec_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_spec(in);
}

PredimensionSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return parse_spec(in);
}

std::string serialize_spec(const PredimensionSpec& spec) {
  std::ostringstream out;
  out << "component relational " << (spec.relational ? "on" : "off") << '\n';
  for (const auto& m : spec.matroids)
    out << "component matroid " << m.oracle->name() << ' ' << to_string(m.coefficient) << '\n';
  if (!spec.prune) out << "prune off\n";
  if (!spec.checked) out << "contract unchecked\n";
  return out.str();
}

Evaluator::Evaluator(const PredimensionSpec& spec, const FinStructure& s)
    : spec_(spec), s_(s), universe_(s.universe()) {
  std::int64_t l = 1;
  auto fold = [&](const Rational& r) { l = std::lcm(l, r.denominator()); };
  if (spec.relational)
    for (const auto& sym : s.signature().symbols()) fold(sym.weight);
  for (const auto& m : spec.matroids) fold(m.coefficient);
  scale_ = l;
  auto scaled = [&](const Rational& r) { return r.numerator() * (l / r.denominator()); };
  card_ = scaled(spec.cardinality_coefficient());
  weights_.reserve(s.instances().size());
  for (const auto& inst : s.instances())
    weights_.push_back(spec.relational ? scaled(s.signature().symbol(inst.symbol).weight) : 0);
  for (const auto& m : spec.matroids) {
    if (m.oracle->is_free() || m.coefficient == 0) continue;
    rank_terms_.push_back({scaled(m.coefficient), m.oracle->bind(s)});
  }
}

void Evaluator::require_subset(const ElementSet& x) const {
  if (!x.subset_of(universe_)) throw DomainError("set " + x.to_string() + " leaves the universe");
}

std::int64_t Evaluator::scaled_delta(const ElementSet& x) const {
  std::int64_t v = card_ * static_cast<std::int64_t>(x.size());
  if (spec_.relational) {
    const auto& inst = s_.instances();
    for (std::size_t i = 0; i < inst.size(); ++i)
      if (inst[i].support.subset_of(x)) v -= weights_[i];
  }
  for (const auto& t : rank_terms_) v += t.coefficient * t.rank->rank(x);
  return v;
}

std::int64_t Evaluator::scaled_gain(Element v, const ElementSet& w) const {
  std::int64_t g = card_;
  ElementSet wv = w.with(v);
  if (spec_.relational) {
    for (auto idx : s_.incident(v))
      if (s_.instances()[idx].support.subset_of(wv)) g -= weights_[idx];
  }
  for (const auto& t : rank_terms_) {
    int before = t.rank->rank(w);
    int after = t.rank->rank(wv);
    g += t.coefficient * (after - before);
  }
  return g;
}

Rational Evaluator::delta(const ElementSet& x) const {
  require_subset(x);
  return unscale(scaled_delta(x));
}

Rational Evaluator::delta_rel(const ElementSet& a, const ElementSet& b) const {
  require_subset(a);
  require_subset(b);
  ElementSet ab = a | b;
  if (ab == b) return Rational(0);
  return unscale(scaled_delta(ab) - scaled_delta(b));
}

Rational Evaluator::gain(Element v, const ElementSet& w) const {
  require_subset(w.with(v));
  if (w.contains(v)) return Rational(0);
  return unscale(scaled_gain(v, w));
}

Rational delta(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& x) {
  return Evaluator(spec, s).delta(x);
}

Rational delta_rel(const PredimensionSpec& spec, const FinStructure& s, const ElementSet& a,
                   const ElementSet& b) {
  return Evaluator(spec, s).delta_rel(a, b);
}

AuditReport verify_submodularity(const PredimensionSpec& spec, const Signature& sig,
                                 const SamplingBounds& bounds) {
  AuditReport report;
  report.name = "submodularity";
  if (bounds.budget == 0) {
    report.warnings.push_back("zero sample budget; vacuous pass");
    return report;
  }
  std::vector<AuditReport> slots(bounds.budget);
  parallel_for(bounds.budget, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(bounds.seed, i));
    std::size_t n = 1 + below(rng, bounds.max_size);
    double density = static_cast<double>(below(rng, 61)) / 100.0;
    FinStructure s = random_structure(sig, n, density, spec.annotation_model(), rng);
    Evaluator ev(spec, s);
    ElementSet x = random_subset(s.universe(), rng);
    ElementSet y = random_subset(s.universe(), rng);
    auto lhs = ev.scaled_delta(x) + ev.scaled_delta(y);
    auto rhs = ev.scaled_delta(x | y) + ev.scaled_delta(x & y);
    auto& slot = slots[i];
    ++slot.checked;
    if (lhs < rhs) {
      slot.fail("sample " + std::to_string(i) + ": X=" + x.to_string() + " Y=" + y.to_string() +
                " lhs=" + to_string(ev.unscale(lhs)) + " rhs=" + to_string(ev.unscale(rhs)) +
                " structure: " + serialize_structure(s));
    }
  });
  for (const auto& s : slots) report.absorb(s);
  return report;
}

}  // namespace predim
