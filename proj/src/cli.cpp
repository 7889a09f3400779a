#include "predim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "predim/amalgam.hpp"
#include "predim/audits.hpp"
#include "predim/builder.hpp"
#include "predim/canonical.hpp"
#include "predim/collapse.hpp"
#include "predim/geometry.hpp"
#include "predim/parallel.hpp"
#include "predim/predimension.hpp"
#include "predim/sampling.hpp"
#include "predim/strong.hpp"
#include "predim/text_format.hpp"

namespace predim {
namespace {

// Verbs return their exit status and fill the report; `text` is extra
// output (structures, maps) printed after the report.
struct Outcome {
  Report report;
  int status = 0;
  std::string text;
  std::string value;  // human output of single-value verbs
};

std::string key_index(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

PredimensionSpec load_spec_or_default(const RunConfig& c) {
  return c.spec_path.empty() ? PredimensionSpec::ab_initio() : load_spec(c.spec_path);
}

Signature load_signature(const RunConfig& c) {
  return c.signature_path.empty() ? Signature::graph() : load_structure(c.signature_path).signature();
}

const std::string& input(const RunConfig& c, std::size_t i, const char* what) {
  if (c.inputs.size() <= i) throw UsageError(c.verb + ": missing " + what);
  return c.inputs[i];
}

ElementSet require_set(const std::string& text, const char* flag, const RunConfig& c) {
  if (text.empty()) throw UsageError(c.verb + ": " + flag + " is required");
  return parse_element_list(text);
}

void emit_structure(const RunConfig& c, const FinStructure& s, Outcome& o) {
  if (!c.out_path.empty()) {
    save_structure(c.out_path, s);
    o.report.set("output", c.out_path);
  } else {
    o.text += serialize_structure(s);
  }
}

void add_richness(Report& r, const RichnessReport& rich) {
  r.set("richness.satisfied", rich.satisfied);
  r.set("richness.total", rich.total);
  r.set("richness.fraction", rich.fraction());
  for (std::size_t i = 0; i < rich.unmet.size(); ++i) {
    const auto& u = rich.unmet[i];
    r.set("richness.unmet." + key_index(i),
          u.base.to_string() + " " + std::to_string(u.extension_size) + " " + to_hex(u.code));
  }
}

void add_build(Report& r, const GenericApprox& ga) {
  r.set("build.size", ga.current.size());
  r.set("build.rounds", ga.rounds);
  r.set("build.steps", ga.steps.size());
  r.set("build.complete", ga.complete);
  r.set("build.stop-reason", ga.stop_reason.empty() ? std::string("none") : ga.stop_reason);
  r.set("build.code", to_hex(canonical_form(ga.current, ga.spec.annotation_model())));
}

Outcome verb_delta(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  Evaluator ev(spec, s);
  ElementSet x = c.set.empty() ? s.universe() : parse_element_list(c.set);
  Outcome o;
  Rational v = c.over.empty() ? ev.delta(x) : ev.delta_rel(x, parse_element_list(c.over));
  o.report.set("delta", v);
  o.value = to_string(v);
  return o;
}

Outcome verb_strong(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  Evaluator ev(spec, s);
  ElementSet a = c.set.empty() ? ElementSet{} : parse_element_list(c.set);
  ElementSet b = c.over.empty() ? s.universe() : parse_element_list(c.over);
  StrongReport sr = c.brute ? brute_force_is_strong(ev, a, b, c.oracle_cap) : is_strong(ev, a, b);
  Outcome o;
  o.report.set("strong", sr.verdict);
  o.report.set("deficiency", sr.deficiency);
  o.report.set("witness", sr.witness ? format_element_list(*sr.witness) : std::string("none"));
  o.status = sr.verdict ? 0 : 1;
  return o;
}

Outcome verb_closure(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  Evaluator ev(spec, s);
  ElementSet cl = closure(ev, parse_element_list(c.set));
  Outcome o;
  o.report.set("closure", format_element_list(cl));
  o.report.set("delta", ev.delta(cl));
  o.value = format_element_list(cl);
  return o;
}

Outcome verb_check_class(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  Evaluator ev(spec, s);
  auto w = class_witness(ev);
  Outcome o;
  o.report.set("in-class", !w.has_value());
  if (w) {
    o.report.set("witness", format_element_list(*w));
    o.report.set("witness.delta", ev.delta(*w));
    o.status = 1;
  }
  return o;
}

Outcome verb_amalgamate(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto a = load_structure(input(c, 0, "base structure"));
  auto b1 = load_structure(input(c, 1, "first extension"));
  auto b2 = load_structure(input(c, 2, "second extension"));
  if (c.maps.size() != 2) throw UsageError("amalgamate: exactly two --map files are required");
  auto r = free_amalgam(a, b1, b2, load_map(c.maps[0]), load_map(c.maps[1]),
                        spec.annotation_model());
  Outcome o;
  o.report.set("amalgam.size", r.amalgam.size());
  o.report.set("amalgam.base", format_element_list(r.base));
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    std::filesystem::path dir(c.out_dir);
    save_structure(dir / "amalgam.txt", r.amalgam);
    std::ofstream(dir / "left.map") << serialize_map(r.left.map);
    std::ofstream(dir / "right.map") << serialize_map(r.right.map);
    o.report.set("output", c.out_dir);
  } else {
    emit_structure(c, r.amalgam, o);
    o.text += "# left\n" + serialize_map(r.left.map) + "# right\n" + serialize_map(r.right.map);
  }
  return o;
}

Outcome verb_build(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto sig = load_signature(c);
  GenericApprox ga = build_generic(spec, sig, c.k, c.budget, c.seed);
  Outcome o;
  add_build(o.report, ga);
  add_richness(o.report, audit_richness(spec, ga.current, c.k, ga.classes.get()));
  emit_structure(c, ga.current, o);
  return o;
}

Outcome verb_audit(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  auto rich = audit_richness(spec, s, c.k);
  Outcome o;
  add_richness(o.report, rich);
  o.status = rich.unmet.empty() ? 0 : 1;
  return o;
}

Outcome verb_dim(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  Rational v = dim(spec, s, require_set(c.set, "--set", c), parse_element_list(c.over));
  Outcome o;
  o.report.set("dim", v);
  o.value = to_string(v);
  return o;
}

Outcome verb_gcl(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  require_gcl_support(spec, s.signature());
  Evaluator ev(spec, s);
  ElementSet b = parse_element_list(c.over);
  Outcome o;
  if (!c.element.empty()) {
    ElementSet e = parse_element_list(c.element);
    if (e.size() != 1) throw UsageError("gcl: --element takes one id");
    bool member = gcl_member(ev, static_cast<Element>(e.first()), b);
    o.report.set("gcl-member", member);
    o.value = member ? "true" : "false";
  } else {
    ElementSet g = gcl(ev, b);
    o.report.set("gcl", format_element_list(g));
    o.value = format_element_list(g);
  }
  return o;
}

Outcome verb_exchange_audit(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  require_gcl_support(spec, s.signature());
  Outcome o;
  auto ex = check_exchange(spec, s, c.samples, c.seed);
  auto add = check_additivity(spec, s, c.samples, derive_seed(c.seed, 1));
  auto cl = check_gcl_closure(spec, s, c.samples, derive_seed(c.seed, 2));
  o.report.add_audit("exchange", ex);
  o.report.add_audit("additivity", add);
  o.report.add_audit("gcl-closure", cl);
  o.status = ex.passed() && add.passed() && cl.passed() ? 0 : 1;
  return o;
}

std::string tag_string(const ExtensionTags& t) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(t.strong, "strong");
  add(t.minimal, "minimal");
  add(t.pre_algebraic, "pre-algebraic");
  return s.empty() ? std::string("none") : s;
}

Outcome verb_enumerate_min(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto a = load_structure(input(c, 0, "base structure"));
  if (c.n == 0) throw UsageError("enumerate-min: --n is required");
  auto classes = enumerate_minimal_extensions(spec, a, c.n);
  Outcome o;
  o.report.set("classes", classes.size());
  std::filesystem::path dir(c.out_dir);
  if (!c.out_dir.empty()) std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    std::string key = "class." + key_index(i);
    o.report.set(key + ".size", cls.extension.size());
    o.report.set(key + ".delta", cls.delta);
    o.report.set(key + ".tags", tag_string(cls.tags));
    o.report.set(key + ".code", to_hex(cls.code));
    if (!c.out_dir.empty()) {
      std::string stem = "class" + key_index(i);
      save_structure(dir / (stem + ".base.txt"), cls.base);
      save_structure(dir / (stem + ".ext.txt"), cls.extension);
      ElementMap m(cls.base.size());
      for (std::size_t e = 0; e < m.size(); ++e) m[e] = static_cast<Element>(e);
      std::ofstream(dir / (stem + ".map")) << serialize_map(m);
      std::ofstream(dir / (stem + ".tags")) << tag_string(cls.tags) << '\n';
    }
  }
  return o;
}

MuFunction load_mu_or_default(const RunConfig& c) {
  return c.mu_path.empty() ? MuFunction{} : load_mu(c.mu_path);
}

void add_mu(Report& r, const std::string& prefix, const MuReport& mr) {
  r.set(prefix + ".ok", mr.ok);
  r.set(prefix + ".pairs-checked", mr.pairs_checked);
  r.set(prefix + ".violations", mr.violations.size());
  for (std::size_t i = 0; i < mr.violations.size() && i < 5; ++i) {
    const auto& v = mr.violations[i];
    r.set(prefix + ".violation." + key_index(i),
          v.base.to_string() + " " + std::to_string(v.count) + ">" + std::to_string(v.bound) +
              " " + to_hex(v.code));
  }
}

Outcome verb_check_mu(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto s = load_structure(input(c, 0, "structure file"));
  auto mu = load_mu_or_default(c);
  Outcome o;
  if (!in_class(spec, s)) {
    o.report.set("in-class", false);
    o.status = 1;
    return o;
  }
  auto mr = in_class_mu(spec, mu, s, c.bound == 0 ? c.k : c.bound);
  add_mu(o.report, "mu", mr);
  o.status = mr.ok ? 0 : 1;
  return o;
}

Outcome verb_count_copies(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto m = load_structure(input(c, 0, "structure file"));
  auto ext = load_structure(input(c, 1, "extension file"));
  ElementSet a0 = parse_element_list(c.set);
  if (a0.size() > ext.size()) throw UsageError("count-copies: base larger than the extension");
  ExtensionClass cls;
  cls.base = induced_substructure(ext, ElementSet::range(a0.size()));
  cls.extension = ext;
  cls.delta = delta_rel(spec, ext, cls.new_elements(), cls.base_set());
  std::size_t count = count_independent_copies(spec, m, a0, cls, c.copy_cap);
  Outcome o;
  o.report.set("copies", count);
  o.value = std::to_string(count);
  return o;
}

Outcome verb_collapse_build(const RunConfig& c) {
  auto spec = load_spec_or_default(c);
  auto sig = load_signature(c);
  auto mu = load_mu_or_default(c);
  std::size_t bound = c.bound == 0 ? c.k : c.bound;
  Outcome o;
  CollapsedBuild cb = build_collapsed(spec, sig, mu, c.k, c.budget, c.seed, bound);
  add_build(o.report, cb.approx);
  std::size_t agree = 0;
  auto log = cb.context->log();
  for (const auto& rec : log) agree += rec.incremental == rec.full ? 1 : 0;
  o.report.set("mu.checks", log.size());
  o.report.set("mu.checks-agreeing", agree);
  auto mr = in_class_mu(spec, mu, cb.approx.current, bound);
  add_mu(o.report, "mu.final", mr);
  add_richness(o.report, audit_richness(spec, cb.approx.current, c.k, cb.approx.classes.get()));
  o.status = mr.ok && agree == log.size() ? 0 : 1;
  emit_structure(c, cb.approx.current, o);
  return o;
}

Outcome verb_audit_all(const RunConfig& c) {
  Outcome o;
  o.report = audit_all(c);
  o.status = o.report.facts().at("status") == "pass" ? 0 : 1;
  return o;
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& verbs() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table = {
      {"delta", verb_delta},
      {"strong", verb_strong},
      {"closure", verb_closure},
      {"check-class", verb_check_class},
      {"amalgamate", verb_amalgamate},
      {"build", verb_build},
      {"audit", verb_audit},
      {"dim", verb_dim},
      {"gcl", verb_gcl},
      {"exchange-audit", verb_exchange_audit},
      {"enumerate-min", verb_enumerate_min},
      {"check-mu", verb_check_mu},
      {"count-copies", verb_count_copies},
      {"collapse-build", verb_collapse_build},
      {"audit-all", verb_audit_all},
  };
  return table;
}

// Runs one sub-audit; an exception counts as a failure with its message as
// the witness.
void guarded(Report& r, bool& passed, const std::string& name,
             const std::function<std::vector<std::pair<std::string, AuditReport>>()>& body) {
  try {
    for (auto& [key, audit] : body()) {
      r.add_audit(key, audit);
      passed = passed && audit.passed();
    }
  } catch (const Error& e) {
    AuditReport failed;
    failed.fail(std::string("error: ") + e.what());
    r.add_audit(name, failed);
    passed = false;
  }
}

}  // namespace

Report audit_all(const RunConfig& c) {
  PredimensionSpec spec = load_spec_or_default(c);
  Signature sig = load_signature(c);
  Report r;
  bool passed = true;
  auto bounds = [&](std::uint64_t salt, std::size_t max_size) {
    return SamplingBounds{c.samples, max_size, derive_seed(c.seed, salt)};
  };

  guarded(r, passed, "submodularity", [&] {
    return std::vector{std::pair{std::string("submodularity"),
                                 verify_submodularity(spec, sig, bounds(1, c.max_size))}};
  });
  guarded(r, passed, "strong-laws", [&] {
    auto laws = check_strong_laws(spec, sig, bounds(2, c.max_size));
    return std::vector{std::pair{std::string("strong-laws.transitivity"), laws.transitivity},
                       std::pair{std::string("strong-laws.intersection"), laws.intersection},
                       std::pair{std::string("strong-laws.absorption"), laws.absorption}};
  });
  guarded(r, passed, "amalgamation", [&] {
    return std::vector{
        std::pair{std::string("amalgamation"), verify_ap(spec, sig, bounds(3, c.max_size))}};
  });
  guarded(r, passed, "oracle-equivalence", [&] {
    return std::vector{std::pair{
        std::string("oracle-equivalence"),
        check_oracle_equivalence(spec, sig, bounds(4, c.max_size), c.oracle_cap)}};
  });

  bool geometric = true;
  try {
    require_gcl_support(spec, sig);
  } catch (const UnsupportedSpecError&) {
    geometric = false;
  }
  if (c.samples == 0) {
    AuditReport vacuous;
    vacuous.warnings.push_back("zero sample budget; vacuous pass");
    r.add_audit("exchange", vacuous);
    r.add_audit("mu", vacuous);
  } else {
    guarded(r, passed, "exchange", [&] {
      if (!geometric) {
        AuditReport skipped;
        skipped.warnings.push_back("spec does not support the geometric closure; skipped");
        return std::vector{std::pair{std::string("exchange"), skipped}};
      }
      GenericApprox ga = build_generic(spec, sig, c.k, c.budget, c.seed);
      return std::vector{
          std::pair{std::string("exchange"),
                    check_exchange(spec, ga.current, c.samples, derive_seed(c.seed, 5))},
          std::pair{std::string("additivity"),
                    check_additivity(spec, ga.current, c.samples, derive_seed(c.seed, 6))}};
    });
    guarded(r, passed, "mu", [&] {
      MuFunction mu = load_mu_or_default(c);
      CollapsedBuild cb = build_collapsed(spec, sig, mu, c.k, c.budget, c.seed);
      AuditReport agreement;
      agreement.name = "mu-incremental";
      for (const auto& rec : cb.context->log()) {
        ++agreement.checked;
        if (rec.incremental != rec.full)
          agreement.fail("size " + std::to_string(rec.size) + ": incremental " +
                         (rec.incremental ? "admits" : "rejects"));
      }
      AuditReport membership;
      membership.name = "mu-membership";
      auto mr = in_class_mu(spec, mu, cb.approx.current, c.k);
      membership.checked = mr.pairs_checked;
      for (const auto& v : mr.violations)
        membership.fail(v.base.to_string() + " " + std::to_string(v.count) + ">" +
                        std::to_string(v.bound));
      return std::vector{std::pair{std::string("mu.incremental"), agreement},
                         std::pair{std::string("mu.membership"), membership}};
    });
  }
  r.set("status", passed ? "pass" : "fail");
  return r;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto it = verbs().find(config.verb);
  if (it == verbs().end()) {
    err << "unknown verb: " << config.verb << '\n';
    return 2;
  }
  set_thread_cap(config.threads);
  Outcome o;
  try {
    o = it->second(config);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedSpecError& e) {
    err << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return 2;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << '\n';
    return 2;
  } catch (const AmalgamError& e) {
    err << "amalgam error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (config.format == ReportFormat::machine) {
    out << o.report.machine();
  } else if (!o.value.empty()) {
    out << o.value << '\n';
  } else {
    out << o.report.human();
  }
  if (!o.text.empty()) {
    if (config.format == ReportFormat::human || !o.report.facts().empty()) out << '\n';
    out << o.text;
  }
  return o.status;
}

}  // namespace predim
