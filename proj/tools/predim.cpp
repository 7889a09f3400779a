#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "predim/cli.hpp"
#include "predim/parallel.hpp"

namespace {

struct VerbInfo {
  const char* name;
  const char* help;
  const char* inputs;  // positional description, empty when none
  std::vector<std::string> options;
};

const std::vector<VerbInfo>& verb_table() {
  static const std::vector<VerbInfo> table = {
      {"delta", "predimension of --set (default: everything), or relative to --over",
       "STRUCTURE", {"set", "over"}},
      {"strong", "is --set strong in --over (default: the whole structure)", "STRUCTURE",
       {"set", "over", "brute", "oracle-cap"}},
      {"closure", "least strong superset of --set", "STRUCTURE", {"set"}},
      {"check-class", "all subsets have nonnegative predimension", "STRUCTURE", {}},
      {"amalgamate", "free amalgam of B1 and B2 over A", "A B1 B2", {"map", "out", "out-dir"}},
      {"build", "finite approximation of the generic structure", "",
       {"signature", "k", "budget", "seed", "out"}},
      {"audit", "richness obligations up to --k", "STRUCTURE", {"k"}},
      {"dim", "dimension of --set over --over", "STRUCTURE", {"set", "over"}},
      {"gcl", "geometric closure of --over, or membership of --element", "STRUCTURE",
       {"over", "element"}},
      {"exchange-audit", "sampled exchange and additivity checks", "STRUCTURE",
       {"samples", "seed"}},
      {"enumerate-min", "minimal strong extensions with at most --n elements", "BASE",
       {"n", "out-dir"}},
      {"check-mu", "bound on independent copies of bi-minimal classes", "STRUCTURE",
       {"mu", "k", "bound"}},
      {"count-copies", "independent strong copies of EXTENSION over --set", "STRUCTURE EXTENSION",
       {"set", "cap"}},
      {"collapse-build", "builder restricted by a mu function", "",
       {"signature", "mu", "k", "budget", "seed", "bound", "out"}},
      {"audit-all", "every sampled property audit", "",
       {"signature", "mu", "samples", "max-size", "oracle-cap", "k", "budget", "seed"}},
  };
  return table;
}

void add_option(CLI::App* sub, const std::string& name, predim::RunConfig& c) {
  if (name == "set") sub->add_option("--set", c.set, "element ids, e.g. 0,2,5");
  else if (name == "over") sub->add_option("--over", c.over, "element ids");
  else if (name == "element") sub->add_option("--element", c.element, "one element id");
  else if (name == "brute") sub->add_flag("--brute", c.brute, "use exhaustive enumeration");
  else if (name == "oracle-cap")
    sub->add_option("--oracle-cap", c.oracle_cap, "size cap for brute-force checks")
        ->check(CLI::NonNegativeNumber);
  else if (name == "map") sub->add_option("--map", c.maps, "embedding map file (twice)");
  else if (name == "out") sub->add_option("--out", c.out_path, "output structure file");
  else if (name == "out-dir") sub->add_option("--out-dir", c.out_dir, "output directory");
  else if (name == "signature")
    sub->add_option("--signature", c.signature_path, "structure file supplying the signature");
  else if (name == "k") sub->add_option("--k", c.k, "extension size bound")->check(CLI::NonNegativeNumber);
  else if (name == "budget")
    sub->add_option("--budget", c.budget, "universe size cap")->check(CLI::NonNegativeNumber);
  else if (name == "seed") sub->add_option("--seed", c.seed, "64-bit seed");
  else if (name == "samples")
    sub->add_option("--samples", c.samples, "samples per audit")->check(CLI::NonNegativeNumber);
  else if (name == "max-size")
    sub->add_option("--max-size", c.max_size, "largest sampled structure")
        ->check(CLI::NonNegativeNumber);
  else if (name == "n") sub->add_option("--n", c.n, "largest extension")->check(CLI::NonNegativeNumber);
  else if (name == "mu") sub->add_option("--mu", c.mu_path, "mu table file");
  else if (name == "bound")
    sub->add_option("--bound", c.bound, "largest class size for mu checks (default --k)")
        ->check(CLI::NonNegativeNumber);
  else if (name == "cap")
    sub->add_option("--cap", c.copy_cap, "stop counting above this")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"predim: predimension, strong closure and amalgamation tools"};
  app.require_subcommand(1);
  predim::RunConfig config;
  config.threads = predim::default_threads();
  std::string format = "human";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  app.add_option("--threads", config.threads, "worker cap (default: PREDIM_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--spec", config.spec_path, "predimension spec file (default: ab initio)");
  app.fallthrough();

  for (const auto& verb : verb_table()) {
    CLI::App* sub = app.add_subcommand(verb.name, verb.help);
    if (verb.inputs[0] != '\0') sub->add_option("inputs", config.inputs, verb.inputs);
    for (const auto& name : verb.options) add_option(sub, name, config);
    sub->callback([&config, name = std::string(verb.name)] { config.verb = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.format = format == "machine" ? predim::ReportFormat::machine : predim::ReportFormat::human;
  return predim::run(config, std::cout, std::cerr);
}
