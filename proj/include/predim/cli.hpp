#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "predim/errors.hpp"
#include "predim/report.hpp"

namespace predim {

/// Missing or contradictory command-line input.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class ReportFormat { human, machine };

struct RunConfig {
  std::string verb;
  std::vector<std::string> inputs;
  std::string spec_path;       // empty: ab initio with alpha = 1
  std::string signature_path;  // structure file whose signature is used; empty: graph
  std::vector<std::string> maps;
  std::string mu_path;
  std::string out_path;
  std::string out_dir;

  std::string set;      // element lists, e.g. "0,2,5"
  std::string over;
  std::string element;
  bool brute = false;

  std::size_t k = 3;
  std::size_t budget = 40;
  std::size_t bound = 0;  // largest |B| for mu checks; 0 means k
  std::size_t n = 0;      // enumerate-min size cap
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t max_size = 10;
  std::size_t oracle_cap = 12;
  std::size_t copy_cap = SIZE_MAX;
  std::size_t threads = 0;  // 0: default cap

  ReportFormat format = ReportFormat::human;
};

/// Runs one verb. Exit status 0 on success, 1 when a property violation
/// was found, 2 on usage or parse errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Every sampled audit with seeds derived from config.seed. The key
/// `status` is `pass` or `fail`.
Report audit_all(const RunConfig& config);

}  // namespace predim
