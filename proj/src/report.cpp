#include "predim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace predim {

namespace {
constexpr std::size_t kKeptWitnesses = 5;
}

void AuditReport::fail(std::string witness) {
  ++violations;
  if (witnesses.size() < kKeptWitnesses) witnesses.push_back(std::move(witness));
}

void AuditReport::absorb(const AuditReport& other) {
  checked += other.checked;
  skipped += other.skipped;
  violations += other.violations;
  for (const auto& w : other.witnesses)
    if (witnesses.size() < kKeptWitnesses) witnesses.push_back(w);
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

void Report::add_audit(const std::string& prefix, const AuditReport& audit) {
  set(prefix + ".checked", audit.checked);
  set(prefix + ".skipped", audit.skipped);
  set(prefix + ".violations", audit.violations);
  set(prefix + ".status", audit.passed() ? "pass" : "fail");
  for (std::size_t i = 0; i < audit.witnesses.size(); ++i) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%03zu", i);
    set(prefix + ".witness." + idx, audit.witnesses[i]);
  }
  for (std::size_t i = 0; i < audit.warnings.size(); ++i) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%03zu", i);
    set(prefix + ".warning." + idx, audit.warnings[i]);
  }
}

std::string Report::machine() const {
  std::string out;
  for (const auto& [k, v] : facts_) {
    std::string value = v;
    std::replace(value.begin(), value.end(), '\n', ' ');
    std::replace(value.begin(), value.end(), '\t', ' ');
    out += k;
    out += '\t';
    out += value;
    out += '\n';
  }
  return out;
}

std::string Report::human() const {
  std::size_t width = 0;
  for (const auto& [k, v] : facts_) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : facts_) {
    out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return out.str();
}

}  // namespace predim
