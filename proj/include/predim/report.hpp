#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "predim/rational.hpp"

namespace predim {

/// Outcome of a sampled property check.
struct AuditReport {
  std::string name;
  std::size_t checked = 0;  // assertions evaluated
  std::size_t skipped = 0;  // samples rejected by a precondition filter
  std::size_t violations = 0;
  std::vector<std::string> witnesses;  // the first few violations
  std::vector<std::string> warnings;

  bool passed() const { return violations == 0; }
  void fail(std::string witness);
  /// Folds another report's counts into this one.
  void absorb(const AuditReport& other);
};

/// Flat key/value report. Machine form is `key<TAB>value` sorted by key.
class Report {
 public:
  void set(const std::string& key, const std::string& value) { facts_[key] = value; }
  void set(const std::string& key, const char* value) { facts_[key] = value; }
  void set(const std::string& key, std::size_t value) { facts_[key] = std::to_string(value); }
  void set(const std::string& key, int value) { facts_[key] = std::to_string(value); }
  void set(const std::string& key, bool value) { facts_[key] = value ? "true" : "false"; }
  void set(const std::string& key, const Rational& value) { facts_[key] = to_string(value); }
  void add_audit(const std::string& prefix, const AuditReport& audit);

  const std::map<std::string, std::string>& facts() const { return facts_; }
  std::string machine() const;
  std::string human() const;

 private:
  std::map<std::string, std::string> facts_;
};

}  // namespace predim
