#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cpl {

/// One residual check. Lower-bound checks (|H| > t, margins > 0) are stored
/// negated so that `pass == (residual < tolerance)` holds for every record.
struct CheckRecord {
  std::string check;
  std::string immersion;
  double residual;
  double tolerance;
  bool pass;
  int samples;
};

/// Informational value that is reported but not gated.
struct InfoRecord {
  std::string name;
  std::string immersion;
  double value;
};

class VerificationReport {
 public:
  void add_check(const std::string& check, const std::string& immersion, double residual, double tolerance,
                 int samples);
  /// Record that `value` exceeds `threshold` (stored negated).
  void add_lower_bound(const std::string& check, const std::string& immersion, double value, double threshold,
                       int samples);
  void add_failure(const std::string& check, const std::string& immersion, const std::string& message);
  void add_info(const std::string& name, const std::string& immersion, double value);
  void merge(const VerificationReport& other);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const std::vector<InfoRecord>& info() const { return info_; }
  const std::vector<std::string>& messages() const { return messages_; }
  const CheckRecord* find(const std::string& check, const std::string& immersion = "") const;
  const InfoRecord* find_info(const std::string& name, const std::string& immersion = "") const;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }

  /// Line-delimited JSON: one record per line in insertion order, then a summary
  /// object carrying the tool version and the echoed configuration.
  void write_jsonl(std::ostream& os, const std::map<std::string, std::string>& config) const;

 private:
  std::vector<CheckRecord> checks_;
  std::vector<InfoRecord> info_;
  std::vector<std::string> messages_;
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Per-check tolerance overrides keyed by check name.
using Tolerances = std::map<std::string, double>;

inline double tolerance_for(const Tolerances& t, const std::string& check, double fallback) {
  auto it = t.find(check);
  return it == t.end() ? fallback : it->second;
}

}  // namespace cpl
