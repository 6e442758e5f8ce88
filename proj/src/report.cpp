#include "cpl/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace cpl {

void VerificationReport::add_check(const std::string& check, const std::string& immersion, double residual,
                                   double tolerance, int samples) {
  const bool pass = std::isfinite(residual) && residual < tolerance;
  checks_.push_back({check, immersion, residual, tolerance, pass, samples});
}

void VerificationReport::add_lower_bound(const std::string& check, const std::string& immersion, double value,
                                         double threshold, int samples) {
  add_check(check, immersion, -value, -threshold, samples);
}

void VerificationReport::add_failure(const std::string& check, const std::string& immersion,
                                     const std::string& message) {
  checks_.push_back({check, immersion, std::nan(""), 0.0, false, 0});
  messages_.push_back(check + " [" + immersion + "]: " + message);
}

void VerificationReport::add_info(const std::string& name, const std::string& immersion, double value) {
  info_.push_back({name, immersion, value});
}

void VerificationReport::merge(const VerificationReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  info_.insert(info_.end(), other.info_.begin(), other.info_.end());
  messages_.insert(messages_.end(), other.messages_.begin(), other.messages_.end());
}

const CheckRecord* VerificationReport::find(const std::string& check, const std::string& immersion) const {
  for (const auto& r : checks_)
    if (r.check == check && (immersion.empty() || r.immersion == immersion)) return &r;
  return nullptr;
}

const InfoRecord* VerificationReport::find_info(const std::string& name, const std::string& immersion) const {
  for (const auto& r : info_)
    if (r.name == name && (immersion.empty() || r.immersion == immersion)) return &r;
  return nullptr;
}

int VerificationReport::passed() const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [](const auto& r) { return r.pass; }));
}

int VerificationReport::failed() const { return static_cast<int>(checks_.size()) - passed(); }

void VerificationReport::write_jsonl(std::ostream& os, const std::map<std::string, std::string>& config) const {
  using nlohmann::ordered_json;
  for (const auto& r : checks_) {
    ordered_json j;
    j["kind"] = "check";
    j["check"] = r.check;
    j["immersion"] = r.immersion;
    j["residual"] = std::isfinite(r.residual) ? ordered_json(r.residual) : ordered_json(nullptr);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["samples"] = r.samples;
    os << j.dump() << '\n';
  }
  for (const auto& r : info_) {
    ordered_json j;
    j["kind"] = "info";
    j["name"] = r.name;
    j["immersion"] = r.immersion;
    j["value"] = std::isfinite(r.value) ? ordered_json(r.value) : ordered_json(nullptr);
    os << j.dump() << '\n';
  }
  for (const auto& m : messages_) {
    ordered_json j;
    j["kind"] = "message";
    j["text"] = m;
    os << j.dump() << '\n';
  }
  ordered_json s;
  s["kind"] = "summary";
  s["passed"] = passed();
  s["failed"] = failed();
  s["version"] = kToolVersion;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  s["config"] = cfg;
  os << s.dump() << '\n';
}

}  // namespace cpl
