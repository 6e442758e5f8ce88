#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "cpl/geometry.hpp"
#include "cpl/immersion.hpp"
#include "cpl/report.hpp"

namespace cpl {

struct RunConfig {
  std::string command;  // verify | solve | scan | report
  std::string immersion;
  std::optional<double> epsilon;
  std::optional<double> mu2;
  std::optional<std::array<double, 4>> flat_params;  // lambda, a, c, d for thm1-flat
  bool flat = false;
  bool nonflat = false;
  int samples = 50;
  std::uint64_t seed = 1;
  int grid = 24;
  double mu2_min = 0.5;
  double mu2_max = 3.0;
  int steps = 200;
  Tolerances tol;
  std::string out;  // empty: stdout
};

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Checks run by `verify` for a given immersion. Numerical failures inside a check
/// become failed entries.
VerificationReport verify_suite(const NamedImmersion& imm, const Sampling& s, const Tolerances& tol = {});

/// Parse a flat key=value file (blank lines and '#' comments allowed).
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Fill unset fields of `cfg` from key=value pairs; `explicitly_set` lists keys given
/// on the command line, which take precedence.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv,
                  const std::map<std::string, bool>& explicitly_set);

/// Echo of the effective configuration for the report summary.
std::map<std::string, std::string> config_echo(const RunConfig& cfg);

/// Run one command, writing its output to `out` (or to cfg.out when set) and
/// diagnostics to `err`. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cpl
