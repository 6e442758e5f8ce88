#include "cpl/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cpl/classify.hpp"
#include "cpl/errors.hpp"
#include "cpl/special_basis.hpp"

namespace cpl {

namespace {

bool is_flat_id(const std::string& id) {
  return id == "corollary-flat" || id == "thm1-flat" || id.rfind("thm2-flat-", 0) == 0;
}

bool is_biharmonic_id(const std::string& id) { return id.rfind("corollary-", 0) == 0 || id.rfind("thm1-", 0) == 0; }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

double max_flat_curvature(const NamedImmersion& imm, const Sampling& s) {
  double worst = 0.0;
  const double eps = imm.ambient.epsilon();
  for (const auto& u : sample_points(imm.map, s.count, s.seed)) {
    const LocalGeometry geo(imm.ambient, imm.map, u);
    for (int a = 0; a < geo.dim(); ++a)
      for (int b = a + 1; b < geo.dim(); ++b) {
        worst = std::max(worst, std::abs(gauss_sectional(geo, eps, a, b)));
        worst = std::max(worst, std::abs(geo.intrinsic_riemann().sectional(a, b)));
      }
  }
  return worst;
}

double h_umbilical_residual(const NamedImmersion& imm, const Sampling& s) {
  double worst = 0.0;
  for (const auto& u : sample_points(imm.map, s.count, s.seed)) {
    const LocalGeometry geo(imm.ambient, imm.map, u);
    const auto hu = h_umbilical_detect(geo.forms().hphi, INFINITY);
    worst = std::max(worst, hu ? hu->residual : INFINITY);
  }
  return worst;
}

}  // namespace

VerificationReport verify_suite(const NamedImmersion& imm, const Sampling& s, const Tolerances& tol) {
  VerificationReport rep;
  const std::string& id = imm.id;
  auto guarded = [&](const std::string& check, auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      rep.add_failure(check, id, e.what());
    }
  };
  auto check = [&](const std::string& name, double fallback, auto&& f) {
    guarded(name, [&] { rep.add_check(name, id, f(), tolerance_for(tol, name, fallback), s.count); });
  };

  check("legendrian", 1e-12, [&] { return check_legendrian(imm.ambient, imm.map, s); });
  check("c-parallel", 1e-6, [&] { return c_parallel_residual(imm.ambient, imm.map, s); });
  if (id == "great-sphere") {
    check("bitension", 1e-6, [&] { return bitension_max(imm.ambient, imm.map, s); });
    check("totally-geodesic", 1e-10, [&] { return mean_curvature_stats(imm.ambient, imm.map, s).max; });
    return rep;
  }
  guarded("non-minimal", [&] {
    rep.add_lower_bound("non-minimal", id, mean_curvature_stats(imm.ambient, imm.map, s).min,
                        tolerance_for(tol, "non-minimal", 1e-6), s.count);
  });
  if (is_biharmonic_id(id)) check("bitension", 1e-6, [&] { return bitension_max(imm.ambient, imm.map, s); });
  if (is_flat_id(id)) check("flat-curvature", 1e-8, [&] { return max_flat_curvature(imm, s); });
  else check("h-umbilical", 1e-6, [&] { return h_umbilical_residual(imm, s); });
  if (id.rfind("thm2-", 0) == 0)
    check("condition-6H", 1e-6, [&] { return condition_6H_residual(imm.ambient, imm.map, s); });
  if (id == "corollary-flat" || id == "thm1-flat") {
    guarded("shape-pattern", [&] {
      const VerificationReport ids = identity_checks(imm, s, tol);
      for (const char* name : {"shape-pattern", "multiplier", "corrected-identity", "r-phi-h"}) {
        if (const auto* r = ids.find(name)) {
          rep.add_check(r->check, id, r->residual, r->tolerance, r->samples);
        } else {
          rep.add_failure(name, id, ids.messages().empty() ? "not evaluated" : ids.messages().front());
        }
      }
      if (const auto* r = ids.find_info("uncorrected-identity")) rep.add_info(r->name, id, r->value);
    });
  }
  return rep;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string x) {
    const auto a = x.find_first_not_of(" \t\r");
    const auto b = x.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv,
                  const std::map<std::string, bool>& explicitly_set) {
  auto given = [&](const std::string& k) {
    auto it = explicitly_set.find(k);
    return it != explicitly_set.end() && it->second;
  };
  for (const auto& [k, v] : kv) {
    if (given(k)) continue;
    if (k.rfind("tol-", 0) == 0) {
      cfg.tol.emplace(k.substr(4), std::stod(v));
    } else if (k == "immersion") {
      cfg.immersion = v;
    } else if (k == "epsilon") {
      cfg.epsilon = std::stod(v);
    } else if (k == "mu2") {
      cfg.mu2 = std::stod(v);
    } else if (k == "samples") {
      cfg.samples = std::stoi(v);
    } else if (k == "seed") {
      cfg.seed = std::stoull(v);
    } else if (k == "grid") {
      cfg.grid = std::stoi(v);
    } else if (k == "mu2-min") {
      cfg.mu2_min = std::stod(v);
    } else if (k == "mu2-max") {
      cfg.mu2_max = std::stod(v);
    } else if (k == "steps") {
      cfg.steps = std::stoi(v);
    } else if (k == "out") {
      cfg.out = v;
    } else {
      throw ConstraintError("unknown config key '" + k + "'");
    }
  }
}

std::map<std::string, std::string> config_echo(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  m["command"] = cfg.command;
  if (!cfg.immersion.empty()) m["immersion"] = cfg.immersion;
  if (cfg.epsilon) m["epsilon"] = fmt(*cfg.epsilon);
  if (cfg.mu2) m["mu2"] = fmt(*cfg.mu2);
  if (cfg.flat_params) {
    const auto& p = *cfg.flat_params;
    m["flat-params"] = fmt(p[0]) + "," + fmt(p[1]) + "," + fmt(p[2]) + "," + fmt(p[3]);
  }
  if (cfg.command == "solve" || cfg.command == "scan") m["family"] = cfg.flat ? "flat" : "nonflat";
  if (cfg.command == "solve") m["grid"] = std::to_string(cfg.grid);
  if (cfg.command == "scan") {
    m["mu2-min"] = fmt(cfg.mu2_min);
    m["mu2-max"] = fmt(cfg.mu2_max);
    m["steps"] = std::to_string(cfg.steps);
  }
  m["samples"] = std::to_string(cfg.samples);
  m["seed"] = std::to_string(cfg.seed);
  for (const auto& [k, v] : cfg.tol) m["tol-" + k] = fmt(v);
  return m;
}

namespace {

int run_verify(const RunConfig& cfg, std::ostream& out) {
  FlatFamilyParams fp{};
  const FlatFamilyParams* fpp = nullptr;
  if (cfg.flat_params) {
    const auto& p = *cfg.flat_params;
    fp = {cfg.epsilon.value_or(1.0), p[0], p[1], p[2], p[3]};
    fpp = &fp;
  }
  const NamedImmersion imm = make_named(cfg.immersion, cfg.epsilon.value_or(1.0), cfg.mu2.value_or(0.0), fpp);
  const VerificationReport rep = verify_suite(imm, {cfg.samples, cfg.seed}, cfg.tol);
  rep.write_jsonl(out, config_echo(cfg));
  return rep.all_pass() ? kExitPass : kExitFail;
}

int run_report(const RunConfig& cfg, std::ostream& out) {
  const Sampling s{cfg.samples, cfg.seed};
  VerificationReport rep;
  for (const auto& id : shipped_ids()) rep.merge(verify_suite(make_named(id), s, cfg.tol));
  rep.merge(identity_checks(make_named("corollary-flat"), s, cfg.tol));
  for (const char* which : {"1", "2", "3", "nonflat_plus", "nonflat_minus"}) rep.merge(theorem2_verify(which, s, cfg.tol));
  rep.write_jsonl(out, config_echo(cfg));
  return rep.all_pass() ? kExitPass : kExitFail;
}

int run_solve(const RunConfig& cfg, std::ostream& out) {
  using nlohmann::ordered_json;
  const double eps = cfg.epsilon.value_or(1.0);
  int count = 0;
  if (cfg.flat) {
    SolverConfig sc;
    sc.grid = cfg.grid;
    sc.seed = cfg.seed;
    sc.oracle_tol = tolerance_for(cfg.tol, "bitension", sc.oracle_tol);
    const FlatSolveResult res = solve_flat(eps, sc);
    for (const auto* bucket : {&res.validated, &res.algebra_only}) {
      for (const auto& sol : *bucket) {
        ordered_json j;
        j["kind"] = "solution";
        j["bucket"] = bucket == &res.validated ? "validated" : "algebra-only";
        j["epsilon"] = eps;
        j["lambda"] = sol.params.lambda;
        j["a"] = sol.params.a;
        j["c"] = sol.params.c;
        j["d"] = sol.params.d;
        j["residual_printed"] = sol.residual_printed;
        j["residual_corrected"] = sol.residual_corrected;
        j["bitension"] = std::isfinite(sol.bitension) ? ordered_json(sol.bitension) : ordered_json(nullptr);
        j["lambda_sq_margin"] = sol.lambda_sq_margin;
        out << j.dump() << '\n';
        ++count;
      }
    }
    ordered_json s;
    s["kind"] = "summary";
    s["validated"] = res.validated.size();
    s["algebra_only"] = res.algebra_only.size();
    s["version"] = kToolVersion;
    s["config"] = config_echo(cfg);
    out << s.dump() << '\n';
  } else {
    for (auto [name, f] : {std::pair{"as_printed", MuFormula::as_printed}, std::pair{"corrected", MuFormula::corrected}}) {
      for (double m2 : nonflat_mu(eps, f)) {
        ordered_json j;
        j["kind"] = "mu2";
        j["formula"] = name;
        j["epsilon"] = eps;
        j["mu2"] = m2;
        j["bitension"] = nonflat_bitension(eps, m2);
        out << j.dump() << '\n';
        ++count;
      }
    }
    ordered_json s;
    s["kind"] = "summary";
    s["roots"] = count;
    s["version"] = kToolVersion;
    s["config"] = config_echo(cfg);
    out << s.dump() << '\n';
  }
  return kExitPass;
}

int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double eps = cfg.epsilon.value_or(1.0);
  const ScanResult res = scan_mu(eps, cfg.mu2_min, cfg.mu2_max, cfg.steps);
  out << "mu2,residual\n" << std::setprecision(17);
  for (const auto& s : res.samples) out << s.mu2 << ',' << s.residual << '\n';
  err << std::setprecision(12);
  for (const auto& m : res.minima) err << "local minimum: mu2=" << m.mu2 << " residual=" << m.residual << '\n';
  return kExitPass;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out << "'\n";
      return kExitUsage;
    }
    os = &file;
  }
  try {
    if (cfg.command == "verify") {
      if (cfg.immersion.empty()) {
        err << "error: verify needs --immersion\n";
        return kExitUsage;
      }
      return run_verify(cfg, *os);
    }
    if (cfg.command == "report") return run_report(cfg, *os);
    if (cfg.command == "solve" || cfg.command == "scan") {
      if (cfg.flat == cfg.nonflat) {
        err << "error: choose exactly one of --flat and --nonflat\n";
        return kExitUsage;
      }
      if (cfg.command == "scan" && cfg.flat) {
        err << "error: scan supports --nonflat only\n";
        return kExitUsage;
      }
      return cfg.command == "solve" ? run_solve(cfg, *os) : run_scan(cfg, *os, err);
    }
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstraintError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace cpl
