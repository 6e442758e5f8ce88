#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpl/cli.hpp"

namespace {

// CLI11 has no notion of open-ended option names, so --tol-<check> is peeled off
// before parsing.
std::vector<std::string> extract_tolerances(int argc, char** argv, cpl::Tolerances& tol) {
  std::vector<std::string> rest;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--tol-", 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string key = a.substr(6), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < argc) {
      value = argv[++i];
    } else {
      throw CLI::ArgumentMismatch(a + " needs a value");
    }
    try {
      tol[key] = std::stod(value);
    } catch (const std::exception&) {
      throw CLI::ConversionError(value, a);
    }
  }
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  cpl::RunConfig cfg;
  std::vector<std::string> args;
  try {
    args = extract_tolerances(argc, argv, cfg.tol);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cpl::kExitUsage;
  }

  CLI::App app{"Legendrian immersions in deformed 7-spheres: verification, solvers and scans"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<double> flat_params;
  double epsilon = 1.0, mu2 = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--epsilon", epsilon, "phi-sectional curvature of the ambient sphere");
    sub->add_option("--samples", cfg.samples, "sample points per check")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed of the sample point shift");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--config", config_path, "key=value defaults (flags take precedence)");
  };
  auto* verify = app.add_subcommand("verify", "run the check suite of one immersion");
  common(verify);
  verify->add_option("--immersion", cfg.immersion, "immersion id");
  verify->add_option("--mu2", mu2, "mu^2 for thm1-nonflat");
  verify->add_option("--flat-params", flat_params, "lambda a c d for thm1-flat")->expected(4)->delimiter(',');

  auto* solve = app.add_subcommand("solve", "solve the flat system or list the non-flat mu^2");
  common(solve);
  solve->add_flag("--flat", cfg.flat);
  solve->add_flag("--nonflat", cfg.nonflat);
  solve->add_option("--grid", cfg.grid, "starts per variable")->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "bitension residual along the non-flat family");
  common(scan);
  scan->add_flag("--flat", cfg.flat);
  scan->add_flag("--nonflat", cfg.nonflat);
  scan->add_option("--mu2-min", cfg.mu2_min);
  scan->add_option("--mu2-max", cfg.mu2_max);
  scan->add_option("--steps", cfg.steps)->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "run every suite over all shipped immersions");
  common(report);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return cpl::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  auto given = [&](const std::string& flag) {
    try {
      return sub->get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--epsilon")) cfg.epsilon = epsilon;
  if (given("--mu2")) cfg.mu2 = mu2;
  if (given("--flat-params")) cfg.flat_params = std::array<double, 4>{flat_params[0], flat_params[1], flat_params[2], flat_params[3]};

  if (!config_path.empty()) {
    try {
      std::map<std::string, bool> set;
      for (const char* k : {"immersion", "epsilon", "mu2", "samples", "seed", "grid", "mu2-min", "mu2-max", "steps", "out"})
        set[k] = given(std::string("--") + k);
      for (const auto& [k, v] : cfg.tol) set["tol-" + k] = true;
      cpl::apply_config(cfg, cpl::read_config_file(config_path), set);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cpl::kExitUsage;
    }
  }
  return cpl::run(cfg, std::cout, std::cerr);
}
