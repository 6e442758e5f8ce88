#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cpl/geometry.hpp"
#include "cpl/immersion.hpp"
#include "cpl/report.hpp"

namespace cpl {

/// Which form of the first flat-family equation to use: the term -2(eps+1) lambda
/// as it is usually written, or -2(eps+1) lambda^2.
enum class FlatSystemVariant { as_printed, lambda_squared_corrected };

struct SolverConfig {
  int grid = 24;             // points per variable
  double newton_tol = 1e-12;
  int max_iter = 100;
  std::uint64_t seed = 1;    // sample points of the bitension oracle
  int oracle_samples = 20;
  double oracle_tol = 1e-6;
};

std::array<double, 4> flat_system_residual(double epsilon, double lambda, double a, double c, double d,
                                           FlatSystemVariant variant);

struct FlatSolution {
  FlatFamilyParams params;
  std::array<double, 4> residual_printed;
  std::array<double, 4> residual_corrected;
  double bitension;         // max |tau_2| over the oracle samples (NaN when not buildable)
  double lambda_sq_margin;  // |lambda^2 - 1/(3 alpha)|
};

struct FlatSolveResult {
  std::vector<FlatSolution> validated;
  std::vector<FlatSolution> algebra_only;
};

/// Multi-start Newton on the corrected flat system over the constraint box, then
/// every admissible root is checked against the bitension oracle.
FlatSolveResult solve_flat(double epsilon, const SolverConfig& config = {});

/// (-7 + 8 sqrt3)/13, the smallest eps with a non-flat solution.
double nonflat_epsilon_bound();

/// The closed form for mu^2 as usually written, (4e + 4 +- 2 sqrt(r)) / (3(3 + e)) with
/// the special value 1 at e = 1, or the root of the biharmonic condition itself,
/// (4e + 4 +- sqrt(r)) / (3(3 + e)), minus the minimal member mu^2 = 1/3.
/// Here r = 13e^2 + 14e - 11.
enum class MuFormula { as_printed, corrected };

/// Admissible mu^2 of the non-flat family, ascending. Empty below the bound.
std::vector<double> nonflat_mu(double epsilon, MuFormula formula = MuFormula::as_printed);

struct ScanSample {
  double mu2;
  double residual;
};

struct ScanResult {
  std::vector<ScanSample> samples;
  std::vector<ScanSample> minima;  // interior local minima, refined
};

/// max |tau_2| of the non-flat family over a fixed 20-point grid, for mu^2 on a
/// uniform grid of `steps` points in [mu2_min, mu2_max].
double nonflat_bitension(double epsilon, double mu2);
ScanResult scan_mu(double epsilon, double mu2_min, double mu2_max, int steps);

/// Legendrian, C-parallel, non-minimal and the 6H condition for one of the eps = 1
/// examples: which in {"1", "2", "3", "nonflat_plus", "nonflat_minus"}.
VerificationReport theorem2_verify(const std::string& which, const Sampling& s = {}, const Tolerances& tol = {});

}  // namespace cpl
