#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cpl/jet.hpp"
#include "cpl/sasaki.hpp"

namespace cpl {

using Complex = std::complex<double>;

/// Per-variable real chart factor multiplying an exponential term.
enum class Trig { one, sin, cos };

/// One complex coordinate of an exponential immersion:
///   amplitude * exp(i (frequency . u + phase)) * prod_k chart[k](u_k).
/// A negative amplitude is the same as a phase shift by pi.
struct Term {
  double amplitude = 0.0;
  std::array<double, 3> frequency{0.0, 0.0, 0.0};
  double phase = 0.0;
  std::array<Trig, 3> chart{Trig::one, Trig::one, Trig::one};
};

struct Interval {
  double lo;
  double hi;
};

/// Analytic map from a <= 3 dimensional domain into C^{n+1} with exact partial
/// derivatives of every order up to four.
class ExponentialImmersion {
 public:
  ExponentialImmersion(std::vector<Term> terms, int domain_dim, std::vector<Interval> domain);

  const std::vector<Term>& terms() const { return terms_; }
  int domain_dim() const { return domain_dim_; }
  int complex_dim() const { return static_cast<int>(terms_.size()); }
  int real_dim() const { return 2 * complex_dim(); }
  const std::vector<Interval>& domain() const { return domain_; }

  std::vector<Complex> derivatives(const Eigen::Vector3d& u, const MultiIndex& order) const;
  /// Interleaved real coordinates of `derivatives`.
  Vec derivative_real(const Eigen::Vector3d& u, const MultiIndex& order) const;
  Vec value(const Eigen::Vector3d& u) const { return derivative_real(u, {}); }
  /// Taylor jet of the map around `u`, exact to order `order`.
  JetVec jet(const Eigen::Vector3d& u, int order = kMaxJetOrder) const;

 private:
  std::vector<Term> terms_;
  int domain_dim_;
  std::vector<Interval> domain_;
};

struct FlatFamilyParams {
  double epsilon;
  double lambda;
  double a;
  double c;
  double d;

  double alpha() const { return 4.0 / (epsilon + 3.0); }
  /// (sqrt(4c(2c-a) + d^2) + d) / 2 and (sqrt(...) - d) / 2.
  std::pair<double, double> rho() const;
};

struct NonFlatFamilyParams {
  double epsilon;
  double mu;
};

/// Constraint margins of the flat family, positive when the inequality holds.
struct FlatConstraintMargins {
  double lambda_lower;   // lambda + 1/sqrt(alpha)
  double lambda_upper;   // -lambda
  double a_positive;     // a
  double a_upper;        // (lambda^2 - alpha)/lambda - a
  double a_ge_d;         // a - d
  double d_nonnegative;  // d
  double a_gt_2c;        // a - 2c
  double lambda_sq_gap;  // |lambda^2 - 1/(3 alpha)|
  double radicand;       // 4c(2c - a) + d^2
  double unit_norm;      // alpha^{-1} + lambda^2 + ac - c^2 (zero when admissible)
};

FlatConstraintMargins flat_constraint_margins(const FlatFamilyParams& p);

ExponentialImmersion build_flat(const FlatFamilyParams& p);
ExponentialImmersion build_nonflat(const NonFlatFamilyParams& p);

/// The three flat quadruplets (lambda, a, c, d) at eps = 1, evaluated in extended
/// precision and rounded once.
FlatFamilyParams theorem2_quadruplet(int which);
ExponentialImmersion build_theorem2_flat(int which);

/// Parameters of the eps = 1 flat example (-1/sqrt5, 3 sqrt3/sqrt10, -sqrt3/sqrt10, sqrt2).
FlatFamilyParams corollary_flat_params();

/// Totally geodesic real great 3-sphere in S^7 (minimal fixture).
ExponentialImmersion build_great_sphere();

/// Unit 2-sphere factor y(theta, phi) in colatitude/longitude, as chart factors on
/// domain variables (var, var + 1).
std::array<std::array<Trig, 3>, 3> sphere_factor_charts(int var);

/// Legendre curve z(x) = (sqrt(mu^2/(mu^2+1)) e^{-ix/mu}, sqrt(1/(mu^2+1)) e^{i mu x}) in S^3.
ExponentialImmersion legendre_curve(double mu);

/// Closedness parametrization of the Legendre curve: eps = (-9s^2+8st-3t^2)/(3s^2-8st+t^2).
double closedness_epsilon(long s, long t);

struct ProductDecomposition {
  ExponentialImmersion curve;    // into S^3 (1-dimensional domain, variable u)
  ExponentialImmersion surface;  // into S^5 (2-dimensional domain, variables v, w)
};

/// Factor an eps = 1 flat immersion as (z_1(u), z_2(u) y(v, w)). Accepts
/// "corollary-flat" and "thm2-flat-1" .. "thm2-flat-3".
ProductDecomposition product_decomposition(const std::string& id);

/// Reassemble (z_1(u), z_2(u) y(v, w)) at a domain point (u, v, w).
Vec reassemble(const ProductDecomposition& pd, const Eigen::Vector3d& uvw);

/// A shipped immersion together with its ambient structure.
struct NamedImmersion {
  std::string id;
  ExponentialImmersion map;
  SasakiStructure ambient;
};

/// Look up an immersion family by identifier: "corollary-flat", "corollary-nonflat",
/// "thm1-flat", "thm1-nonflat", "thm2-flat-1".."thm2-flat-3", "thm2-nonflat-plus",
/// "thm2-nonflat-minus", "great-sphere". The thm1-* families read `epsilon`, and
/// thm1-nonflat needs a positive `mu2`.
/// thm1-flat takes its quadruplet from `flat` when given.
NamedImmersion make_named(const std::string& id, double epsilon = 1.0, double mu2 = 0.0,
                          const FlatFamilyParams* flat = nullptr);

std::vector<std::string> shipped_ids();

}  // namespace cpl
