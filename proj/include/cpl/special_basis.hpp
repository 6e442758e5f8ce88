#pragma once

#include <Eigen/Core>

#include "cpl/cubic.hpp"
#include "cpl/geometry.hpp"
#include "cpl/immersion.hpp"
#include "cpl/report.hpp"

namespace cpl {

/// f_p(y) = sum h_ijk y^i y^j y^k for unit y (frame coordinates).
double cubic_form(const CubicTensor& h, const Eigen::VectorXd& y);
double cubic_form(const FundamentalForms& forms, const Eigen::VectorXd& y);

struct CubicMaximum {
  Eigen::VectorXd X1;
  double multiplier;
  double value;
  double residual;  // Lagrange residual at (X1, multiplier)
};

/// Global maximizer of f_p on the unit sphere: 64 quasi-random starts, projected
/// ascent, then Newton on the Lagrange system. Ties go to the lexicographically
/// largest vector.
CubicMaximum maximize_cubic(const CubicTensor& h, int starts = 64);
CubicMaximum maximize_cubic(const FundamentalForms& forms, int starts = 64);

struct AdaptedBasis {
  Eigen::VectorXd X1, X2, X3;  // frame coordinates
  double lambda1, lambda2, lambda3;
  double a, b, c, d;
  double multiplier;
  double pattern_residual;  // sum of squares of deviations from the normal form
  bool gap_flag;            // lambda2 and lambda3 closer than 1e-6
  CubicTensor rotated;      // h in the basis X1, X2, X3
};

/// Completes X1 by the eigenvectors of A_{phi X1} on the orthogonal plane
/// (lambda2 >= lambda3), then fixes signs: X3 so that b >= 0 (d >= 0 if b = 0),
/// X2 so that a >= 0 (c >= 0 if a = 0).
AdaptedBasis adapted_basis(const CubicTensor& h, int starts = 64);
AdaptedBasis adapted_basis(const FundamentalForms& forms, int starts = 64);

/// det of the Lagrange Jacobian at (X1, multiplier), computed directly.
double lagrange_determinant(const CubicTensor& h, const Eigen::VectorXd& y, double multiplier);
/// The closed form 36 (lambda2 - lambda1)(lambda3 - lambda1) as usually quoted.
double lagrange_det_quoted(const AdaptedBasis& b);
/// Expansion of the bordered determinant: 36 (2 lambda2 - lambda1)(2 lambda3 - lambda1).
double lagrange_det_expanded(const AdaptedBasis& b);

/// max over all components of (R(e_a, e_b) . phi h)(e_c, e_d), with R acting as a
/// derivation on the TM-valued tensor phi h.
double semi_parallel_residual(const CubicTensor& h, const RiemannTensor& R);

/// Sectional curvature of span{X2, X3} from the Gauss equation.
double adapted_K23(const AdaptedBasis& b, double epsilon);

/// k(a, c) = 8c^4 - 6ac^3 + (a^2 - 3 beta) c^2 + a beta c.
double k_polynomial(double a, double c, double beta);

/// Identity residuals on a C-parallel immersion (aborts with a failed entry
/// otherwise). Gated checks: shape-pattern, multiplier, jacobian-det,
/// jacobian-det-expanded, corrected-identity, lambda-inequalities, r-phi-h.
/// The uncorrected identity and the case analysis quantities are info records.
VerificationReport identity_checks(const NamedImmersion& imm, const Sampling& s = {}, const Tolerances& tol = {});

}  // namespace cpl
