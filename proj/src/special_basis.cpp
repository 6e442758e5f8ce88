#include "cpl/special_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "cpl/errors.hpp"

namespace cpl {

namespace {

bool lex_greater(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > 1e-9) return x[i] > y[i];
  }
  return false;
}

// Plain projected gradient ascent with backtracking.
Eigen::VectorXd ascend(const CubicTensor& h, Eigen::VectorXd y) {
  const double scale = h.norm();
  double step = 0.3 / scale;
  double f = h.value(y);
  for (int it = 0; it < 400; ++it) {
    Eigen::VectorXd g = h.gradient(y);
    g -= g.dot(y) * y;
    if (g.norm() < 1e-10 * scale) break;
    Eigen::VectorXd trial = (y + step * g).normalized();
    double ft = h.value(trial);
    while (ft <= f && step > 1e-12 / scale) {
      step *= 0.5;
      trial = (y + step * g).normalized();
      ft = h.value(trial);
    }
    if (ft <= f) break;
    y = trial;
    f = ft;
    step *= 1.5;
  }
  return y;
}

}  // namespace

double cubic_form(const CubicTensor& h, const Eigen::VectorXd& y) {
  if (y.size() != h.dim()) throw DomainError("direction has the wrong dimension");
  if (std::abs(y.norm() - 1.0) > 1e-12) throw DomainError("cubic form needs a unit direction");
  return h.value(y);
}

double cubic_form(const FundamentalForms& forms, const Eigen::VectorXd& y) { return cubic_form(forms.hphi, y); }

CubicMaximum maximize_cubic(const CubicTensor& h, int starts) {
  const double scale = h.norm();
  if (scale < 1e-10) throw DegenerateError("second fundamental form vanishes; no preferred direction");
  bool have = false;
  CubicMaximum best{};
  double best_residual = INFINITY;
  for (const auto& y0 : sphere_directions(h.dim(), starts)) {
    Eigen::VectorXd y = ascend(h, y0);
    auto cp = polish_critical(h, y, 1.5 * h.value(y));
    if (!(cp.residual < 1e-9 * std::max(1.0, scale))) {
      best_residual = std::min(best_residual, cp.residual);
      continue;
    }
    // Newton may hop to a different critical point; only keep it if it did not lose value
    if (cp.value < h.value(y) - 1e-9 * scale) continue;
    cp.y.normalize();
    const CubicMaximum cand{cp.y, cp.multiplier, h.value(cp.y), cp.residual};
    if (!have || cand.value > best.value + 1e-9 * scale ||
        (std::abs(cand.value - best.value) <= 1e-9 * scale && lex_greater(cand.X1, best.X1))) {
      best = cand;
      have = true;
    }
  }
  if (!have) throw ConvergenceError("cubic form maximization did not converge", best_residual);
  return best;
}

CubicMaximum maximize_cubic(const FundamentalForms& forms, int starts) { return maximize_cubic(forms.hphi, starts); }

AdaptedBasis adapted_basis(const CubicTensor& h, int starts) {
  if (h.dim() != 3) throw DomainError("adapted basis is defined for three-dimensional Legendrians");
  const CubicMaximum mx = maximize_cubic(h, starts);
  AdaptedBasis out;
  out.X1 = mx.X1;
  out.multiplier = mx.multiplier;

  // Orthonormal complement of X1.
  Eigen::Matrix3d seed = Eigen::Matrix3d::Zero();
  seed.col(0) = mx.X1;
  const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(seed).householderQ();
  const Eigen::Matrix<double, 3, 2> P = q.rightCols<2>();
  const Eigen::Matrix2d block = P.transpose() * h.contract(mx.X1) * P;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  // ascending eigenvalues: X2 takes the larger one
  out.X2 = P * es.eigenvectors().col(1);
  out.X3 = P * es.eigenvectors().col(0);

  auto extract = [&] {
    Eigen::MatrixXd rows(3, 3);
    rows.row(0) = out.X1.transpose();
    rows.row(1) = out.X2.transpose();
    rows.row(2) = out.X3.transpose();
    out.rotated = h.rotated(rows);
    const auto& r = out.rotated;
    out.lambda1 = r(0, 0, 0);
    out.lambda2 = r(1, 1, 0);
    out.lambda3 = r(2, 2, 0);
    out.a = r(1, 1, 1);
    out.b = r(1, 1, 2);
    out.c = r(1, 2, 2);
    out.d = r(2, 2, 2);
  };
  extract();
  const double tiny = 1e-12 * std::max(1.0, h.norm());
  if (out.b < -tiny || (std::abs(out.b) <= tiny && out.d < 0)) out.X3 = -out.X3;
  if (out.a < -tiny || (std::abs(out.a) <= tiny && out.c < 0)) out.X2 = -out.X2;
  extract();

  const CubicTensor nf =
      shape_normal_form(out.lambda1, out.lambda2, out.lambda3, out.a, out.b, out.c, out.d);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += std::pow(out.rotated(i, j, k) - nf(i, j, k), 2);
  out.pattern_residual = s;
  out.gap_flag = std::abs(out.lambda2 - out.lambda3) < 1e-6;
  return out;
}

AdaptedBasis adapted_basis(const FundamentalForms& forms, int starts) { return adapted_basis(forms.hphi, starts); }

double lagrange_determinant(const CubicTensor& h, const Eigen::VectorXd& y, double multiplier) {
  return lagrange_jacobian(h, y, multiplier).determinant();
}

double lagrange_det_quoted(const AdaptedBasis& b) {
  return 36.0 * (b.lambda2 - b.lambda1) * (b.lambda3 - b.lambda1);
}

double lagrange_det_expanded(const AdaptedBasis& b) {
  return 36.0 * (2.0 * b.lambda2 - b.lambda1) * (2.0 * b.lambda3 - b.lambda1);
}

double semi_parallel_residual(const CubicTensor& h, const RiemannTensor& R) {
  const int m = h.dim();
  // phi h(e_c, e_d) = -sum_k h_cdk e_k
  auto P = [&](int c, int d, int l) { return -h(c, d, l); };
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          for (int k = 0; k < m; ++k) {
            double q = 0.0;
            for (int l = 0; l < m; ++l) {
              q += P(c, d, l) * R(a, b, l, k);
              q -= R(a, b, c, l) * P(l, d, k);
              q -= R(a, b, d, l) * P(c, l, k);
            }
            worst = std::max(worst, std::abs(q));
          }
  return worst;
}

double adapted_K23(const AdaptedBasis& b, double epsilon) {
  const auto& r = b.rotated;
  double k = (epsilon + 3.0) / 4.0;
  for (int l = 0; l < 3; ++l) k += r(1, 1, l) * r(2, 2, l) - r(1, 2, l) * r(1, 2, l);
  return k;
}

double k_polynomial(double a, double c, double beta) {
  return 8 * std::pow(c, 4) - 6 * a * std::pow(c, 3) + (a * a - 3 * beta) * c * c + a * beta * c;
}

VerificationReport identity_checks(const NamedImmersion& imm, const Sampling& s, const Tolerances& tol) {
  VerificationReport rep;
  const std::string& id = imm.id;
  const double eps = imm.ambient.epsilon();
  const double beta = (eps + 3.0) / 4.0;
  if (imm.map.domain_dim() != 3) {
    rep.add_failure("c-parallel-precondition", id, "identity checks need a three-dimensional Legendrian");
    return rep;
  }
  const double cp_tol = tolerance_for(tol, "c-parallel", 1e-6);
  const double cp = c_parallel_residual(imm.ambient, imm.map, s);
  rep.add_check("c-parallel-precondition", id, cp, cp_tol, s.count);
  if (!(cp < cp_tol)) return rep;

  double pattern = 0, mult = 0, det_q = 0, det_e = 0, corrected = 0, uncorrected = 0, ineq = 0, semi = 0;
  double K1 = 0, K2 = 0, lam = 0, kac = 0;
  int flagged = 0;
  AdaptedBasis first;
  bool have_first = false;
  // relative to max(|ref|, 36 lambda1^2), so a vanishing determinant is not
  // judged by its rounding noise
  auto relerr = [](double x, double ref, double l1) {
    return std::abs(x - ref) / std::max({std::abs(ref), 36.0 * l1 * l1, 1e-300});
  };
  try {
    for (const auto& u : sample_points(imm.map, s.count, s.seed)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      const CubicTensor& h = geo.forms().hphi;
      const AdaptedBasis B = adapted_basis(h);
      if (!have_first) {
        first = B;
        have_first = true;
      }
      if (B.gap_flag) ++flagged;
      pattern = std::max(pattern, B.pattern_residual);
      mult = std::max(mult, std::abs(B.multiplier - 1.5 * B.lambda1));
      const double det = lagrange_determinant(h, B.X1, B.multiplier);
      det_q = std::max(det_q, relerr(det, lagrange_det_quoted(B), B.lambda1));
      det_e = std::max(det_e, relerr(det, lagrange_det_expanded(B), B.lambda1));
      const double gap = B.lambda2 - B.lambda3;
      corrected = std::max(corrected, std::abs(B.b * (B.a - 2 * B.c) * gap));
      uncorrected = std::max(uncorrected, std::abs(B.c * (B.a - 2 * B.c) * gap));
      const double margin = std::min({B.lambda1, B.lambda1 - std::abs(B.a), B.lambda1 - std::abs(B.d),
                                      B.lambda1 - 2 * B.lambda2, B.lambda1 - 2 * B.lambda3});
      ineq = std::max(ineq, -margin);
      semi = std::max(semi, semi_parallel_residual(h, geo.intrinsic_riemann()));
      const double K23 = adapted_K23(B, eps);
      K1 = std::max(K1, std::abs(B.c * (K23 + B.lambda3 * gap)));
      K2 = std::max(K2, std::abs(gap * (K23 - B.b * B.b - B.c * B.c)));
      lam = std::max(lam, std::abs(B.lambda2 * B.lambda2 - (4 * B.c * B.c - 2 * B.a * B.c - beta)));
      kac = std::max(kac, std::abs(k_polynomial(B.a, B.c, beta)));
    }
  } catch (const std::exception& e) {
    rep.add_failure("shape-pattern", id, e.what());
    return rep;
  }
  rep.add_check("shape-pattern", id, pattern, tolerance_for(tol, "shape-pattern", 1e-7), s.count);
  rep.add_check("multiplier", id, mult, tolerance_for(tol, "multiplier", 1e-8), s.count);
  rep.add_check("jacobian-det", id, det_q, tolerance_for(tol, "jacobian-det", 1e-6), s.count);
  rep.add_check("jacobian-det-expanded", id, det_e, tolerance_for(tol, "jacobian-det-expanded", 1e-6), s.count);
  rep.add_check("corrected-identity", id, corrected, tolerance_for(tol, "corrected-identity", 1e-8), s.count);
  rep.add_check("lambda-inequalities", id, ineq, tolerance_for(tol, "lambda-inequalities", 1e-9), s.count);
  rep.add_check("r-phi-h", id, semi, tolerance_for(tol, "r-phi-h", 1e-6), s.count);
  rep.add_info("uncorrected-identity", id, uncorrected);
  rep.add_info("K1", id, K1);
  rep.add_info("K2", id, K2);
  rep.add_info("lam", id, lam);
  rep.add_info("k(a,c)", id, kac);
  rep.add_info("gap-flagged", id, flagged);
  rep.add_info("lambda1", id, first.lambda1);
  rep.add_info("lambda2", id, first.lambda2);
  rep.add_info("lambda3", id, first.lambda3);
  rep.add_info("a", id, first.a);
  rep.add_info("b", id, first.b);
  rep.add_info("c", id, first.c);
  rep.add_info("d", id, first.d);
  rep.add_info("lambda1-2lambda2", id, first.lambda1 - 2 * first.lambda2);
  rep.add_info("lambda1-2lambda3", id, first.lambda1 - 2 * first.lambda3);
  return rep;
}

}  // namespace cpl
