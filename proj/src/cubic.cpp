#include "cpl/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "cpl/errors.hpp"

namespace cpl {

CubicTensor::CubicTensor(int m) : m_(m) {
  if (m < 1 || m > 3) throw DomainError("cubic tensor dimension must be 1, 2 or 3");
}

double CubicTensor::value(const Eigen::VectorXd& y) const {
  double s = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k) s += (*this)(i, j, k) * y[i] * y[j] * y[k];
  return s;
}

Eigen::VectorXd CubicTensor::gradient(const Eigen::VectorXd& y) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k) g[i] += 3.0 * (*this)(i, j, k) * y[j] * y[k];
  return g;
}

Eigen::MatrixXd CubicTensor::contract(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k) a(i, j) += (*this)(i, j, k) * y[k];
  return a;
}

CubicTensor CubicTensor::rotated(const Eigen::MatrixXd& basis) const {
  CubicTensor out(m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      for (int c = 0; c < m_; ++c) {
        double s = 0.0;
        for (int i = 0; i < m_; ++i)
          for (int j = 0; j < m_; ++j)
            for (int k = 0; k < m_; ++k) s += basis(a, i) * basis(b, j) * basis(c, k) * (*this)(i, j, k);
        out.at(a, b, c) = s;
      }
  return out;
}

double CubicTensor::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k) {
        const double v = (*this)(i, j, k);
        for (double w : {(*this)(i, k, j), (*this)(j, i, k), (*this)(j, k, i), (*this)(k, i, j), (*this)(k, j, i)})
          worst = std::max(worst, std::abs(v - w));
      }
  return worst;
}

CubicTensor CubicTensor::symmetrized() const {
  CubicTensor out(m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        out.at(i, j, k) = ((*this)(i, j, k) + (*this)(i, k, j) + (*this)(j, i, k) + (*this)(j, k, i) +
                           (*this)(k, i, j) + (*this)(k, j, i)) /
                          6.0;
  return out;
}

double CubicTensor::norm() const {
  double s = 0.0;
  for (double x : t_) s += x * x;
  return std::sqrt(s);
}

CubicTensor shape_normal_form(double l1, double l2, double l3, double a, double b, double c, double d) {
  // Slices A_{phi X_k}(i, j) = h_ijk.
  const double s[3][3][3] = {
      {{l1, 0, 0}, {0, l2, 0}, {0, 0, l3}},
      {{0, l2, 0}, {l2, a, b}, {0, b, c}},
      {{0, 0, l3}, {0, b, c}, {l3, c, d}},
  };
  CubicTensor h(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) h.at(i, j, k) = s[k][i][j];
  return h;
}

Eigen::VectorXd lagrange_residual(const CubicTensor& h, const Eigen::VectorXd& y, double mult) {
  const int m = h.dim();
  Eigen::VectorXd r(m + 1);
  r.head(m) = h.gradient(y) - 2.0 * mult * y;
  r[m] = y.squaredNorm() - 1.0;
  return r;
}

Eigen::MatrixXd lagrange_jacobian(const CubicTensor& h, const Eigen::VectorXd& y, double mult) {
  const int m = h.dim();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
  j.topLeftCorner(m, m) = 6.0 * h.contract(y) - 2.0 * mult * Eigen::MatrixXd::Identity(m, m);
  j.col(m).head(m) = -2.0 * y;
  j.row(m).head(m) = 2.0 * y.transpose();
  return j;
}

CriticalPoint polish_critical(const CubicTensor& h, Eigen::VectorXd y, double mult, int max_iter) {
  const int m = h.dim();
  Eigen::VectorXd r = lagrange_residual(h, y, mult);
  for (int it = 0; it < max_iter && r.norm() > 1e-15 * std::max(1.0, h.norm()); ++it) {
    const Eigen::VectorXd step = lagrange_jacobian(h, y, mult).completeOrthogonalDecomposition().solve(-r);
    Eigen::VectorXd y_new = y + step.head(m);
    double mult_new = mult + step[m];
    Eigen::VectorXd r_new = lagrange_residual(h, y_new, mult_new);
    double damp = 1.0;
    while (r_new.norm() > r.norm() && damp > 1e-4) {
      damp *= 0.5;
      y_new = y + damp * step.head(m);
      mult_new = mult + damp * step[m];
      r_new = lagrange_residual(h, y_new, mult_new);
    }
    if (r_new.norm() >= r.norm()) break;
    y = y_new;
    mult = mult_new;
    r = r_new;
  }
  return {y, mult, h.value(y), r.norm()};
}

std::vector<Eigen::VectorXd> sphere_directions(int m, int count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  if (m == 1) {
    out.push_back(Eigen::VectorXd::Ones(1));
    out.push_back(-Eigen::VectorXd::Ones(1));
    return out;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd y(m);
    if (m == 2) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5) / count;
      y << std::cos(t), std::sin(t);
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      y << r * std::cos(golden * i), r * std::sin(golden * i), z;
    }
    out.push_back(y);
  }
  return out;
}

std::vector<CriticalPoint> critical_points(const CubicTensor& h, int starts) {
  std::vector<CriticalPoint> found;
  const double tol = 1e-10 * std::max(1.0, h.norm());
  for (const auto& y0 : sphere_directions(h.dim(), starts)) {
    auto cp = polish_critical(h, y0, 1.5 * h.value(y0));
    if (!(cp.residual < tol)) continue;
    cp.y.normalize();
    const bool dup = std::any_of(found.begin(), found.end(),
                                 [&](const CriticalPoint& q) { return (q.y - cp.y).norm() < 1e-6; });
    if (!dup) found.push_back(cp);
  }
  return found;
}

}  // namespace cpl
