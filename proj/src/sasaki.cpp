#include "cpl/sasaki.hpp"

#include <cmath>
#include <string>

#include "cpl/errors.hpp"

namespace cpl {

namespace {
constexpr double kSphereTol = 1e-12;
constexpr double kTangentTol = 1e-10;
}  // namespace

AmbientPoint::AmbientPoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() % 2 != 0 || coords_.size() < 4)
    throw DomainError("ambient point needs an even number (>= 4) of real coordinates");
  const double dev = std::abs(coords_.norm() - 1.0);
  if (!(dev <= kSphereTol))
    throw DomainError("point is off the unit sphere (|norm - 1| = " + std::to_string(dev) + ")");
}

AmbientVector::AmbientVector(AmbientPoint base, Vec comps) : base_(std::move(base)), comps_(std::move(comps)) {
  if (comps_.size() != base_.size()) throw DomainError("vector and base point dimensions differ");
  const double radial = std::abs(comps_.dot(base_.coords()));
  if (!(radial <= kTangentTol * std::max(1.0, comps_.norm())))
    throw DomainError("vector is not tangent to the sphere at its base point");
}

namespace contact {

Vec apply_j(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

JetVec apply_j(const JetVec& v) {
  JetVec out(v.size());
  for (std::size_t k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

}  // namespace contact

SasakiStructure::SasakiStructure(int n, double epsilon, double alpha) : n_(n), epsilon_(epsilon), alpha_(alpha) {
  if (n < 1 || n > 3) throw DomainError("Sasakian sphere dimension n must be 1, 2 or 3");
  if (!(epsilon > -3.0) || !std::isfinite(epsilon)) throw DomainError("phi-sectional curvature must exceed -3");
}

SasakiStructure::SasakiStructure(int n, double epsilon) : SasakiStructure(n, epsilon, 4.0 / (epsilon + 3.0)) {}

SasakiStructure SasakiStructure::with_alpha(int n, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("deformation constant alpha must be positive");
  return SasakiStructure(n, 4.0 / alpha - 3.0, alpha);
}

CurvatureParams SasakiStructure::curvature_params() const {
  return {(epsilon_ + 3.0) / 4.0, (epsilon_ - 1.0) / 4.0};
}

void SasakiStructure::check_dim(const AmbientPoint& p) const {
  if (p.size() != real_dim()) throw DomainError("point dimension does not match S^{2n+1}");
}

Vec SasakiStructure::xi_raw(const Vec& p) const { return -contact::apply_j(p) / alpha_; }

double SasakiStructure::eta_raw(const Vec& p, const Vec& x) const { return alpha_ * contact::eta0(p, x); }

double SasakiStructure::metric_raw(const Vec& p, const Vec& x, const Vec& y) const {
  return contact::metric(alpha_, p, x, y);
}

StructureTensors SasakiStructure::structure_tensors(const AmbientPoint& p) const {
  check_dim(p);
  const Vec& z = p.coords();
  const Vec jz = contact::apply_j(z);
  const Eigen::Index d = z.size();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k + 1 < d; k += 2) {
    j(k, k + 1) = -1.0;
    j(k + 1, k) = 1.0;
  }
  // eta_0 = -(Jz)^T, phi = J - z eta_0 = J + z (Jz)^T on tangent vectors
  Eigen::RowVectorXd eta = -alpha_ * jz.transpose();
  Eigen::MatrixXd phi = j + z * jz.transpose();
  return {xi(p), eta, phi};
}

AmbientVector SasakiStructure::xi(const AmbientPoint& p) const {
  check_dim(p);
  return AmbientVector(p, xi_raw(p.coords()));
}

double SasakiStructure::eta(const AmbientVector& x) const {
  check_dim(x.base());
  return eta_raw(x.base().coords(), x.comps());
}

AmbientVector SasakiStructure::phi(const AmbientVector& x) const {
  check_dim(x.base());
  return AmbientVector(x.base(), contact::phi(x.base().coords(), x.comps()));
}

double SasakiStructure::metric(const AmbientVector& x, const AmbientVector& y) const {
  if ((x.base().coords() - y.base().coords()).norm() > 0.0)
    throw DomainError("metric evaluated on vectors with different base points");
  check_dim(x.base());
  return metric_raw(x.base().coords(), x.comps(), y.comps());
}

AmbientVector SasakiStructure::connection(const AmbientVector& x, const AmbientVector& y, const Vec& dy) const {
  if ((x.base().coords() - y.base().coords()).norm() > 0.0)
    throw DomainError("connection evaluated on vectors with different base points");
  check_dim(x.base());
  return AmbientVector(x.base(), contact::connection(alpha_, x.base().coords(), x.comps(), y.comps(), dy));
}

Vec SasakiStructure::curvature_raw(const Vec& p, const Vec& x, const Vec& y, const Vec& z) const {
  const auto [beta, gamma] = curvature_params();
  auto g = [&](const Vec& a, const Vec& b) { return metric_raw(p, a, b); };
  auto eta = [&](const Vec& a) { return eta_raw(p, a); };
  auto phi = [&](const Vec& a) { return contact::phi(p, a); };
  const Vec xi = xi_raw(p);
  const Vec px = phi(x), py = phi(y), pz = phi(z);
  Vec r = beta * (g(y, z) * x - g(x, z) * y);
  if (gamma != 0.0) {
    r += gamma * (eta(x) * eta(z) * y - eta(y) * eta(z) * x + g(x, z) * eta(y) * xi - g(y, z) * eta(x) * xi +
                  g(py, z) * px - g(px, z) * py - 2.0 * g(px, y) * pz);
  }
  return r;
}

AmbientVector SasakiStructure::curvature(const AmbientVector& x, const AmbientVector& y,
                                         const AmbientVector& z) const {
  check_dim(x.base());
  return AmbientVector(x.base(), curvature_raw(x.base().coords(), x.comps(), y.comps(), z.comps()));
}

}  // namespace cpl
