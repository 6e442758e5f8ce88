#pragma once

#include <Eigen/Core>

#include "cpl/jet.hpp"

namespace cpl {

using Vec = Eigen::VectorXd;

inline double dot(const Vec& a, const Vec& b) { return a.dot(b); }

/// Point of the unit sphere S^{2n+1} in C^{n+1}, stored as interleaved (Re, Im)
/// pairs: coords = (Re z_0, Im z_0, Re z_1, Im z_1, ...).
class AmbientPoint {
 public:
  explicit AmbientPoint(Vec coords);
  const Vec& coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }

 private:
  Vec coords_;
};

/// Tangent vector to the sphere at `base`, same coordinate layout.
class AmbientVector {
 public:
  AmbientVector(AmbientPoint base, Vec comps);
  const AmbientPoint& base() const { return base_; }
  const Vec& comps() const { return comps_; }

 private:
  AmbientPoint base_;
  Vec comps_;
};

struct CurvatureParams {
  double betaR;   // (eps + 3) / 4
  double gammaR;  // (eps - 1) / 4
};

struct StructureTensors {
  AmbientVector xi;
  Eigen::RowVectorXd eta;  // acts on tangent vectors by row * comps
  Eigen::MatrixXd phi;     // acts on tangent vectors by matrix * comps
};

/// Raw tensor formulas of the round contact structure on the unit sphere and of
/// its D-homothetic deformation. Templated so the same code acts on plain
/// vectors and on jet vectors along an immersion.
namespace contact {

Vec apply_j(const Vec& v);
JetVec apply_j(const JetVec& v);

/// eta_0(X) = <-Jz, X>.
template <class V>
auto eta0(const V& z, const V& x) {
  return -dot(apply_j(z), x);
}

/// phi X = JX - eta_0(X) z, the tangential part of JX.
template <class V>
V phi(const V& z, const V& x) {
  V out = apply_j(x);
  out -= z * eta0(z, x);
  return out;
}

/// g = alpha g_0 + alpha (alpha - 1) eta_0 (x) eta_0.
template <class V>
auto metric(double alpha, const V& z, const V& x, const V& y) {
  return alpha * dot(x, y) + (alpha * (alpha - 1.0)) * (eta0(z, x) * eta0(z, y));
}

/// Levi-Civita connection of the deformed metric along a field Y tangent to the
/// sphere: round-sphere projection of the Euclidean derivative `dy` = D_X Y,
/// corrected by the difference tensor -(alpha - 1)(eta_0(X) phi Y + eta_0(Y) phi X).
template <class V>
V connection(double alpha, const V& z, const V& x, const V& y, const V& dy) {
  V out = dy;
  out += z * dot(x, y);
  if (alpha != 1.0) {
    V diff = phi(z, y) * eta0(z, x);
    diff += phi(z, x) * eta0(z, y);
    out -= diff * (alpha - 1.0);
  }
  return out;
}

}  // namespace contact

/// The sphere S^{2n+1}(eps) with its deformed Sasakian structure; n <= 3.
class SasakiStructure {
 public:
  SasakiStructure(int n, double epsilon);
  static SasakiStructure with_alpha(int n, double alpha);

  int n() const { return n_; }
  int real_dim() const { return 2 * (n_ + 1); }
  double epsilon() const { return epsilon_; }
  double alpha() const { return alpha_; }
  CurvatureParams curvature_params() const;

  StructureTensors structure_tensors(const AmbientPoint& p) const;
  AmbientVector xi(const AmbientPoint& p) const;
  double eta(const AmbientVector& x) const;
  AmbientVector phi(const AmbientVector& x) const;
  double metric(const AmbientVector& x, const AmbientVector& y) const;
  /// Levi-Civita connection; `dy` is the Euclidean derivative of the field Y
  /// along a curve through the base point with velocity X.
  AmbientVector connection(const AmbientVector& x, const AmbientVector& y, const Vec& dy) const;
  /// Closed-form curvature tensor R(X,Y)Z of the space form.
  AmbientVector curvature(const AmbientVector& x, const AmbientVector& y, const AmbientVector& z) const;

  // Unchecked versions on raw coordinates (p on the sphere, vectors tangent).
  Vec xi_raw(const Vec& p) const;
  double eta_raw(const Vec& p, const Vec& x) const;
  double metric_raw(const Vec& p, const Vec& x, const Vec& y) const;
  Vec curvature_raw(const Vec& p, const Vec& x, const Vec& y, const Vec& z) const;

 private:
  SasakiStructure(int n, double epsilon, double alpha);
  void check_dim(const AmbientPoint& p) const;

  int n_;
  double epsilon_;
  double alpha_;
};

}  // namespace cpl
