#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cpl/cubic.hpp"
#include "cpl/immersion.hpp"
#include "cpl/sasaki.hpp"

namespace cpl {

/// Orthonormal tangent frame e_1..e_m (w.r.t. the deformed metric) obtained by
/// Gram-Schmidt on the coordinate tangents, with the Legendrian normal frame
/// phi e_1..phi e_m, xi.
struct FrameData {
  Eigen::Vector3d point;
  Vec position;
  std::vector<Vec> coordinate_tangents;  // df(d_i)
  Eigen::MatrixXd coeffs;                // e_a = sum_i coeffs(a, i) df(d_i)
  std::vector<Vec> tangent;
  std::vector<Vec> normal;  // phi e_1, ..., phi e_m, xi
};

struct FundamentalForms {
  Eigen::MatrixXd metric;  // induced g_ij in domain coordinates
  CubicTensor hphi;        // <h(e_a, e_b), phi e_c>
  Eigen::MatrixXd hxi;     // <h(e_a, e_b), xi>
  std::vector<std::vector<Vec>> h;  // h(e_a, e_b) as ambient vectors
  Vec H;                   // mean curvature vector (1/m) tr h
  double H_norm = 0.0;     // |H| in the deformed metric
};

/// Components <(nabla-bar_{e_a} h)(e_b, e_c), nu_l> over the normal frame
/// nu = (phi e_1, ..., phi e_m, xi).
class NablaH {
 public:
  explicit NablaH(int m = 3) : m_(m), c_(static_cast<std::size_t>(m * m * m * (m + 1)), 0.0) {}
  int dim() const { return m_; }
  double& at(int a, int b, int c, int l) { return c_[idx(a, b, c, l)]; }
  double operator()(int a, int b, int c, int l) const { return c_[idx(a, b, c, l)]; }
  /// Largest norm of the phi(TM) part of (nabla-bar_{e_a} h)(e_b, e_c).
  double max_phi_part() const;

 private:
  std::size_t idx(int a, int b, int c, int l) const {
    return static_cast<std::size_t>(((a * m_ + b) * m_ + c) * (m_ + 1) + l);
  }
  int m_;
  std::vector<double> c_;
};

/// Intrinsic curvature R_abcd = g(R(e_a, e_b) e_c, e_d) in an orthonormal frame,
/// with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
class RiemannTensor {
 public:
  explicit RiemannTensor(int m = 3) : m_(m), c_(static_cast<std::size_t>(m * m * m * m), 0.0) {}
  int dim() const { return m_; }
  double& at(int a, int b, int c, int d) { return c_[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return c_[idx(a, b, c, d)]; }
  double sectional(int a, int b) const { return (*this)(a, b, b, a); }

 private:
  std::size_t idx(int a, int b, int c, int d) const { return static_cast<std::size_t>(((a * m_ + b) * m_ + c) * m_ + d); }
  int m_;
  std::vector<double> c_;
};

/// Curvature of a Legendrian from the Gauss equation,
///   R_abcd = beta (d_bc d_ad - d_ac d_bd) + sum_k (h_bck h_adk - h_ack h_bdk).
RiemannTensor gauss_riemann(const CubicTensor& hphi, double epsilon);

/// All pointwise quantities of an immersion at one domain point. Derivatives of
/// frame quantities come from the exact order-4 Taylor jet of the map.
class LocalGeometry {
 public:
  LocalGeometry(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u);

  int dim() const { return m_; }
  const FrameData& frame() const { return frame_; }
  const FundamentalForms& forms() const { return forms_; }
  const NablaH& nabla_h() const { return nabla_h_; }
  const Vec& tension() const { return tension_; }
  const Vec& bitension() const { return bitension_; }
  /// Intrinsic curvature of the induced metric (Christoffel symbols from exact
  /// metric derivatives), in the orthonormal frame.
  const RiemannTensor& intrinsic_riemann() const { return intrinsic_; }
  /// |eta(df(d_i))| maximized over coordinate directions.
  double eta_defect() const { return eta_defect_; }

  double inner(const Vec& v, const Vec& w) const;
  double norm(const Vec& v) const;
  /// Normal part of an ambient tangent vector (w.r.t. g and the tangent frame).
  Vec normal_part(const Vec& v) const;

 private:
  const SasakiStructure* ambient_;
  int m_;
  FrameData frame_;
  FundamentalForms forms_;
  NablaH nabla_h_;
  Vec tension_;
  Vec bitension_;
  RiemannTensor intrinsic_;
  double eta_defect_ = 0.0;
};

/// Deterministic low-discrepancy sample points in the immersion's domain box
/// (Halton sequence with a seed-driven Cranley-Patterson shift).
std::vector<Eigen::Vector3d> sample_points(const ExponentialImmersion& map, int count, std::uint64_t seed);

struct Sampling {
  int count = 50;
  std::uint64_t seed = 1;
};

FrameData frame_at(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u);
FundamentalForms fundamental_forms(const SasakiStructure& ambient, const ExponentialImmersion& map,
                                   const Eigen::Vector3d& u);
NablaH nabla_h(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u);
Vec tension(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u);
Vec bitension(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u);

/// K_ab = (eps+3)/4 + <h(e_a,e_a), h(e_b,e_b)> - |h(e_a,e_b)|^2.
double gauss_sectional(const LocalGeometry& geo, double epsilon, int a, int b);
double gauss_sectional(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u,
                       int a, int b);

double check_legendrian(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s = {});
double c_parallel_residual(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s = {});
double biminimal_residual(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s = {});
double bitension_max(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s = {});

struct SampleStats {
  double min, max, mean, stddev;
};

/// Distribution of |H| over the sample points.
SampleStats mean_curvature_stats(const SasakiStructure& ambient, const ExponentialImmersion& map,
                                 const Sampling& s = {});

/// |sum_a h(e_a, A_H e_a) - 6H| at one point.
double condition_6H(const LocalGeometry& geo);
double condition_6H_residual(const SasakiStructure& ambient, const ExponentialImmersion& map,
                             const Sampling& s = {});

struct HUmbilical {
  double lambda;  // h(e1, e1) = lambda phi e1
  double mu;      // h(ej, ej) = mu phi e1, h(e1, ej) = mu phi ej
  Eigen::VectorXd axis;  // e1 in the orthonormal frame of the point
  double residual;
};

/// Residual of the H-umbilical pattern with the given unit axis.
HUmbilical h_umbilical_fit(const CubicTensor& hphi, const Eigen::VectorXd& axis);
/// Best pattern over all critical axes of the cubic form, if within `tol`.
std::optional<HUmbilical> h_umbilical_detect(const CubicTensor& hphi, double tol = 1e-6);
std::optional<HUmbilical> h_umbilical_detect(const SasakiStructure& ambient, const ExponentialImmersion& map,
                                             const Eigen::Vector3d& u, double tol = 1e-6);

}  // namespace cpl
