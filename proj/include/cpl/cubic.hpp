#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace cpl {

/// Totally symmetric 3-tensor h_ijk on R^m, m in {1, 2, 3}. For a Legendrian
/// submanifold h_ijk = <h(e_i, e_j), phi e_k> in an orthonormal frame.
class CubicTensor {
 public:
  explicit CubicTensor(int m = 3);

  int dim() const { return m_; }
  double operator()(int i, int j, int k) const { return t_[idx(i, j, k)]; }
  double& at(int i, int j, int k) { return t_[idx(i, j, k)]; }

  /// f(y) = sum h_ijk y^i y^j y^k.
  double value(const Eigen::VectorXd& y) const;
  /// d f / d y^i = 3 sum_jk h_ijk y^j y^k.
  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const;
  /// The symmetric matrix (sum_k h_ijk y^k), i.e. the shape operator A_{phi y}.
  Eigen::MatrixXd contract(const Eigen::VectorXd& y) const;
  /// Components in a new orthonormal basis whose vectors are the rows of `basis`.
  CubicTensor rotated(const Eigen::MatrixXd& basis) const;
  /// Largest deviation from total symmetry over all index permutations.
  double symmetry_defect() const;
  /// Symmetrize by averaging over permutations.
  CubicTensor symmetrized() const;
  double norm() const;

 private:
  std::size_t idx(int i, int j, int k) const { return static_cast<std::size_t>((i * 3 + j) * 3 + k); }

  int m_;
  std::array<double, 27> t_{};
};

/// Build the normal-form tensor with
///   A_{phi X1} = diag(l1, l2, l3),
///   A_{phi X2} = [[0, l2, 0], [l2, a, b], [0, b, c]],
///   A_{phi X3} = [[0, 0, l3], [0, b, c], [l3, c, d]].
CubicTensor shape_normal_form(double l1, double l2, double l3, double a, double b, double c, double d);

/// Lagrange system for critical points of f on the unit sphere, unknowns (y, mult):
///   G_i = 3 sum_jk h_ijk y^j y^k - 2 y^i mult,  G_{m} = |y|^2 - 1.
Eigen::VectorXd lagrange_residual(const CubicTensor& h, const Eigen::VectorXd& y, double mult);
Eigen::MatrixXd lagrange_jacobian(const CubicTensor& h, const Eigen::VectorXd& y, double mult);

struct CriticalPoint {
  Eigen::VectorXd y;
  double multiplier;
  double value;
  double residual;  // norm of the Lagrange residual
};

/// Newton polish of the Lagrange system from (y, mult); uses a minimum-norm step so
/// it degrades gracefully on degenerate critical sets.
CriticalPoint polish_critical(const CubicTensor& h, Eigen::VectorXd y, double mult, int max_iter = 60);

/// All critical points found from `starts` quasi-uniform starting directions,
/// deduplicated at distance 1e-6.
std::vector<CriticalPoint> critical_points(const CubicTensor& h, int starts = 200);

/// Quasi-uniform unit vectors in R^m (Fibonacci lattice for m = 3).
std::vector<Eigen::VectorXd> sphere_directions(int m, int count);

}  // namespace cpl
