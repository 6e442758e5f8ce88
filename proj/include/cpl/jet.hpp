#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace cpl {

/// Partial-derivative multi-index over the (at most three) domain coordinates.
struct MultiIndex {
  std::array<int, 3> k{0, 0, 0};

  MultiIndex() = default;
  MultiIndex(int a, int b, int c) : k{a, b, c} {}

  int order() const { return k[0] + k[1] + k[2]; }
  int operator[](int i) const { return k[static_cast<std::size_t>(i)]; }
  bool operator==(const MultiIndex&) const = default;
};

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kJetSize = 35;  // monomials of degree <= 4 in 3 variables

/// Truncated multivariate Taylor polynomial in three variables.
///
/// Coefficients are stored in graded order, so all monomials of degree k precede
/// those of degree k+1. A jet carries the degree up to which its coefficients are
/// valid; arithmetic propagates the minimum, and partial differentiation lowers it
/// by one. Everything downstream of an exact order-4 immersion jet is therefore
/// exact up to the reported order.
class Jet {
 public:
  Jet() = default;

  static Jet constant(double value, int order = kMaxJetOrder);

  int order() const { return order_; }
  double value() const { return c_[0]; }

  double coeff(const MultiIndex& m) const;
  void set_coeff(const MultiIndex& m, double v);
  /// Partial derivative at the expansion point, i.e. coeff * m!.
  double derivative(const MultiIndex& m) const;

  Jet partial(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator-(Jet a, double s) {
    a.c_[0] -= s;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet reciprocal(const Jet& a);
  friend Jet sqrt(const Jet& a);

 private:
  std::array<double, kJetSize> c_{};
  int order_ = kMaxJetOrder;
};

/// Real vector whose entries are jets; the carrier for vector fields along an
/// immersion expanded around a domain point.
class JetVec {
 public:
  JetVec() = default;
  explicit JetVec(std::size_t n, int order = kMaxJetOrder) : v_(n, Jet::constant(0.0, order)) {}

  std::size_t size() const { return v_.size(); }
  Jet& operator[](std::size_t i) { return v_[i]; }
  const Jet& operator[](std::size_t i) const { return v_[i]; }

  JetVec partial(int var) const;
  Eigen::VectorXd value() const;
  int order() const;

  JetVec& operator+=(const JetVec& o);
  JetVec& operator-=(const JetVec& o);

  friend JetVec operator+(JetVec a, const JetVec& b) { return a += b; }
  friend JetVec operator-(JetVec a, const JetVec& b) { return a -= b; }
  friend JetVec operator*(JetVec a, double s);
  friend JetVec operator*(JetVec a, const Jet& s);

 private:
  std::vector<Jet> v_;
};

Jet dot(const JetVec& a, const JetVec& b);

}  // namespace cpl
