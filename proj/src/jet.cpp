#include "cpl/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cpl {
namespace {

struct Tables {
  std::array<MultiIndex, kJetSize> monomial;
  std::array<int, kJetSize> degree{};
  // index[a][b][c] for a+b+c <= 4, -1 otherwise
  int index[kMaxJetOrder + 1][kMaxJetOrder + 1][kMaxJetOrder + 1];
  // size of the prefix holding all monomials of degree <= d
  std::array<int, kMaxJetOrder + 1> prefix{};
  // products: for each target slot, the (lhs, rhs) slot pairs multiplying into it
  std::array<std::vector<std::pair<int, int>>, kJetSize> factors;
  std::array<double, kJetSize> factorial{};

  Tables() {
    for (auto& plane : index)
      for (auto& row : plane)
        for (int& x : row) x = -1;
    int n = 0;
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b) {
          const int c = d - a - b;
          monomial[n] = MultiIndex(a, b, c);
          degree[n] = d;
          index[a][b][c] = n;
          ++n;
        }
      }
      prefix[d] = n;
    }
    assert(n == kJetSize);
    auto fact = [](int k) {
      double f = 1.0;
      for (int i = 2; i <= k; ++i) f *= i;
      return f;
    };
    for (int i = 0; i < kJetSize; ++i) {
      const auto& m = monomial[i];
      factorial[i] = fact(m[0]) * fact(m[1]) * fact(m[2]);
      for (int j = 0; j < kJetSize; ++j) {
        const auto& p = monomial[j];
        const int a = m[0] + p[0], b = m[1] + p[1], c = m[2] + p[2];
        if (a + b + c > kMaxJetOrder) continue;
        factors[index[a][b][c]].emplace_back(i, j);
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

int slot(const MultiIndex& m) {
  if (m[0] < 0 || m[1] < 0 || m[2] < 0 || m.order() > kMaxJetOrder)
    throw std::out_of_range("jet multi-index out of range");
  return tables().index[m[0]][m[1]][m[2]];
}

}  // namespace

Jet Jet::constant(double value, int order) {
  Jet j;
  j.c_[0] = value;
  j.order_ = order;
  return j;
}

double Jet::coeff(const MultiIndex& m) const {
  if (m.order() > order_) throw std::out_of_range("coefficient above jet order");
  return c_[static_cast<std::size_t>(slot(m))];
}

void Jet::set_coeff(const MultiIndex& m, double v) {
  if (m.order() > order_) throw std::out_of_range("coefficient above jet order");
  c_[static_cast<std::size_t>(slot(m))] = v;
}

double Jet::derivative(const MultiIndex& m) const {
  return coeff(m) * tables().factorial[static_cast<std::size_t>(slot(m))];
}

Jet Jet::partial(int var) const {
  if (order_ < 1) throw std::domain_error("cannot differentiate an order-0 jet");
  const auto& t = tables();
  Jet out;
  out.order_ = order_ - 1;
  for (int i = 0; i < t.prefix[static_cast<std::size_t>(out.order_)]; ++i) {
    MultiIndex up = t.monomial[i];
    up.k[static_cast<std::size_t>(var)] += 1;
    out.c_[i] = (up[var]) * c_[static_cast<std::size_t>(slot(up))];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out = *this;
  out.order_ = std::min(order_, order);
  for (int i = tables().prefix[static_cast<std::size_t>(out.order_)]; i < kJetSize; ++i) out.c_[i] = 0.0;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < kJetSize; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < kJetSize; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  out *= -1.0;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  const auto& t = tables();
  Jet out;
  out.order_ = std::min(a.order_, b.order_);
  const int n = t.prefix[static_cast<std::size_t>(out.order_)];
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (const auto& [i, j] : t.factors[k]) s += a.c_[i] * b.c_[j];
    out.c_[k] = s;
  }
  return out;
}

Jet reciprocal(const Jet& a) {
  if (a.c_[0] == 0.0) throw std::domain_error("reciprocal of a jet with zero constant term");
  const auto& t = tables();
  Jet out;
  out.order_ = a.order_;
  const double inv = 1.0 / a.c_[0];
  out.c_[0] = inv;
  const int n = t.prefix[static_cast<std::size_t>(out.order_)];
  for (int k = 1; k < n; ++k) {
    double s = 0.0;
    for (const auto& [i, j] : t.factors[k])
      if (j != k) s += a.c_[i] * out.c_[j];
    out.c_[k] = -s * inv;
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet sqrt(const Jet& a) {
  if (!(a.c_[0] > 0.0)) throw std::domain_error("sqrt of a jet with non-positive constant term");
  const auto& t = tables();
  Jet out;
  out.order_ = a.order_;
  out.c_[0] = std::sqrt(a.c_[0]);
  const double denom = 2.0 * out.c_[0];
  const int n = t.prefix[static_cast<std::size_t>(out.order_)];
  for (int k = 1; k < n; ++k) {
    double s = 0.0;
    for (const auto& [i, j] : t.factors[k])
      if (i != 0 && j != 0) s += out.c_[i] * out.c_[j];
    out.c_[k] = (a.c_[k] - s) / denom;
  }
  return out;
}

JetVec JetVec::partial(int var) const {
  JetVec out;
  out.v_.reserve(v_.size());
  for (const auto& x : v_) out.v_.push_back(x.partial(var));
  return out;
}

Eigen::VectorXd JetVec::value() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v_.size()));
  for (std::size_t i = 0; i < v_.size(); ++i) out[static_cast<Eigen::Index>(i)] = v_[i].value();
  return out;
}

int JetVec::order() const {
  int o = kMaxJetOrder;
  for (const auto& x : v_) o = std::min(o, x.order());
  return o;
}

JetVec& JetVec::operator+=(const JetVec& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

JetVec& JetVec::operator-=(const JetVec& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

JetVec operator*(JetVec a, double s) {
  for (auto& x : a.v_) x *= s;
  return a;
}

JetVec operator*(JetVec a, const Jet& s) {
  for (auto& x : a.v_) x = x * s;
  return a;
}

Jet dot(const JetVec& a, const JetVec& b) {
  Jet s = Jet::constant(0.0, std::min(a.order(), b.order()));
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace cpl
