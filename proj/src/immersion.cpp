#include "cpl/immersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "cpl/errors.hpp"

namespace cpl {
namespace {

using std::numbers::pi;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double trig_derivative(Trig t, double x, int k) {
  switch (t) {
    case Trig::one:
      return k == 0 ? 1.0 : 0.0;
    case Trig::sin:
      return std::sin(x + k * pi / 2.0);
    case Trig::cos:
      return std::cos(x + k * pi / 2.0);
  }
  return 0.0;
}

// k-th derivative of exp(i w t) T(t).
Complex factor_derivative(double w, Trig t, double x, int k) {
  const Complex e = std::polar(1.0, w * x);
  const Complex iw(0.0, w);
  Complex s = 0.0;
  Complex pw = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double td = trig_derivative(t, x, k - j);
    if (td != 0.0) s += binomial(k, j) * pw * td;
    pw *= iw;
  }
  return s * e;
}

std::vector<Interval> flat_box() { return {{-pi, pi}, {-pi, pi}, {-pi, pi}}; }

std::vector<Interval> nonflat_box() { return {{-pi, pi}, {0.1, pi - 0.1}, {-pi, pi}}; }

Term term(double amplitude, std::array<double, 3> freq, std::array<Trig, 3> chart = {Trig::one, Trig::one, Trig::one}) {
  Term t;
  t.amplitude = amplitude;
  t.frequency = freq;
  t.chart = chart;
  return t;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ExponentialImmersion::ExponentialImmersion(std::vector<Term> terms, int domain_dim, std::vector<Interval> domain)
    : terms_(std::move(terms)), domain_dim_(domain_dim), domain_(std::move(domain)) {
  if (domain_dim_ < 1 || domain_dim_ > 3) throw DomainError("domain dimension must be 1, 2 or 3");
  if (terms_.size() < 2 || terms_.size() > 4) throw DomainError("target must be C^2, C^3 or C^4");
  if (static_cast<int>(domain_.size()) != domain_dim_) throw DomainError("domain box does not match dimension");
  for (const auto& t : terms_)
    for (int k = domain_dim_; k < 3; ++k)
      if (t.frequency[static_cast<std::size_t>(k)] != 0.0 || t.chart[static_cast<std::size_t>(k)] != Trig::one)
        throw DomainError("term depends on a variable outside the domain");
}

std::vector<Complex> ExponentialImmersion::derivatives(const Eigen::Vector3d& u, const MultiIndex& order) const {
  if (order.order() > kMaxJetOrder) throw DomainError("derivative order above 4 is not supported");
  for (int k = 0; k < 3; ++k)
    if (order[k] < 0) throw DomainError("negative derivative order");
  for (int k = domain_dim_; k < 3; ++k)
    if (order[k] != 0) throw DomainError("derivative along a variable outside the domain");
  std::vector<Complex> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Complex v = t.amplitude * std::polar(1.0, t.phase);
    for (int k = 0; k < domain_dim_; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      v *= factor_derivative(t.frequency[kk], t.chart[kk], u[k], order[k]);
    }
    out.push_back(v);
  }
  return out;
}

Vec ExponentialImmersion::derivative_real(const Eigen::Vector3d& u, const MultiIndex& order) const {
  const auto c = derivatives(u, order);
  Vec out(2 * static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[2 * static_cast<Eigen::Index>(i)] = c[i].real();
    out[2 * static_cast<Eigen::Index>(i) + 1] = c[i].imag();
  }
  return out;
}

JetVec ExponentialImmersion::jet(const Eigen::Vector3d& u, int order) const {
  JetVec out(static_cast<std::size_t>(real_dim()), order);
  double fact[kMaxJetOrder + 1] = {1, 1, 2, 6, 24};
  for (int d = 0; d <= order; ++d) {
    for (int a = d; a >= 0; --a) {
      for (int b = d - a; b >= 0; --b) {
        const MultiIndex m(a, b, d - a - b);
        bool inside = true;
        for (int k = domain_dim_; k < 3; ++k) inside = inside && m[k] == 0;
        if (!inside) continue;
        const Vec v = derivative_real(u, m) / (fact[a] * fact[b] * fact[d - a - b]);
        for (std::size_t i = 0; i < out.size(); ++i) out[i].set_coeff(m, v[static_cast<Eigen::Index>(i)]);
      }
    }
  }
  return out;
}

std::pair<double, double> FlatFamilyParams::rho() const {
  const double rad = 4.0 * c * (2.0 * c - a) + d * d;
  const double s = std::sqrt(std::max(rad, 0.0));
  return {(s + d) / 2.0, (s - d) / 2.0};
}

FlatConstraintMargins flat_constraint_margins(const FlatFamilyParams& p) {
  const double al = p.alpha();
  FlatConstraintMargins m{};
  m.lambda_lower = p.lambda + 1.0 / std::sqrt(al);
  m.lambda_upper = -p.lambda;
  m.a_positive = p.a;
  m.a_upper = p.lambda != 0.0 ? (p.lambda * p.lambda - al) / p.lambda - p.a : -1.0;
  m.a_ge_d = p.a - p.d;
  m.d_nonnegative = p.d;
  m.a_gt_2c = p.a - 2.0 * p.c;
  m.lambda_sq_gap = std::abs(p.lambda * p.lambda - 1.0 / (3.0 * al));
  m.radicand = 4.0 * p.c * (2.0 * p.c - p.a) + p.d * p.d;
  m.unit_norm = 1.0 / al + p.lambda * p.lambda + p.a * p.c - p.c * p.c;
  return m;
}

ExponentialImmersion build_flat(const FlatFamilyParams& p) {
  if (!(p.epsilon > -3.0)) throw ConstraintError("eps > -3 violated");
  const double al = p.alpha();
  const auto m = flat_constraint_margins(p);
  constexpr double slack = 1e-12;
  if (!(m.lambda_lower > 0.0) || !(m.lambda_upper > 0.0))
    throw ConstraintError("-1/sqrt(alpha) < lambda < 0 violated (lambda = " + fmt(p.lambda) + ")");
  if (!(m.a_positive > 0.0)) throw ConstraintError("a > 0 violated");
  if (!(m.a_upper >= -slack * std::max(1.0, p.a))) throw ConstraintError("a <= (lambda^2 - alpha)/lambda violated");
  if (!(m.a_ge_d >= -slack * std::max(1.0, p.a))) throw ConstraintError("a >= d violated");
  if (!(m.d_nonnegative >= 0.0)) throw ConstraintError("d >= 0 violated");
  if (!(m.a_gt_2c > 0.0)) throw ConstraintError("a > 2c violated");
  if (!(m.lambda_sq_gap > slack)) throw ConstraintError("lambda^2 != 1/(3 alpha) violated");
  if (!(m.radicand >= 0.0)) throw ConstraintError("4c(2c - a) + d^2 >= 0 violated");
  const auto [r1, r2] = p.rho();
  if (!(r2 > 0.0)) throw ConstraintError("rho_2 > 0 violated");
  if (!(std::abs(m.unit_norm) <= 1e-10))
    throw ConstraintError("alpha^{-1}+lambda^2+ac-c^2=0 violated (residual " + fmt(m.unit_norm) + ")");

  const double l = p.lambda;
  std::vector<Term> terms{
      term(l / std::sqrt(l * l + 1.0 / al), {1.0 / (al * l), 0.0, 0.0}),
      term(1.0 / std::sqrt(al * (p.c - p.a) * (2.0 * p.c - p.a)), {-l, p.c - p.a, 0.0}),
      term(1.0 / std::sqrt(al * r1 * (r1 + r2)), {-l, -p.c, -r1}),
      term(1.0 / std::sqrt(al * r2 * (r1 + r2)), {-l, -p.c, r2}),
  };
  return ExponentialImmersion(std::move(terms), 3, flat_box());
}

std::array<std::array<Trig, 3>, 3> sphere_factor_charts(int var) {
  std::array<std::array<Trig, 3>, 3> out{};
  for (auto& c : out) c = {Trig::one, Trig::one, Trig::one};
  const auto th = static_cast<std::size_t>(var), ph = static_cast<std::size_t>(var + 1);
  out[0][th] = Trig::sin;
  out[0][ph] = Trig::cos;
  out[1][th] = Trig::sin;
  out[1][ph] = Trig::sin;
  out[2][th] = Trig::cos;
  return out;
}

ExponentialImmersion build_nonflat(const NonFlatFamilyParams& p) {
  if (!(p.mu > 0.0)) throw DomainError("mu must be positive");
  const double mu2 = p.mu * p.mu;
  const double a0 = std::sqrt(mu2 / (mu2 + 1.0));
  const double a1 = std::sqrt(1.0 / (mu2 + 1.0));
  const auto charts = sphere_factor_charts(1);
  std::vector<Term> terms{term(a0, {-1.0 / p.mu, 0.0, 0.0})};
  for (const auto& c : charts) terms.push_back(term(a1, {p.mu, 0.0, 0.0}, c));
  return ExponentialImmersion(std::move(terms), 3, nonflat_box());
}

FlatFamilyParams theorem2_quadruplet(int which) {
  using Real = boost::multiprecision::cpp_dec_float_50;
  const Real s13 = sqrt(Real(13)), s3 = sqrt(Real(3));
  Real l, a, c, d;
  switch (which) {
    case 1:
      l = -sqrt((4 - s13) / 3);
      a = sqrt((7 - s13) / 6);
      c = -a;
      d = 0;
      break;
    case 2:
      l = -sqrt(1 / (5 + 2 * s3));
      a = sqrt((45 + 21 * s3) / 13);
      c = -sqrt(6 / (21 + 11 * s3));
      d = 0;
      break;
    case 3:
      l = -sqrt(1 / (6 + s13));
      a = sqrt((523 + 139 * s13) / 138);
      c = -sqrt((79 - 17 * s13) / 138);
      d = sqrt((14 + 2 * s13) / 3);
      break;
    default:
      throw DomainError("flat quadruplet index must be 1, 2 or 3");
  }
  return {1.0, l.convert_to<double>(), a.convert_to<double>(), c.convert_to<double>(), d.convert_to<double>()};
}

ExponentialImmersion build_theorem2_flat(int which) { return build_flat(theorem2_quadruplet(which)); }

FlatFamilyParams corollary_flat_params() {
  using Real = boost::multiprecision::cpp_dec_float_50;
  const Real s3 = sqrt(Real(3)), s5 = sqrt(Real(5)), s10 = sqrt(Real(10)), s2 = sqrt(Real(2));
  return {1.0, Real(-1 / s5).convert_to<double>(), Real(3 * s3 / s10).convert_to<double>(),
          Real(-s3 / s10).convert_to<double>(), s2.convert_to<double>()};
}

ExponentialImmersion build_great_sphere() {
  using T = Trig;
  std::vector<Term> terms{
      term(1.0, {0, 0, 0}, {T::cos, T::one, T::one}),
      term(1.0, {0, 0, 0}, {T::sin, T::cos, T::one}),
      term(1.0, {0, 0, 0}, {T::sin, T::sin, T::cos}),
      term(1.0, {0, 0, 0}, {T::sin, T::sin, T::sin}),
  };
  return ExponentialImmersion(std::move(terms), 3, {{0.3, pi - 0.3}, {0.3, pi - 0.3}, {-pi, pi}});
}

ExponentialImmersion legendre_curve(double mu) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  const double mu2 = mu * mu;
  std::vector<Term> terms{term(std::sqrt(mu2 / (mu2 + 1.0)), {-1.0 / mu, 0.0, 0.0}),
                          term(std::sqrt(1.0 / (mu2 + 1.0)), {mu, 0.0, 0.0})};
  return ExponentialImmersion(std::move(terms), 1, {{-pi, pi}});
}

double closedness_epsilon(long s, long t) {
  const long num = -9 * s * s + 8 * s * t - 3 * t * t;
  const long den = 3 * s * s - 8 * s * t + t * t;
  if (den == 0) throw DomainError("closedness parametrization has zero denominator");
  return static_cast<double>(num) / static_cast<double>(den);
}

ProductDecomposition product_decomposition(const std::string& id) {
  const std::vector<Interval> curve_box{{-pi, pi}}, surface_box{{-pi, pi}, {-pi, pi}};
  if (id == "corollary-flat") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0),
                 s10 = std::sqrt(10.0);
    ExponentialImmersion curve({term(-1.0 / s6, {-s5, 0, 0}), term(s5 / s6, {1.0 / s5, 0, 0})}, 1, curve_box);
    ExponentialImmersion surface({term(1.0 / s5, {-4.0 * s3 / s10, 0, 0}),
                                  term(1.0 / s5, {s3 / s10, -3.0 * s2 / 2.0, 0}),
                                  term(s3 / s5, {s3 / s10, s2 / 2.0, 0})},
                                 2, surface_box);
    return {std::move(curve), std::move(surface)};
  }
  for (int k = 1; k <= 3; ++k) {
    if (id != "thm2-flat-" + std::to_string(k)) continue;
    const auto p = theorem2_quadruplet(k);
    const double l = p.lambda, a = p.a, c = p.c;
    const auto [r1, r2] = p.rho();
    const double s = std::sqrt(l * l + 1.0);
    ExponentialImmersion curve({term(l / s, {1.0 / l, 0, 0}), term(1.0 / s, {-l, 0, 0})}, 1, curve_box);
    ExponentialImmersion surface({term(s / std::sqrt((c - a) * (2.0 * c - a)), {c - a, 0, 0}),
                                  term(s / std::sqrt(r1 * (r1 + r2)), {-c, -r1, 0}),
                                  term(s / std::sqrt(r2 * (r1 + r2)), {-c, r2, 0})},
                                 2, surface_box);
    return {std::move(curve), std::move(surface)};
  }
  throw DomainError("product decomposition is only defined for corollary-flat and thm2-flat-1..3, got '" + id + "'");
}

Vec reassemble(const ProductDecomposition& pd, const Eigen::Vector3d& uvw) {
  const auto z = pd.curve.derivatives(Eigen::Vector3d(uvw[0], 0, 0), {});
  const auto y = pd.surface.derivatives(Eigen::Vector3d(uvw[1], uvw[2], 0), {});
  Vec out(2 * static_cast<Eigen::Index>(1 + y.size()));
  out[0] = z[0].real();
  out[1] = z[0].imag();
  for (std::size_t k = 0; k < y.size(); ++k) {
    const Complex v = z[1] * y[k];
    out[2 * static_cast<Eigen::Index>(k + 1)] = v.real();
    out[2 * static_cast<Eigen::Index>(k + 1) + 1] = v.imag();
  }
  return out;
}

NamedImmersion make_named(const std::string& id, double epsilon, double mu2, const FlatFamilyParams* flat) {
  if (id == "corollary-flat") return {id, build_flat(corollary_flat_params()), SasakiStructure(3, 1.0)};
  if (id == "corollary-nonflat") return {id, build_nonflat({1.0, 1.0}), SasakiStructure(3, 1.0)};
  if (id == "great-sphere") return {id, build_great_sphere(), SasakiStructure(3, 1.0)};
  for (int k = 1; k <= 3; ++k)
    if (id == "thm2-flat-" + std::to_string(k)) return {id, build_theorem2_flat(k), SasakiStructure(3, 1.0)};
  if (id == "thm2-nonflat-plus" || id == "thm2-nonflat-minus") {
    const double sign = id == "thm2-nonflat-plus" ? 1.0 : -1.0;
    const double m2 = (4.0 + sign * std::sqrt(13.0)) / 3.0;
    return {id, build_nonflat({1.0, std::sqrt(m2)}), SasakiStructure(3, 1.0)};
  }
  if (id == "thm1-flat") {
    if (flat == nullptr) throw DomainError("thm1-flat needs an explicit (lambda, a, c, d) quadruplet");
    FlatFamilyParams p = *flat;
    p.epsilon = epsilon;
    return {id, build_flat(p), SasakiStructure(3, epsilon)};
  }
  if (id == "thm1-nonflat") {
    if (!(mu2 > 0.0)) throw DomainError("thm1-nonflat needs a positive mu^2");
    return {id, build_nonflat({epsilon, std::sqrt(mu2)}), SasakiStructure(3, epsilon)};
  }
  throw DomainError("unknown immersion id '" + id + "'");
}

std::vector<std::string> shipped_ids() {
  return {"corollary-flat", "corollary-nonflat", "thm2-flat-1",        "thm2-flat-2",
          "thm2-flat-3",    "thm2-nonflat-plus", "thm2-nonflat-minus", "great-sphere"};
}

}  // namespace cpl
