#include "cpl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cpl/errors.hpp"

namespace cpl {
namespace {

using JetMat = std::vector<std::vector<Jet>>;

JetMat invert(const JetMat& g) {
  const std::size_t m = g.size();
  JetMat inv(m, std::vector<Jet>(m));
  if (m == 1) {
    inv[0][0] = reciprocal(g[0][0]);
  } else if (m == 2) {
    const Jet r = reciprocal(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
    inv[0][0] = g[1][1] * r;
    inv[1][1] = g[0][0] * r;
    inv[0][1] = -(g[0][1] * r);
    inv[1][0] = -(g[1][0] * r);
  } else {
    auto cof = [&](std::size_t i, std::size_t j) {
      const std::size_t i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      return g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1];
    };
    const Jet det = g[0][0] * cof(0, 0) + g[0][1] * cof(0, 1) + g[0][2] * cof(0, 2);
    const Jet r = reciprocal(det);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) inv[j][i] = cof(i, j) * r;
  }
  return inv;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

double NablaH::max_phi_part() const {
  double worst = 0.0;
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      for (int c = 0; c < m_; ++c) {
        double s = 0.0;
        for (int l = 0; l < m_; ++l) s += (*this)(a, b, c, l) * (*this)(a, b, c, l);
        worst = std::max(worst, std::sqrt(s));
      }
  return worst;
}

RiemannTensor gauss_riemann(const CubicTensor& h, double epsilon) {
  const int m = h.dim();
  const double beta = (epsilon + 3.0) / 4.0;
  RiemannTensor r(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = beta * ((b == c && a == d ? 1.0 : 0.0) - (a == c && b == d ? 1.0 : 0.0));
          for (int k = 0; k < m; ++k) v += h(b, c, k) * h(a, d, k) - h(a, c, k) * h(b, d, k);
          r.at(a, b, c, d) = v;
        }
  return r;
}

LocalGeometry::LocalGeometry(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u)
    : ambient_(&ambient), m_(map.domain_dim()), forms_{Eigen::MatrixXd(), CubicTensor(map.domain_dim()), {}, {}, {}, 0.0},
      nabla_h_(map.domain_dim()), intrinsic_(map.domain_dim()) {
  if (map.complex_dim() != ambient.n() + 1)
    throw DomainError("immersion target dimension does not match the ambient sphere");
  const double al = ambient.alpha();
  const auto m = static_cast<std::size_t>(m_);

  const JetVec F = map.jet(u, kMaxJetOrder);
  std::vector<JetVec> dF(m);
  for (std::size_t i = 0; i < m; ++i) dF[i] = F.partial(static_cast<int>(i));

  JetMat g(m, std::vector<Jet>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) g[i][j] = g[j][i] = contact::metric(al, F, dF[i], dF[j]);
  const JetMat gi = invert(g);

  // Gauss formula: nabla-tilde_{d_i} df(d_j) = Gamma^k_ij df(d_k) + h(d_i, d_j).
  std::vector<JetMat> gam(m, JetMat(m, std::vector<Jet>(m)));
  std::vector<std::vector<JetVec>> hc(m, std::vector<JetVec>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const JetVec b = contact::connection(al, F, dF[i], dF[j], dF[j].partial(static_cast<int>(i)));
      std::vector<Jet> proj(m);
      for (std::size_t l = 0; l < m; ++l) proj[l] = contact::metric(al, F, b, dF[l]);
      JetVec h = b;
      for (std::size_t k = 0; k < m; ++k) {
        Jet c = gi[k][0] * proj[0];
        for (std::size_t l = 1; l < m; ++l) c += gi[k][l] * proj[l];
        gam[k][i][j] = gam[k][j][i] = c;
        h -= dF[k] * c;
      }
      hc[i][j] = hc[j][i] = h;
    }
  }

  // Values at the expansion point.
  const Vec z = F.value();
  Eigen::MatrixXd gv(m_, m_), giv(m_, m_);
  std::vector<Vec> df(m);
  for (std::size_t i = 0; i < m; ++i) {
    df[i] = dF[i].value();
    for (std::size_t j = 0; j < m; ++j) {
      gv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g[i][j].value();
      giv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gi[i][j].value();
    }
  }
  auto gamv = [&](std::size_t k, std::size_t i, std::size_t j) { return gam[k][i][j].value(); };

  for (std::size_t i = 0; i < m; ++i) eta_defect_ = std::max(eta_defect_, std::abs(ambient.eta_raw(z, df[i])));

  // Orthonormal frame by Gram-Schmidt in the deformed metric.
  frame_.point = u;
  frame_.position = z;
  frame_.coordinate_tangents = df;
  frame_.coeffs = Eigen::MatrixXd::Zero(m_, m_);
  for (std::size_t a = 0; a < m; ++a) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m_);
    c[static_cast<Eigen::Index>(a)] = 1.0;
    Vec v = df[a];
    for (std::size_t b = 0; b < a; ++b) {
      const double p = ambient.metric_raw(z, v, frame_.tangent[b]);
      v -= p * frame_.tangent[b];
      c -= p * frame_.coeffs.row(static_cast<Eigen::Index>(b)).transpose();
    }
    const double nv = std::sqrt(std::max(ambient.metric_raw(z, v, v), 0.0));
    if (!(nv > 1e-10 * std::max(1.0, df[a].norm())))
      throw DegenerateError("immersion differential is rank deficient at the sample point");
    frame_.tangent.push_back(v / nv);
    frame_.coeffs.row(static_cast<Eigen::Index>(a)) = c.transpose() / nv;
  }
  for (std::size_t a = 0; a < m; ++a) frame_.normal.push_back(contact::phi(z, frame_.tangent[a]));
  frame_.normal.push_back(ambient.xi_raw(z));
  const Eigen::MatrixXd& E = frame_.coeffs;
  auto Ec = [&](std::size_t a, std::size_t i) { return E(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)); };

  auto to_frame2 = [&](const std::vector<std::vector<Vec>>& coord) {
    std::vector<std::vector<Vec>> out(m, std::vector<Vec>(m, Vec::Zero(z.size())));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) out[a][b] += Ec(a, i) * Ec(b, j) * coord[i][j];
    return out;
  };

  // Second fundamental form and mean curvature.
  std::vector<std::vector<Vec>> hv(m, std::vector<Vec>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) hv[i][j] = hc[i][j].value();
  forms_.metric = gv;
  forms_.h = to_frame2(hv);
  forms_.hxi = Eigen::MatrixXd::Zero(m_, m_);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = 0; c < m; ++c)
        forms_.hphi.at(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)) =
            ambient.metric_raw(z, forms_.h[a][b], frame_.normal[c]);
      forms_.hxi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          ambient.metric_raw(z, forms_.h[a][b], frame_.normal[m]);
    }

  JetVec tau = hc[0][0] * gi[0][0];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i + j > 0) tau += hc[i][j] * gi[i][j];
  tension_ = tau.value();
  forms_.H = tension_ / m_;
  forms_.H_norm = norm(forms_.H);

  // Covariant derivative of h: (nabla-bar_i h)_jk = (nabla-tilde_i h_jk)^perp - h(nabla_i d_j, d_k) - h(d_j, nabla_i d_k).
  std::vector<std::vector<std::vector<Vec>>> nh(m, std::vector<std::vector<Vec>>(m, std::vector<Vec>(m)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j; k < m; ++k) {
        const JetVec w = contact::connection(al, F, dF[i], hc[j][k], hc[j][k].partial(static_cast<int>(i)));
        Vec v = normal_part(w.value());
        for (std::size_t l = 0; l < m; ++l) v -= gamv(l, i, j) * hv[l][k] + gamv(l, i, k) * hv[j][l];
        nh[i][j][k] = nh[i][k][j] = v;
      }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        Vec v = Vec::Zero(z.size());
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) v += Ec(a, i) * Ec(b, j) * Ec(c, k) * nh[i][j][k];
        for (std::size_t l = 0; l <= m; ++l)
          nabla_h_.at(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c), static_cast<int>(l)) =
              ambient.metric_raw(z, v, frame_.normal[l]);
      }

  // Bitension: trace of the second covariant derivative of tau plus the curvature term.
  std::vector<JetVec> dtau(m);
  for (std::size_t k = 0; k < m; ++k)
    dtau[k] = contact::connection(al, F, dF[k], tau, tau.partial(static_cast<int>(k)));
  bitension_ = Vec::Zero(z.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double w = giv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      Vec term = contact::connection(al, F, dF[i], dtau[j], dtau[j].partial(static_cast<int>(i))).value();
      for (std::size_t k = 0; k < m; ++k) term -= gamv(k, i, j) * dtau[k].value();
      term += ambient.curvature_raw(z, tension_, df[i], df[j]);
      bitension_ += w * term;
    }

  // Intrinsic curvature straight from the induced metric.
  std::vector<JetMat> dg(m, JetMat(m, std::vector<Jet>(m)));  // dg[k][i][j] = d_k g_ij
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) dg[k][i][j] = g[i][j].partial(static_cast<int>(k));
  std::vector<JetMat> chr(m, JetMat(m, std::vector<Jet>(m)));
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Jet s = Jet::constant(0.0, 2);
        for (std::size_t p = 0; p < m; ++p) s += gi[l][p] * (dg[i][j][p] + dg[j][i][p] - dg[p][i][j]);
        chr[l][i][j] = s * 0.5;
      }
  std::vector<double> lower(m * m * m * m, 0.0);  // g(R(d_i, d_j) d_k, d_l)
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> up(m, 0.0);
        for (std::size_t l = 0; l < m; ++l) {
          double r = chr[l][j][k].partial(static_cast<int>(i)).value() - chr[l][i][k].partial(static_cast<int>(j)).value();
          for (std::size_t p = 0; p < m; ++p)
            r += chr[l][i][p].value() * chr[p][j][k].value() - chr[l][j][p].value() * chr[p][i][k].value();
          up[l] = r;
        }
        for (std::size_t l = 0; l < m; ++l) {
          double s = 0.0;
          for (std::size_t p = 0; p < m; ++p) s += gv(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(p)) * up[p];
          lower[((i * m + j) * m + k) * m + l] = s;
        }
      }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          double s = 0.0;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
              for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                  s += Ec(a, i) * Ec(b, j) * Ec(c, k) * Ec(d, l) * lower[((i * m + j) * m + k) * m + l];
          intrinsic_.at(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c), static_cast<int>(d)) = s;
        }
}

double LocalGeometry::inner(const Vec& v, const Vec& w) const {
  return ambient_->metric_raw(frame_.position, v, w);
}

double LocalGeometry::norm(const Vec& v) const { return std::sqrt(std::max(inner(v, v), 0.0)); }

Vec LocalGeometry::normal_part(const Vec& v) const {
  Vec out = v;
  for (const auto& e : frame_.tangent) out -= ambient_->metric_raw(frame_.position, v, e) * e;
  return out;
}

std::vector<Eigen::Vector3d> sample_points(const ExponentialImmersion& map, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shift[3] = {unit(rng), unit(rng), unit(rng)};
  const unsigned bases[3] = {2, 3, 5};
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    for (int k = 0; k < map.domain_dim(); ++k) {
      double t = radical_inverse(static_cast<std::uint64_t>(i + 1), bases[k]) + shift[k];
      t -= std::floor(t);
      const auto& box = map.domain()[static_cast<std::size_t>(k)];
      u[k] = box.lo + t * (box.hi - box.lo);
    }
    out.push_back(u);
  }
  return out;
}

FrameData frame_at(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u) {
  return LocalGeometry(ambient, map, u).frame();
}

FundamentalForms fundamental_forms(const SasakiStructure& ambient, const ExponentialImmersion& map,
                                   const Eigen::Vector3d& u) {
  return LocalGeometry(ambient, map, u).forms();
}

NablaH nabla_h(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u) {
  return LocalGeometry(ambient, map, u).nabla_h();
}

Vec tension(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u) {
  return LocalGeometry(ambient, map, u).tension();
}

Vec bitension(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u) {
  return LocalGeometry(ambient, map, u).bitension();
}

double gauss_sectional(const LocalGeometry& geo, double epsilon, int a, int b) {
  if (a == b) throw DomainError("sectional curvature needs two distinct frame directions");
  const auto& h = geo.forms().h;
  const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
  return (epsilon + 3.0) / 4.0 + geo.inner(h[ua][ua], h[ub][ub]) - geo.inner(h[ua][ub], h[ua][ub]);
}

double gauss_sectional(const SasakiStructure& ambient, const ExponentialImmersion& map, const Eigen::Vector3d& u,
                       int a, int b) {
  return gauss_sectional(LocalGeometry(ambient, map, u), ambient.epsilon(), a, b);
}

namespace {

template <class F>
double max_over_samples(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s, F&& f) {
  double worst = 0.0;
  for (const auto& u : sample_points(map, s.count, s.seed)) worst = std::max(worst, f(LocalGeometry(ambient, map, u)));
  return worst;
}

}  // namespace

double check_legendrian(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  if (map.complex_dim() != ambient.n() + 1)
    throw DomainError("immersion target dimension does not match the ambient sphere");
  double worst = 0.0;
  for (const auto& u : sample_points(map, s.count, s.seed)) {
    const Vec z = map.value(u);
    for (int i = 0; i < map.domain_dim(); ++i) {
      MultiIndex d;
      d.k[static_cast<std::size_t>(i)] = 1;
      worst = std::max(worst, std::abs(ambient.eta_raw(z, map.derivative_real(u, d))));
    }
  }
  return worst;
}

double c_parallel_residual(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  return max_over_samples(ambient, map, s, [](const LocalGeometry& g) { return g.nabla_h().max_phi_part(); });
}

double biminimal_residual(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  return max_over_samples(ambient, map, s,
                          [](const LocalGeometry& g) { return g.norm(g.normal_part(g.bitension())); });
}

double bitension_max(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  return max_over_samples(ambient, map, s, [](const LocalGeometry& g) { return g.norm(g.bitension()); });
}

SampleStats mean_curvature_stats(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  std::vector<double> v;
  for (const auto& u : sample_points(map, s.count, s.seed)) v.push_back(LocalGeometry(ambient, map, u).forms().H_norm);
  SampleStats st{INFINITY, -INFINITY, 0.0, 0.0};
  for (double x : v) {
    st.min = std::min(st.min, x);
    st.max = std::max(st.max, x);
    st.mean += x / static_cast<double>(v.size());
  }
  for (double x : v) st.stddev += (x - st.mean) * (x - st.mean) / static_cast<double>(v.size());
  st.stddev = std::sqrt(st.stddev);
  return st;
}

double condition_6H(const LocalGeometry& geo) {
  const auto& f = geo.forms();
  const auto m = static_cast<std::size_t>(geo.dim());
  // sum_a h(e_a, A_H e_a) with A_H e_a = sum_b <h(e_a, e_b), H> e_b
  Vec acc = -6.0 * f.H;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) acc += geo.inner(f.h[a][b], f.H) * f.h[a][b];
  return geo.norm(acc);
}

double condition_6H_residual(const SasakiStructure& ambient, const ExponentialImmersion& map, const Sampling& s) {
  return max_over_samples(ambient, map, s, [](const LocalGeometry& g) { return condition_6H(g); });
}

HUmbilical h_umbilical_fit(const CubicTensor& hphi, const Eigen::VectorXd& axis) {
  const int m = hphi.dim();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd e1 = axis.normalized();
  basis.row(0) = e1.transpose();
  int filled = 1;
  for (int k = 0; k < m && filled < m; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(m, k);
    for (int r = 0; r < filled; ++r) v -= v.dot(basis.row(r).transpose()) * basis.row(r).transpose();
    if (v.norm() < 1e-6) continue;
    basis.row(filled++) = v.normalized().transpose();
  }
  const CubicTensor t = hphi.rotated(basis);
  const double lambda = t(0, 0, 0);
  double mu = 0.0;
  for (int j = 1; j < m; ++j) mu += t(0, j, j);
  if (m > 1) mu /= (m - 1);
  double res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double p = 0.0;
        const int zeros = (i == 0) + (j == 0) + (k == 0);
        if (zeros == 3) {
          p = lambda;
        } else if (zeros == 1) {
          // the two non-axis indices must coincide: h(e1, ej) = mu phi ej, h(ej, ej) = mu phi e1
          const int x = i == 0 ? j : i;
          const int y = (i == 0 || j == 0) ? k : j;
          p = x == y ? mu : 0.0;
        }
        res += (t(i, j, k) - p) * (t(i, j, k) - p);
      }
  return {lambda, mu, e1, std::sqrt(res)};
}

std::optional<HUmbilical> h_umbilical_detect(const CubicTensor& hphi, double tol) {
  std::optional<HUmbilical> best;
  for (const auto& cp : critical_points(hphi)) {
    const auto fit = h_umbilical_fit(hphi, cp.y);
    if (!best || fit.residual < best->residual) best = fit;
  }
  if (best && best->residual < tol) return best;
  return std::nullopt;
}

std::optional<HUmbilical> h_umbilical_detect(const SasakiStructure& ambient, const ExponentialImmersion& map,
                                             const Eigen::Vector3d& u, double tol) {
  return h_umbilical_detect(LocalGeometry(ambient, map, u).forms().hphi, tol);
}

}  // namespace cpl
