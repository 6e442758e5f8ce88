// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpl/classify.hpp"
#include "cpl/geometry.hpp"
#include "cpl/immersion.hpp"
#include "cpl/special_basis.hpp"
#include "oracle.hpp"

using namespace cpl;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Record a measured value against an upper bound.
  void below(const std::string& what, double value, double tol) {
    const bool ok = std::isfinite(value) && value < tol;
    pass = pass && ok;
    detail << "\n    " << (ok ? "ok  " : "FAIL") << ' ' << what << " = " << value << " (< " << tol << ")";
  }
  void above(const std::string& what, double value, double bound) {
    const bool ok = std::isfinite(value) && value > bound;
    pass = pass && ok;
    detail << "\n    " << (ok ? "ok  " : "FAIL") << ' ' << what << " = " << value << " (> " << bound << ")";
  }
  void require(const std::string& what, bool ok) {
    pass = pass && ok;
    detail << "\n    " << (ok ? "ok  " : "FAIL") << ' ' << what;
  }
  void note(const std::string& what, double value) { detail << "\n    info " << what << " = " << value; }
};

VectorXd random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  VectorXd z(8);
  for (auto& v : z) v = N(rng);
  return z.normalized();
}

VectorXd random_tangent(std::mt19937_64& rng, const VectorXd& z) {
  std::normal_distribution<double> N;
  VectorXd x(z.size());
  for (auto& v : x) v = N(rng);
  return x - x.dot(z) * z;
}

void ambient(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> N(0, 0.5);
  const oracle::Stereographic chart{7};
  double curv = 0, ident = 0;
  for (double eps : {-1.0, 1.0, 2.0}) {
    const SasakiStructure S(3, eps);
    for (int t = 0; t < 20; ++t) {
      VectorXd x(7);
      for (auto& v : x) v = N(rng);
      const auto R = oracle::riemann(chart.metric(S), x);
      const VectorXd z = chart.point(x);
      const Eigen::MatrixXd J = chart.jacobian(x);
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
          for (int c = 0; c < 7; ++c) {
            const VectorXd r = S.curvature_raw(z, J.col(a), J.col(b), J.col(c));
            for (int d = 0; d < 7; ++d)
              curv = std::max(curv, std::abs(R[static_cast<std::size_t>(((a * 7 + b) * 7 + c) * 7 + d)] -
                                             S.metric_raw(z, r, J.col(d))));
          }
      // structure identities on a random triple at a random point
      const VectorXd p = random_point(rng);
      const VectorXd X = random_tangent(rng, p), Y = random_tangent(rng, p);
      const VectorXd xi = S.xi_raw(p);
      const VectorXd pX = contact::phi(p, X), pY = contact::phi(p, Y);
      ident = std::max(ident, (contact::phi(p, pX) + X - S.eta_raw(p, X) * xi).norm());
      ident = std::max(ident, std::abs(S.metric_raw(p, pX, pY) - S.metric_raw(p, X, Y) +
                                       S.eta_raw(p, X) * S.eta_raw(p, Y)));
      ident = std::max(ident, std::abs(S.metric_raw(p, xi, xi) - 1.0));
      // d eta(X, Y) = (X eta(Y) - Y eta(X)) / 2 for X, Y frozen in R^8
      const double h = 1e-5;
      auto w = [&](const VectorXd& q, const VectorXd& v) { return -S.alpha() * contact::apply_j(q).dot(v); };
      const double xy = (w((p + h * X).normalized(), Y) - w((p - h * X).normalized(), Y)) / (2 * h);
      const double yx = (w((p + h * Y).normalized(), X) - w((p - h * Y).normalized(), X)) / (2 * h);
      ident = std::max(ident, std::abs(0.5 * (xy - yx) - S.metric_raw(p, X, pY)));
    }
  }
  o.below("max curvature component error, eps in {-1,1,2}", curv, 1e-6);
  o.below("max structure identity residual", ident, 1e-6);
}

void flat_example(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto imm = make_named("corollary-flat");
  const Sampling s{50, 1};
  o.below("Legendrian residual", check_legendrian(imm.ambient, imm.map, s), 1e-12);
  const auto st = mean_curvature_stats(imm.ambient, imm.map, s);
  o.below("sigma(|H|)", st.stddev, 1e-10);
  o.above("min |H|", st.min, 0.1);
  o.below("C-parallel residual", c_parallel_residual(imm.ambient, imm.map, s), 1e-6);
  o.below("max |tau2|", bitension_max(imm.ambient, imm.map, s), 1e-6);
  double K = 0;
  for (const auto& u : sample_points(imm.map, s.count, s.seed)) {
    const LocalGeometry geo(imm.ambient, imm.map, u);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        K = std::max({K, std::abs(gauss_sectional(geo, 1.0, a, b)), std::abs(geo.intrinsic_riemann().sectional(a, b))});
  }
  o.below("max |K_ij|", K, 1e-8);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.below("runtime [s]", secs, 10.0);
}

void nonflat_example(Outcome& o) {
  const Sampling s{50, 1};
  auto tau = [&](double eps, double mu2) {
    const auto imm = make_named("thm1-nonflat", eps, mu2);
    return bitension_max(imm.ambient, imm.map, s);
  };
  o.below("|tau2| at eps=1, mu=1", tau(1.0, 1.0), 1e-6);
  const double mu2 = (12 + 2 * std::sqrt(69.0)) / 15;
  o.below("|tau2| at eps=2, mu2=(12+2 sqrt69)/15", tau(2.0, mu2), 1e-6);
  o.above("|tau2| at eps=2, mu=1 (control)", tau(2.0, 1.0), 1e-2);
  const auto nf = make_named("thm1-nonflat", 1.0, 1.0);
  double sec = 0;
  for (const auto& u : sample_points(nf.map, s.count, s.seed)) {
    const LocalGeometry geo(nf.ambient, nf.map, u);
    sec = std::max(sec, std::abs(geo.intrinsic_riemann().sectional(1, 2) - 2.0));
  }
  o.below("|K(sphere plane) - 2| at eps=1, mu=1", sec, 1e-6);
  for (double m : nonflat_mu(2.0, MuFormula::corrected)) o.note("|tau2| at eps=2, root of the biharmonic equation mu2=" + std::to_string(m), tau(2.0, m));
}

void system_discrepancy(Outcome& o) {
  const auto p = corollary_flat_params();
  const auto rc = flat_system_residual(1.0, p.lambda, p.a, p.c, p.d, FlatSystemVariant::lambda_squared_corrected);
  const auto rp = flat_system_residual(1.0, p.lambda, p.a, p.c, p.d, FlatSystemVariant::as_printed);
  double worst = 0;
  for (double r : rc) worst = std::max(worst, std::abs(r));
  o.below("max corrected residual", worst, 1e-12);
  // independent 40-digit evaluation, fixed before the build
  const double ref = -1.035541752799932702850935573994008395341;
  o.below("|printed first residual - (-1.0356)|", std::abs(rp[0] - ref), 1e-3);
  o.note("printed first residual", rp[0]);
}

void solver(Outcome& o) {
  const auto p = corollary_flat_params();
  const auto r1 = solve_flat(1.0);
  double best = 1e300;
  bool oracle_ok = !r1.validated.empty();
  for (const auto& s : r1.validated) {
    best = std::min(best, std::hypot(std::hypot(s.params.lambda - p.lambda, s.params.a - p.a),
                                     std::hypot(s.params.c - p.c, s.params.d - p.d)));
    oracle_ok = oracle_ok && s.bitension < 1e-6;
  }
  o.below("distance of nearest validated root to the eps=1 example", best, 1e-8);
  o.require("every validated root passes the bitension oracle (" + std::to_string(r1.validated.size()) + " roots)",
            oracle_ok);
  const auto r2 = solve_flat(-0.5);
  o.require("eps=-0.5 validated set is empty (" + std::to_string(r2.validated.size()) + " roots)", r2.validated.empty());
}

void classification_examples(Outcome& o) {
  for (const char* w : {"1", "2", "3", "nonflat_plus", "nonflat_minus"}) {
    const auto rep = theorem2_verify(w, {50, 1});
    // lower bounds come back negated, so every record reads residual < tolerance
    for (const auto& c : rep.checks()) o.below(c.immersion + " " + c.check, c.residual, c.tolerance);
    o.require(std::string("case ") + w + " produced all checks", rep.find("condition-6H") && rep.find("legendrian") &&
                                                                     rep.find("c-parallel") && rep.find("non-minimal"));
  }
}

void special_basis(Outcome& o) {
  const auto rep = identity_checks(make_named("corollary-flat"), {50, 1});
  for (const char* c : {"c-parallel-precondition", "shape-pattern", "multiplier", "jacobian-det", "corrected-identity",
                        "r-phi-h"}) {
    const auto* r = rep.find(c);
    if (!r) {
      o.require(std::string(c) + " present", false);
      continue;
    }
    o.below(std::string(c) + (std::string(c) == "jacobian-det" ? " vs 36(l2-l1)(l3-l1), relative" : ""), r->residual,
            r->tolerance);
  }
  if (const auto* r = rep.find("jacobian-det-expanded")) o.note("jacobian-det vs 36(2l2-l1)(2l3-l1), relative", r->residual);
}

void decomposition(Outcome& o) {
  double reasm = 0, cpar = 0;
  for (const char* id : {"corollary-flat", "thm2-flat-1", "thm2-flat-2", "thm2-flat-3"}) {
    const auto imm = make_named(id);
    const auto pd = product_decomposition(id);
    for (const auto& u : sample_points(imm.map, 50, 1))
      reasm = std::max(reasm, (reassemble(pd, u) - imm.map.value(u)).norm());
    const SasakiStructure S5(2, 1.0);
    cpar = std::max({cpar, c_parallel_residual(S5, pd.surface, {50, 1}), check_legendrian(S5, pd.surface, {50, 1})});
  }
  o.below("product reassembly error", reasm, 1e-12);
  o.below("S^5 factor surfaces, C-parallel and Legendrian residual", cpar, 1e-6);
  const double e = closedness_epsilon(1, 2);
  o.below("|eps(1,2) - 5/9|", std::abs(e - 5.0 / 9.0), 1e-12);
  const auto roots = nonflat_mu(e);
  double rerr = roots.size() == 2 ? std::max(std::abs(roots[0] - 5.0 / 12.0), std::abs(roots[1] - 0.75)) : INFINITY;
  o.below("mu2 roots vs {5/12, 3/4}", rerr, 1e-12);
  const auto curve = legendre_curve(std::sqrt(0.75));
  const double T = 4 * std::sqrt(3.0) * std::numbers::pi;
  o.below("|z(4 sqrt3 pi) - z(0)|", (curve.value(Vector3d(T, 0, 0)) - curve.value(Vector3d::Zero())).norm(), 1e-9);
  const double b = nonflat_epsilon_bound();
  o.below("discriminant at the eps bound", std::abs(13 * b * b + 14 * b - 11), 1e-12);
}

void properties(Outcome& o) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> N;
  double sym = 0, axi = 0, xilaw = 0, gauss = 0, dom = -INFINITY;
  for (const auto& id : shipped_ids()) {
    const auto imm = make_named(id);
    const auto pts = sample_points(imm.map, 20, 1);
    for (const auto& u : pts) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      const auto& f = geo.forms();
      const int m = geo.dim();
      sym = std::max(sym, f.hphi.symmetry_defect());
      axi = std::max(axi, f.hxi.cwiseAbs().maxCoeff());
      const auto R = gauss_riemann(f.hphi, imm.ambient.epsilon());
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) {
            xilaw = std::max(xilaw, std::abs(geo.nabla_h()(a, b, c, m) - f.hphi(b, c, a)));
            for (int d = 0; d < m; ++d) gauss = std::max(gauss, std::abs(R(a, b, c, d) - geo.intrinsic_riemann()(a, b, c, d)));
          }
    }
    // the great sphere has h = 0, nothing to maximize
    if (id == "great-sphere") continue;
    const auto h = fundamental_forms(imm.ambient, imm.map, pts.front()).hphi;
    const auto M = maximize_cubic(h);
    for (int t = 0; t < 100000; ++t) {
      VectorXd y(3);
      for (auto& v : y) v = N(rng);
      dom = std::max(dom, h.value(y.normalized()) - M.value);
    }
  }
  o.below("h total symmetry defect", sym, 1e-10);
  o.below("max |A_xi|", axi, 1e-10);
  o.below("xi-component law", xilaw, 1e-9);
  o.below("Gauss vs intrinsic curvature", gauss, 1e-8);
  o.below("max over 1e5 random directions minus optimizer value", dom, 1e-12);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"ambient curvature and structure identities", ambient},
      {"flat example", flat_example},
      {"non-flat family biharmonicity", nonflat_example},
      {"flat system discrepancy", system_discrepancy},
      {"flat solver", solver},
      {"eps = 1 classification examples", classification_examples},
      {"special basis on the flat example", special_basis},
      {"product decomposition and closedness", decomposition},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(std::string("exception: ") + e.what(), false);
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
