#include "cpl/classify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "cpl/errors.hpp"

namespace cpl {

namespace {

using V4 = Eigen::Vector4d;

V4 corrected(double eps, const V4& x) {
  const auto r = flat_system_residual(eps, x[0], x[1], x[2], x[3], FlatSystemVariant::lambda_squared_corrected);
  return {r[0], r[1], r[2], r[3]};
}

Eigen::Matrix4d corrected_jacobian(double eps, const V4& x) {
  const double al = 4.0 / (eps + 3.0), A = 1.0 / al;
  const double l = x[0], a = x[1], c = x[2], d = x[3];
  const double l2 = l * l, l3 = l2 * l, l4 = l2 * l2;
  const double P = 3 * l2 - A;
  const double Q = 3 * l4 - 2 * (eps + 1) * l2 + A * A;
  const double S = (a + c) * (a + c) + d * d;
  const double U = 5 * l2 + a * a + c * c - 7 * A + 4;
  const double W = 5 * l2 + d * d + 3 * c * c + a * c - 7 * A + 4;
  Eigen::Matrix4d j;
  j.row(0) << 6 * l * Q + P * (12 * l3 - 4 * (eps + 1) * l) + 4 * l3 * S, 2 * l4 * (a + c), 2 * l4 * (a + c),
      2 * l4 * d;
  j.row(1) << 10 * l * (a + c), U + 2 * a * (a + c), U + 2 * c * (a + c) + d * d, 2 * c * d;
  j.row(2) << 10 * l * d, d * c, d * (6 * c + a), W + 2 * d * d;
  j.row(3) << 2 * l, c, a - 2 * c, 0.0;
  return j;
}

bool newton(double eps, V4& x, const SolverConfig& cfg) {
  V4 f = corrected(eps, x);
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (f.norm() < cfg.newton_tol) return true;
    const Eigen::PartialPivLU<Eigen::Matrix4d> lu(corrected_jacobian(eps, x));
    V4 step = lu.solve(-f);
    if (!step.allFinite()) return false;
    double damp = 1.0;
    V4 xn = x + step, fn = corrected(eps, xn);
    while (!(fn.norm() < f.norm()) && damp > 1e-3) {
      damp *= 0.5;
      xn = x + damp * step;
      fn = corrected(eps, xn);
    }
    if (!(fn.norm() < f.norm())) return f.norm() < 1e-10;
    x = xn;
    f = fn;
    if (x.norm() > 1e4) return false;
  }
  return f.norm() < 1e-10;
}

// Newton only converges linearly onto the degenerate roots at lambda^2 = 1/(3 alpha),
// so the excluded set needs a real margin.
constexpr double kLambdaSqExclusion = 1e-4;

bool admissible(const FlatConstraintMargins& m) {
  return m.lambda_lower > 0 && m.lambda_upper > 0 && m.a_positive > 0 && m.a_upper >= -1e-12 &&
         m.a_ge_d >= -1e-12 && m.d_nonnegative >= 0 && m.a_gt_2c > 0 && m.radicand > 0 && m.lambda_sq_gap > kLambdaSqExclusion;
}

}  // namespace

std::array<double, 4> flat_system_residual(double epsilon, double lambda, double a, double c, double d,
                                           FlatSystemVariant variant) {
  const double al = 4.0 / (epsilon + 3.0), A = 1.0 / al;
  const double l2 = lambda * lambda, l4 = l2 * l2;
  const double lin = variant == FlatSystemVariant::as_printed ? lambda : l2;
  return {
      (3 * l2 - A) * (3 * l4 - 2 * (epsilon + 1) * lin + A * A) + l4 * ((a + c) * (a + c) + d * d),
      (a + c) * (5 * l2 + a * a + c * c - 7 * A + 4) + c * d * d,
      d * (5 * l2 + d * d + 3 * c * c + a * c - 7 * A + 4),
      A + l2 + a * c - c * c,
  };
}

FlatSolveResult solve_flat(double epsilon, const SolverConfig& config) {
  if (!(epsilon > -3.0)) throw DomainError("epsilon must exceed -3");
  if (config.grid < 1 || config.max_iter < 1 || !(config.newton_tol > 0))
    throw ConstraintError("solver grid, iteration count and tolerance must be positive");
  const double al = 4.0 / (epsilon + 3.0), A = 1.0 / al;
  const int n = config.grid;
  auto frac = [n](int i) { return (i + 0.5) / n; };

  std::vector<V4> roots;
  for (int il = 0; il < n; ++il) {
    const double l = -std::sqrt(A) * frac(il);
    const double amax = (l * l - al) / l;
    if (!(amax > 0)) continue;
    for (int ia = 0; ia < n; ++ia) {
      const double a = amax * frac(ia);
      const double clo = -std::sqrt(A + l * l);
      for (int ic = 0; ic < n; ++ic) {
        const double c = clo + (a / 2 - clo) * frac(ic);
        for (int id = 0; id < n; ++id) {
          V4 x(l, a, c, a * frac(id));
          if (!newton(epsilon, x, config)) continue;
          x[3] = std::abs(x[3]);
          if (!admissible(flat_constraint_margins({epsilon, x[0], x[1], x[2], x[3]}))) continue;
          const bool dup = std::any_of(roots.begin(), roots.end(), [&](const V4& r) { return (r - x).norm() < 1e-8; });
          if (!dup) roots.push_back(x);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const V4& p, const V4& q) {
    return std::lexicographical_compare(p.data(), p.data() + 4, q.data(), q.data() + 4);
  });

  FlatSolveResult out;
  const SasakiStructure ambient(3, epsilon);
  for (const auto& x : roots) {
    FlatSolution s;
    s.params = {epsilon, x[0], x[1], x[2], x[3]};
    const auto m = flat_constraint_margins(s.params);
    s.residual_printed = flat_system_residual(epsilon, x[0], x[1], x[2], x[3], FlatSystemVariant::as_printed);
    s.residual_corrected =
        flat_system_residual(epsilon, x[0], x[1], x[2], x[3], FlatSystemVariant::lambda_squared_corrected);
    s.lambda_sq_margin = m.lambda_sq_gap;
    try {
      s.bitension = bitension_max(ambient, build_flat(s.params), {config.oracle_samples, config.seed});
    } catch (const std::exception&) {
      s.bitension = std::nan("");
    }
    (s.bitension < config.oracle_tol ? out.validated : out.algebra_only).push_back(s);
  }
  return out;
}

double nonflat_epsilon_bound() { return (-7.0 + 8.0 * std::sqrt(3.0)) / 13.0; }

std::vector<double> nonflat_mu(double epsilon, MuFormula formula) {
  const bool printed = formula == MuFormula::as_printed;
  if (printed && epsilon == 1.0) return {1.0};
  if (epsilon < nonflat_epsilon_bound() - 1e-12) return {};
  double rad = 13 * epsilon * epsilon + 14 * epsilon - 11;
  if (rad < 0) {
    if (rad < -1e-12) return {};
    rad = 0;
  }
  const double den = 3.0 * (3.0 + epsilon);
  const double coef = printed ? 2.0 : 1.0;
  std::vector<double> out;
  for (double sign : {-1.0, 1.0}) {
    const double m2 = (4 * epsilon + 4 + sign * coef * std::sqrt(rad)) / den;
    if (!(m2 > 0) || (!out.empty() && m2 == out.back())) continue;
    // mu^2 = 1/3 is the minimal member (H = 0), a root only at e = 1
    if (!printed && std::abs(m2 - 1.0 / 3.0) < 1e-12) continue;
    out.push_back(m2);
  }
  return out;
}

double nonflat_bitension(double epsilon, double mu2) {
  const SasakiStructure ambient(3, epsilon);
  return bitension_max(ambient, build_nonflat({epsilon, std::sqrt(mu2)}), {20, 1});
}

ScanResult scan_mu(double epsilon, double mu2_min, double mu2_max, int steps) {
  if (!(mu2_min > 0) || !(mu2_max > mu2_min) || steps < 3)
    throw ConstraintError("scan needs 0 < mu2_min < mu2_max and at least 3 steps");
  ScanResult out;
  for (int i = 0; i < steps; ++i) {
    const double m2 = mu2_min + (mu2_max - mu2_min) * i / (steps - 1);
    out.samples.push_back({m2, nonflat_bitension(epsilon, m2)});
  }
  const auto& s = out.samples;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i].residual < s[i - 1].residual && s[i].residual <= s[i + 1].residual)) continue;
    // golden-section refinement on the bracketing cell
    const double g = (std::sqrt(5.0) - 1) / 2;
    double lo = s[i - 1].mu2, hi = s[i + 1].mu2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = nonflat_bitension(epsilon, x1), f2 = nonflat_bitension(epsilon, x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = nonflat_bitension(epsilon, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = nonflat_bitension(epsilon, x2);
      }
    }
    const ScanSample best = f1 < f2 ? ScanSample{x1, f1} : ScanSample{x2, f2};
    out.minima.push_back(best.residual < s[i].residual ? best : s[i]);
  }
  return out;
}

VerificationReport theorem2_verify(const std::string& which, const Sampling& s, const Tolerances& tol) {
  std::string id;
  if (which == "1" || which == "2" || which == "3")
    id = "thm2-flat-" + which;
  else if (which == "nonflat_plus" || which == "nonflat_minus")
    id = which == "nonflat_plus" ? "thm2-nonflat-plus" : "thm2-nonflat-minus";
  else
    throw DomainError("unknown case '" + which + "'");

  VerificationReport rep;
  const NamedImmersion imm = make_named(id);
  auto guarded = [&](const std::string& check, auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      rep.add_failure(check, id, e.what());
    }
  };
  guarded("legendrian", [&] {
    rep.add_check("legendrian", id, check_legendrian(imm.ambient, imm.map, s), tolerance_for(tol, "legendrian", 1e-12),
                  s.count);
  });
  guarded("c-parallel", [&] {
    rep.add_check("c-parallel", id, c_parallel_residual(imm.ambient, imm.map, s),
                  tolerance_for(tol, "c-parallel", 1e-6), s.count);
  });
  guarded("non-minimal", [&] {
    rep.add_lower_bound("non-minimal", id, mean_curvature_stats(imm.ambient, imm.map, s).min,
                        tolerance_for(tol, "non-minimal", 1e-6), s.count);
  });
  guarded("condition-6H", [&] {
    rep.add_check("condition-6H", id, condition_6H_residual(imm.ambient, imm.map, s),
                  tolerance_for(tol, "condition-6H", 1e-6), s.count);
  });
  if (id.rfind("thm2-flat-", 0) == 0) {
    const FlatFamilyParams p = theorem2_quadruplet(std::stoi(which));
    const auto m = flat_constraint_margins(p);
    rep.add_lower_bound("margin-a-gt-2c", id, m.a_gt_2c, 0.0, 1);
    rep.add_lower_bound("margin-a-ge-d", id, m.a_ge_d, -1e-12, 1);
    rep.add_lower_bound("margin-d-nonnegative", id, m.d_nonnegative, -1e-12, 1);
    rep.add_lower_bound("margin-lambda-gt-minus-one", id, p.lambda + 1.0, 0.0, 1);
    rep.add_lower_bound("margin-lambda-negative", id, -p.lambda, 0.0, 1);
    rep.add_info("lambda", id, p.lambda);
    rep.add_info("a", id, p.a);
    rep.add_info("c", id, p.c);
    rep.add_info("d", id, p.d);
  } else {
    rep.add_info("mu2", id, std::pow(imm.map.terms()[0].frequency[0], -2));
  }
  return rep;
}

}  // namespace cpl
