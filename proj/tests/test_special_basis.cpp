#include <cmath>
#include <random>

#include <Eigen/QR>
#include <doctest.h>

#include "cpl/errors.hpp"
#include "cpl/geometry.hpp"
#include "cpl/special_basis.hpp"

using namespace cpl;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  MatrixXd A(3, 3);
  for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = N(rng);
  Eigen::HouseholderQR<MatrixXd> qr(A);
  return qr.householderQ();
}

VectorXd random_unit(std::mt19937_64& rng, int m = 3) {
  std::normal_distribution<double> N;
  VectorXd y(m);
  for (auto& v : y) v = N(rng);
  return y.normalized();
}

// Normal form with distinct lambda2, lambda3 whose cubic form peaks at e1.
CubicTensor generic_form() { return shape_normal_form(2.0, 0.3, -0.6, 0.4, 0.25, -0.2, 0.5); }

}  // namespace

TEST_CASE("cubic form basics") {
  const auto h = generic_form();
  CHECK(cubic_form(h, VectorXd::Unit(3, 0)) == doctest::Approx(2.0));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const VectorXd y = random_unit(rng);
    CHECK(cubic_form(h, -y) == doctest::Approx(-cubic_form(h, y)));
  }
  CHECK_THROWS_AS(cubic_form(h, VectorXd::Constant(3, 1.0)), DomainError);
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(4);
  const auto h = generic_form().rotated(random_rotation(rng));
  for (int t = 0; t < 10; ++t) {
    VectorXd y(3);
    for (auto& v : y) v = std::uniform_real_distribution<>(-1, 1)(rng);
    const VectorXd g = h.gradient(y);
    for (int i = 0; i < 3; ++i) {
      const VectorXd e = VectorXd::Unit(3, i) * 1e-6;
      CHECK(std::abs((h.value(y + e) - h.value(y - e)) / 2e-6 - g[i]) < 1e-7);
    }
  }
}

TEST_CASE("maximizer dominates random directions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = generic_form().rotated(random_rotation(rng));
    const auto M = maximize_cubic(h);
    CHECK(M.residual < 1e-9);
    CHECK(std::abs(M.X1.norm() - 1) < 1e-12);
    CHECK(M.multiplier == doctest::Approx(1.5 * M.value).epsilon(1e-12));
    double best = -1e300;
    for (int t = 0; t < 100000; ++t) best = std::max(best, h.value(random_unit(rng)));
    CHECK(best <= M.value + 1e-12);
    CHECK(best > M.value - 1e-3);
  }
}

TEST_CASE("degenerate tensor is rejected") {
  CHECK_THROWS_AS(maximize_cubic(CubicTensor(3)), DegenerateError);
}

TEST_CASE("adapted basis recovers a rotated normal form") {
  std::mt19937_64 rng(12);
  const auto h0 = generic_form();
  const auto B0 = adapted_basis(h0);
  CHECK(B0.lambda1 == doctest::Approx(2.0));
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd Q = random_rotation(rng);
    const auto B = adapted_basis(h0.rotated(Q));
    CHECK(B.pattern_residual < 1e-20);
    CHECK_FALSE(B.gap_flag);
    CHECK(B.lambda1 == doctest::Approx(B0.lambda1).epsilon(1e-12));
    CHECK(B.lambda2 == doctest::Approx(B0.lambda2).epsilon(1e-12));
    CHECK(B.lambda3 == doctest::Approx(B0.lambda3).epsilon(1e-12));
    for (auto [x, y] : {std::pair{B.a, B0.a}, {B.b, B0.b}, {B.c, B0.c}, {B.d, B0.d}}) CHECK(std::abs(x - y) < 1e-12);
    CHECK(B.b >= 0);
    CHECK(B.a >= 0);
    CHECK(std::abs(B.X1.dot(B.X2)) < 1e-12);
    CHECK(std::abs(B.X1.dot(B.X3)) < 1e-12);
    CHECK(std::abs(B.X2.dot(B.X3)) < 1e-12);
  }
}

TEST_CASE("sign flips act on (a, c) and (b, d)") {
  const auto h = generic_form();
  // basis rows X1, -X2, X3
  MatrixXd F2 = MatrixXd::Identity(3, 3);
  F2(1, 1) = -1;
  const auto r2 = h.rotated(F2);
  CHECK(r2(1, 1, 1) == doctest::Approx(-0.4));  // a
  CHECK(r2(1, 2, 2) == doctest::Approx(0.2));   // c
  CHECK(r2(1, 1, 2) == doctest::Approx(0.25));  // b unchanged
  MatrixXd F3 = MatrixXd::Identity(3, 3);
  F3(2, 2) = -1;
  const auto r3 = h.rotated(F3);
  CHECK(r3(1, 1, 2) == doctest::Approx(-0.25));  // b
  CHECK(r3(2, 2, 2) == doctest::Approx(-0.5));   // d
  CHECK(r3(1, 1, 1) == doctest::Approx(0.4));    // a unchanged
  // canonicalization undoes both
  for (const auto& r : {r2, r3}) {
    const auto B = adapted_basis(r);
    CHECK(B.a == doctest::Approx(0.4));
    CHECK(B.b == doctest::Approx(0.25));
  }
}

TEST_CASE("Lagrange determinant expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = generic_form().rotated(random_rotation(rng));
    const auto B = adapted_basis(h);
    const double det = lagrange_determinant(h, B.X1, B.multiplier);
    CHECK(det == doctest::Approx(lagrange_det_expanded(B)).epsilon(1e-10));
  }
  // the often quoted 36 (l2 - l1)(l3 - l1) is a different number
  const auto B = adapted_basis(generic_form());
  CHECK(std::abs(lagrange_det_quoted(B) - lagrange_determinant(generic_form(), B.X1, B.multiplier)) > 1.0);
}

TEST_CASE("case l1 = 2 l2 = -l3 with constant h is semi-parallel") {
  for (double eps : {-1.0, 1.0, 2.0, 5.0}) {
    const double l1 = std::sqrt(2 * (eps + 3)) / 4, b = std::sqrt(6 * (eps + 3)) / 8;
    const auto h = shape_normal_form(l1, l1 / 2, -l1, 0, b, 0, 0);
    const auto B = adapted_basis(h);
    CHECK(B.lambda1 == doctest::Approx(l1).epsilon(1e-12));
    CHECK(B.lambda2 == doctest::Approx(l1 / 2).epsilon(1e-12));
    CHECK(B.lambda3 == doctest::Approx(-l1).epsilon(1e-12));
    CHECK(B.b == doctest::Approx(b).epsilon(1e-12));
    CHECK(semi_parallel_residual(h, gauss_riemann(h, eps)) < 1e-12);
    // perturbing b away from its value breaks it
    const auto h2 = shape_normal_form(l1, l1 / 2, -l1, 0, 1.2 * b, 0, 0);
    CHECK(semi_parallel_residual(h2, gauss_riemann(h2, eps)) > 1e-3);
  }
}

TEST_CASE("k polynomial") {
  CHECK(k_polynomial(0, 0, 1) == 0);
  CHECK(k_polynomial(1, 1, 1) == doctest::Approx(8 - 6 + (1 - 3) + 1));
  CHECK(k_polynomial(2, -0.5, 0.75) ==
        doctest::Approx(8 * 0.0625 - 6 * 2 * -0.125 + (4 - 2.25) * 0.25 + 2 * 0.75 * -0.5));
}

TEST_CASE("identity checks on the C-parallel examples") {
  for (const char* id : {"corollary-flat", "thm2-flat-1", "thm2-flat-2", "thm2-flat-3", "corollary-nonflat",
                         "thm2-nonflat-plus", "thm2-nonflat-minus"}) {
    CAPTURE(id);
    const auto rep = identity_checks(make_named(id), {10, 1});
    for (const char* c : {"c-parallel-precondition", "shape-pattern", "multiplier", "jacobian-det-expanded",
                          "corrected-identity", "lambda-inequalities", "r-phi-h"}) {
      CAPTURE(c);
      REQUIRE(rep.find(c) != nullptr);
      CHECK(rep.find(c)->pass);
    }
    REQUIRE(rep.find_info("uncorrected-identity") != nullptr);
  }
  // the flat example has lambda2 = lambda3 everywhere
  const auto rep = identity_checks(make_named("corollary-flat"), {10, 1});
  CHECK(rep.find_info("gap-flagged")->value == 10);
  CHECK(rep.find_info("lambda1")->value == doctest::Approx(4 / std::sqrt(5.0)).epsilon(1e-10));
  CHECK(rep.find_info("lambda2")->value == doctest::Approx(-1 / std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("identity checks refuse a curve") {
  NamedImmersion curve{"curve", legendre_curve(1.0), SasakiStructure(1, 1.0)};
  const auto r2 = identity_checks(curve, {5, 1});
  CHECK_FALSE(r2.all_pass());
}
