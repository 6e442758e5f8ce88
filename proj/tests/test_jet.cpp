#include <cmath>

#include <doctest.h>

#include "cpl/jet.hpp"

using cpl::Jet;
using cpl::MultiIndex;

namespace {

// Jet of x -> x_var around the point `at`.
Jet coordinate(int var, double at) {
  Jet j = Jet::constant(at);
  MultiIndex m;
  m.k[static_cast<std::size_t>(var)] = 1;
  j.set_coeff(m, 1.0);
  return j;
}

}  // namespace

TEST_CASE("products follow the Leibniz rule") {
  const Jet x = coordinate(0, 0.7), y = coordinate(1, -0.3);
  const Jet p = x * x * y;  // x^2 y
  CHECK(p.value() == doctest::Approx(0.49 * -0.3));
  CHECK(p.derivative({1, 0, 0}) == doctest::Approx(2 * 0.7 * -0.3));
  CHECK(p.derivative({2, 1, 0}) == doctest::Approx(2.0));
  CHECK(p.derivative({0, 2, 0}) == doctest::Approx(0.0));
}

TEST_CASE("reciprocal and sqrt match closed-form derivatives") {
  const double a = 1.3;
  const Jet x = coordinate(2, a);
  const Jet r = reciprocal(x);
  for (int k = 0; k <= 4; ++k) {
    // d^k/dx^k 1/x = (-1)^k k! / x^(k+1)
    const double fact = std::tgamma(k + 1.0);
    CHECK(r.derivative({0, 0, k}) == doctest::Approx(std::pow(-1.0, k) * fact / std::pow(a, k + 1)).epsilon(1e-12));
  }
  const Jet s = sqrt(x);
  CHECK(s.derivative({0, 0, 1}) == doctest::Approx(0.5 / std::sqrt(a)));
  CHECK(s.derivative({0, 0, 3}) == doctest::Approx(3.0 / 8.0 * std::pow(a, -2.5)));
  const Jet back = s * s;
  CHECK(back.derivative({0, 0, 4}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quotient of mixed jets") {
  const Jet x = coordinate(0, 0.4), y = coordinate(1, 0.9);
  const Jet q = x / (y + 1.0);  // x / (1 + y)
  CHECK(q.derivative({1, 1, 0}) == doctest::Approx(-1.0 / (1.9 * 1.9)));
  CHECK(q.derivative({1, 2, 0}) == doctest::Approx(2.0 / std::pow(1.9, 3)));
}

TEST_CASE("partial lowers the order and shifts coefficients") {
  const Jet x = coordinate(0, 0.2), y = coordinate(1, 0.5);
  const Jet f = x * x * x * y;
  const Jet fx = f.partial(0);
  CHECK(fx.order() == f.order() - 1);
  CHECK(fx.value() == doctest::Approx(3 * 0.04 * 0.5));
  CHECK(fx.derivative({1, 1, 0}) == doctest::Approx(6 * 0.2));
}

TEST_CASE("order tracking takes the minimum") {
  const Jet a = coordinate(0, 1.0).truncated(2);
  const Jet b = coordinate(1, 1.0);
  CHECK((a * b).order() == 2);
  CHECK((a + b).order() == 2);
  CHECK(sqrt(b).order() == b.order());
}
