#include <cmath>

#include <doctest.h>

#include "cpl/errors.hpp"
#include "cpl/geometry.hpp"
#include "cpl/immersion.hpp"
#include "oracle.hpp"

using namespace cpl;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

// Chart curvature of the induced metric, moved to the orthonormal frame.
RiemannTensor fd_riemann(const NamedImmersion& imm, const LocalGeometry& geo) {
  const int m = geo.dim();
  const VectorXd x = geo.frame().point.head(m);
  const auto Rc = oracle::riemann(oracle::induced_metric(imm.ambient, imm.map), x);
  const MatrixXd& C = geo.frame().coeffs;
  RiemannTensor out(m);
  auto at = [&](int i, int j, int k, int l) { return Rc[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)]; };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double s = 0;
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) s += C(a, i) * C(b, j) * C(c, k) * C(d, l) * at(i, j, k, l);
          out.at(a, b, c, d) = s;
        }
  return out;
}

double max_diff(const RiemannTensor& A, const RiemannTensor& B) {
  double w = 0;
  const int m = A.dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) w = std::max(w, std::abs(A(a, b, c, d) - B(a, b, c, d)));
  return w;
}

}  // namespace

TEST_CASE("frame is orthonormal and Legendrian") {
  for (const auto& id : shipped_ids()) {
    const auto imm = make_named(id);
    for (const auto& u : sample_points(imm.map, 5, 2)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      const auto& fr = geo.frame();
      for (int a = 0; a < geo.dim(); ++a)
        for (int b = 0; b < geo.dim(); ++b) {
          CHECK(std::abs(geo.inner(fr.tangent[a], fr.tangent[b]) - (a == b)) < 1e-12);
          CHECK(std::abs(geo.inner(fr.tangent[a], fr.normal[b])) < 1e-12);
        }
      CHECK(geo.eta_defect() < 1e-12);
    }
  }
}

TEST_CASE("intrinsic curvature matches the finite-difference chart oracle") {
  const std::vector<NamedImmersion> cases = {make_named("corollary-flat"), make_named("corollary-nonflat"),
                                             make_named("thm1-nonflat", 2.0, 1.35), make_named("great-sphere")};
  for (const auto& imm : cases) {
    CAPTURE(imm.id);
    for (const auto& u : sample_points(imm.map, 3, 5)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      CHECK(max_diff(geo.intrinsic_riemann(), fd_riemann(imm, geo)) < 1e-7);
    }
  }
}

TEST_CASE("Gauss equation agrees with the intrinsic curvature") {
  for (const auto& imm : {make_named("corollary-flat"), make_named("thm2-flat-3"), make_named("thm1-nonflat", 2.0, 1.35),
                          make_named("thm1-nonflat", -0.5, 0.8)}) {
    CAPTURE(imm.id);
    for (const auto& u : sample_points(imm.map, 10, 3)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      CHECK(max_diff(gauss_riemann(geo.forms().hphi, imm.ambient.epsilon()), geo.intrinsic_riemann()) < 1e-8);
    }
  }
}

TEST_CASE("second fundamental form is symmetric with no xi part") {
  for (const auto& id : shipped_ids()) {
    const auto imm = make_named(id);
    for (const auto& u : sample_points(imm.map, 5, 9)) {
      const auto f = fundamental_forms(imm.ambient, imm.map, u);
      CHECK(f.hphi.symmetry_defect() < 1e-10);
      CHECK(f.hxi.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("xi component of the covariant derivative of h") {
  // <(nabla_X h)(Y, Z), xi> = <h(Y, Z), phi X>
  for (const auto& imm : {make_named("corollary-flat"), make_named("thm1-nonflat", 3.0, 0.7)}) {
    for (const auto& u : sample_points(imm.map, 4, 4)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      const int m = geo.dim();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) CHECK(std::abs(geo.nabla_h()(a, b, c, m) - geo.forms().hphi(b, c, a)) < 1e-9);
    }
  }
}

TEST_CASE("minimal and non-minimal fixtures") {
  const auto gs = make_named("great-sphere");
  for (const auto& u : sample_points(gs.map, 5, 1)) {
    const LocalGeometry geo(gs.ambient, gs.map, u);
    CHECK(geo.forms().H_norm < 1e-12);
    CHECK(geo.norm(geo.tension()) < 1e-12);
  }
  CHECK(mean_curvature_stats(gs.ambient, gs.map).max < 1e-12);
  const auto cf = make_named("corollary-flat");
  const auto st = mean_curvature_stats(cf.ambient, cf.map);
  CHECK(st.min > 0.1);
  CHECK(st.stddev < 1e-10);
}

TEST_CASE("C-parallel and H-umbilical examples") {
  for (const auto& id : shipped_ids()) {
    const auto imm = make_named(id);
    CAPTURE(id);
    CHECK(check_legendrian(imm.ambient, imm.map, {10, 1}) < 1e-12);
    CHECK(c_parallel_residual(imm.ambient, imm.map, {10, 1}) < 1e-6);
  }
  const auto nf = make_named("corollary-nonflat");
  for (const auto& u : sample_points(nf.map, 5, 3)) CHECK(h_umbilical_detect(nf.ambient, nf.map, u).has_value());
  // the flat example is not H-umbilical
  const auto cf = make_named("corollary-flat");
  CHECK_FALSE(h_umbilical_detect(cf.ambient, cf.map, sample_points(cf.map, 1, 3)[0]).has_value());
}

TEST_CASE("sphere factor of the non-flat example has curvature 2") {
  const auto nf = make_named("corollary-nonflat");
  for (const auto& u : sample_points(nf.map, 5, 8)) {
    const LocalGeometry geo(nf.ambient, nf.map, u);
    CHECK(geo.intrinsic_riemann().sectional(1, 2) == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("flat examples are flat") {
  for (const char* id : {"corollary-flat", "thm2-flat-1", "thm2-flat-2", "thm2-flat-3"}) {
    const auto imm = make_named(id);
    for (const auto& u : sample_points(imm.map, 5, 8)) {
      const LocalGeometry geo(imm.ambient, imm.map, u);
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) CHECK(std::abs(gauss_sectional(geo, 1.0, a, b)) < 1e-10);
    }
  }
}
