#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "svrk/csv.hpp"
#include "svrk/linop.hpp"
#include "svrk/norms.hpp"
#include "svrk/superviscosity.hpp"

using svrk::InnerProduct;
using svrk::MatD;
using svrk::Mode;
using svrk::Rational;
using svrk::SuperviscosityConfig;
using svrk::VecD;

namespace {

// 3x3 semi-negative decay generator with a nontrivial nilpotent part; the
// system behind the operator-norm tables.
MatD test_generator() {
  MatD l(3, 3);
  l(0, 0) = -1;
  l(0, 1) = -2;
  l(0, 2) = -2;
  l(1, 1) = -1;
  l(1, 2) = -2;
  l(2, 2) = -1;
  return l;
}

MatD scaled(const MatD& l, double tau) {
  MatD z = l;
  z *= tau;
  return z;
}

double gap(int p, double tau, double mu, double nu, int k_star, Mode mode) {
  const auto poly = svrk::taylor_polynomial(p);
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const SuperviscosityConfig<double> cfg{mu, nu, k_star};
  const MatD defect = svrk::energy_defect_matrix(poly, scaled(test_generator(), tau), cfg, mode, ip);
  return svrk::norm_gap_from_defect(defect, ip);
}

}  // namespace

TEST_CASE("scalar modified generator") {
  // z = -0.1, nu = -1/2, k* = 1: z + nu z* z = -0.1 - 0.005 = -0.105
  MatD z(1, 1);
  z(0, 0) = -0.1;
  const SuperviscosityConfig<double> cfg{0.0, -0.5, 1};
  const MatD zt = svrk::build_modified_generator(z, cfg, InnerProduct<double>::uniform(1));
  CHECK(zt(0, 0) == doctest::Approx(-0.105).epsilon(1e-15));
}

TEST_CASE("zero coefficients collapse to the plain method") {
  const MatD z = scaled(test_generator(), 0.05);
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const SuperviscosityConfig<double> cfg{0.0, 0.0, 2};
  const auto poly = svrk::taylor_polynomial(2);

  const MatD g = svrk::viscosity_term(z, cfg, ip);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == 0.0);
  CHECK(svrk::build_filter(z, cfg, ip) == MatD::identity(3));
  CHECK(svrk::one_step_operator(poly, z, cfg, Mode::Modified, ip) ==
        svrk::one_step_operator(poly, z, cfg, Mode::Plain, ip));
  CHECK(svrk::one_step_operator(poly, z, cfg, Mode::Filtered, ip) ==
        svrk::one_step_operator(poly, z, cfg, Mode::Plain, ip));
}

TEST_CASE("configuration validation") {
  const MatD z = scaled(test_generator(), 0.1);
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  CHECK_THROWS_AS(svrk::viscosity_term(z, SuperviscosityConfig<double>{0.0, -0.5, 0}, ip),
                  std::invalid_argument);
  // a dispersive term needs k* >= 2
  CHECK_THROWS_AS(svrk::viscosity_term(z, SuperviscosityConfig<double>{-0.25, -0.5, 1}, ip),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      svrk::viscosity_term(z, SuperviscosityConfig<double>{0.0, -0.5, 1}, InnerProduct<double>::uniform(2)),
      std::invalid_argument);
}

TEST_CASE("filter deviation scales like tau^(2k*-1)") {
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const SuperviscosityConfig<double> with_mu{-0.25, -0.125, 2};
  const SuperviscosityConfig<double> nu_only{0.0, -0.125, 2};

  auto dev = [&](const SuperviscosityConfig<double>& cfg, double tau) {
    const MatD f = svrk::build_filter(scaled(test_generator(), tau), cfg, ip);
    return svrk::operator_norm_float(f - MatD::identity(3), ip);
  };
  for (double tau : {1.0 / 64, 1.0 / 128}) {
    // mu (Z*)^{k*-1} Z^{k*} dominates: order 3
    CHECK(std::abs(std::log2(dev(with_mu, tau) / dev(with_mu, tau / 2)) - 3.0) < 0.1);
    // nu (Z*)^{k*} Z^{k*} alone: order 4
    CHECK(std::abs(std::log2(dev(nu_only, tau) / dev(nu_only, tau / 2)) - 4.0) < 0.1);
  }
}

TEST_CASE("modified and filtered steps agree to tau^(2k*)") {
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const SuperviscosityConfig<double> cfg{-0.25, -0.125, 2};
  const auto poly = svrk::taylor_polynomial(2);
  auto dist = [&](double tau) {
    const MatD z = scaled(test_generator(), tau);
    const MatD rm = svrk::one_step_operator(poly, z, cfg, Mode::Modified, ip);
    const MatD rf = svrk::one_step_operator(poly, z, cfg, Mode::Filtered, ip);
    return svrk::operator_norm_float(rm - rf, ip);
  };
  for (double tau : {1.0 / 64, 1.0 / 128})
    CHECK(std::log2(dist(tau) / dist(tau / 2)) >= 3.8);
}

TEST_CASE("energy defect assembly matches direct Gram subtraction") {
  // at tau = 0.1 the direct subtraction is still well above roundoff
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const MatD z = scaled(test_generator(), 0.1);
  const auto poly = svrk::taylor_polynomial(2);
  const SuperviscosityConfig<double> cfg{-0.25, -0.125, 2};

  for (Mode mode : {Mode::Plain, Mode::Modified, Mode::Filtered}) {
    const MatD r = svrk::one_step_operator(poly, z, cfg, mode, ip);
    const MatD direct = r.transpose() * r - MatD::identity(3);
    const MatD assembled = svrk::energy_defect_matrix(poly, z, cfg, mode, ip);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(assembled(i, j) == doctest::Approx(direct(i, j)).epsilon(1e-10));
  }
}

TEST_CASE("norm gaps reproduce the reference table cells") {
  // 5-digit non-regression pins on the decay system, uniform weights
  CHECK(svrk::format_sci(gap(1, 0.1, 0, 0, 1, Mode::Plain)) == "1.7182E-02");
  CHECK(svrk::format_sci(gap(1, 0.1, 0, -0.5, 1, Mode::Modified)) == "4.6378E-03");
  CHECK(svrk::format_sci(gap(1, 0.1, 0, -0.5, 1, Mode::Filtered)) == "7.0912E-03");
  CHECK(svrk::format_sci(gap(4, 0.1, 0, 0, 3, Mode::Plain)) == "2.2173E-07");
  const double s = 1.0 / 144;
  CHECK(svrk::format_sci(gap(4, 0.01, s, s, 3, Mode::Modified)) == "1.1129E-13");
  CHECK(svrk::format_sci(gap(4, 0.01, s, s, 3, Mode::Filtered)) == "1.6472E-13");
}

TEST_CASE("matrix-free step matches the dense operator") {
  const InnerProduct<double> ip = InnerProduct<double>::uniform(3);
  const MatD z = scaled(test_generator(), 0.05);
  const svrk::LinearOp op = svrk::dense_linear_op(z, ip);
  const auto poly = svrk::taylor_polynomial(2);
  const SuperviscosityConfig<double> cfg{-0.25, -0.125, 2};
  const VecD u{1.0, -0.7, 0.4};

  const VecD gv = svrk::viscosity_apply(op, cfg, u);
  const VecD gd = svrk::viscosity_term(z, cfg, ip).apply(u);
  for (int i = 0; i < 3; ++i) CHECK(gv[i] == doctest::Approx(gd[i]).epsilon(1e-13));

  const VecD mv = svrk::modified_generator_apply(op, cfg, u);
  const VecD md = svrk::build_modified_generator(z, cfg, ip).apply(u);
  for (int i = 0; i < 3; ++i) CHECK(mv[i] == doctest::Approx(md[i]).epsilon(1e-13));

  for (Mode mode : {Mode::Plain, Mode::Modified, Mode::Filtered}) {
    const VecD lhs = svrk::one_step_apply(poly, op, cfg, mode, u);
    const VecD rhs = svrk::one_step_operator(poly, z, cfg, mode, ip).apply(u);
    for (int i = 0; i < 3; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
  }
}
