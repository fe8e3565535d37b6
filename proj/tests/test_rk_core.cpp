#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "svrk/rk_core.hpp"

using svrk::ButcherTableau;
using svrk::MatQ;
using svrk::Rational;
using svrk::VecD;
using svrk::VecQ;

TEST_CASE("built-in tableaux validate and have the advertised orders") {
  const auto heun = svrk::heun2();
  CHECK(heun.stages() == 2);
  auto rep = svrk::linear_order_check(heun, 2);
  CHECK(rep.satisfied);
  REQUIRE(rep.alpha.size() == 3);
  CHECK(rep.alpha[0] == Rational(1));
  CHECK(rep.alpha[1] == Rational(1));
  CHECK(rep.alpha[2] == Rational(1, 2));
  CHECK_THROWS_AS(svrk::linear_order_check(heun, 3), std::invalid_argument);  // p > stages

  const auto rkf = svrk::fehlberg5();
  CHECK(rkf.stages() == 6);
  rep = svrk::linear_order_check(rkf, 5);
  CHECK(rep.satisfied);
  for (int k = 0; k <= 5; ++k) CHECK(rep.alpha[k] == svrk::factorial_reciprocal(k));
  CHECK(rep.alpha[6] == Rational(1, 2080));  // not 1/720: order 5, not 6
  CHECK_FALSE(svrk::linear_order_check(rkf, 6).satisfied);
}

TEST_CASE("induced_polynomial gates on the order conditions") {
  const auto poly = svrk::induced_polynomial(svrk::fehlberg5(), 5);
  CHECK(poly.order == 5);
  CHECK(poly.stage_count() == 6);
  CHECK(poly.coeffs[6] == Rational(1, 2080));
  CHECK_THROWS_AS(svrk::induced_polynomial(svrk::fehlberg5(), 6), std::invalid_argument);
  CHECK_THROWS_AS(svrk::induced_polynomial(svrk::heun2(), 3), std::invalid_argument);
}

TEST_CASE("validate_tableau rejects structural defects") {
  auto t = svrk::heun2();
  t.A(0, 1) = Rational(1);  // upper-triangular entry
  CHECK_THROWS_AS(svrk::validate_tableau(t), std::invalid_argument);

  t = svrk::heun2();
  t.b[0] = Rational(1);  // weights sum to 3/2
  CHECK_THROWS_AS(svrk::validate_tableau(t), std::invalid_argument);

  t = svrk::heun2();
  t.c[1] = Rational(1, 2);  // row sum is 1
  CHECK_THROWS_AS(svrk::validate_tableau(t), std::invalid_argument);
}

TEST_CASE("tableau JSON round trip") {
  const std::string text = R"({
    "A": [["0", "0"], ["1", "0"]],
    "b": ["1/2", "1/2"],
    "c": ["0", "1"]
  })";
  const auto t = svrk::tableau_from_json(text);
  CHECK(t.A == svrk::heun2().A);
  CHECK(t.b == svrk::heun2().b);
  CHECK(t.c == svrk::heun2().c);

  CHECK_THROWS(svrk::tableau_from_json("{"));
  CHECK_THROWS(svrk::tableau_from_json(R"({"A": [["0"]], "b": ["1"]})"));  // missing c
  CHECK_THROWS_AS(svrk::tableau_from_json(R"({
    "A": [["0", "0"], ["1", "0"]], "b": ["1", "1"], "c": ["0", "1"]
  })"),
                  std::invalid_argument);  // fails validation
}

TEST_CASE("linear step reproduces the truncated exponential") {
  // 4-term expansion at z = -0.1: 1 - 1/10 + 1/200 - 1/6000 + 1/240000 = 0.9048375
  svrk::LinearStepConfig cfg;
  cfg.poly = svrk::taylor_polynomial(4);
  cfg.tau = 0.1;
  cfg.generator = svrk::MatD(1, 1);
  cfg.generator(0, 0) = -1.0;
  const VecD out = svrk::linear_step(cfg, VecD{1.0});
  CHECK(out[0] == doctest::Approx(0.9048375).epsilon(1e-15));

  cfg.tau = 0;
  CHECK_THROWS_AS(svrk::linear_step(cfg, VecD{1.0}), std::invalid_argument);
}

TEST_CASE("nonlinear step collapses to the stability polynomial on linear systems") {
  svrk::MatD L(3, 3);
  L(0, 0) = -1;
  L(0, 1) = 0.3;
  L(1, 1) = -2;
  L(1, 2) = -0.4;
  L(2, 0) = 0.1;
  L(2, 2) = -0.5;
  const VecD u{1.0, -0.5, 2.0};
  const double tau = 0.02;

  for (const auto& [tab, p] : {std::pair{svrk::heun2(), 2}, std::pair{svrk::fehlberg5(), 5}}) {
    const auto linear = svrk::linear_step({svrk::induced_polynomial(tab, p), tau, L}, u);
    const auto nonlinear =
        svrk::nonlinear_step(tab, [&](const VecD& v) { return L.apply(v); }, tau, u);
    for (int i = 0; i < 3; ++i) CHECK(nonlinear[i] == doctest::Approx(linear[i]).epsilon(1e-12));
  }
}

TEST_CASE("nonlinear step reports non-finite stages") {
  const auto blowup = [](const VecD&) {
    return VecD{std::numeric_limits<double>::infinity()};
  };
  CHECK_THROWS_AS(svrk::nonlinear_step(svrk::heun2(), blowup, 0.1, VecD{1.0}), svrk::StepFailure);
}

TEST_CASE("observed convergence order matches the linear order") {
  // u' = L u with a defective eigenvalue; errors against expm via fine reference
  svrk::MatD L(2, 2);
  L(0, 0) = -1;
  L(0, 1) = 1;
  L(1, 1) = -1;
  const VecD u0{1.0, 1.0};
  const double T = 1.0;
  // exact: e^{-t} (1 + t, 1)
  const VecD exact{std::exp(-T) * 2.0, std::exp(-T)};

  for (int p : {2, 3, 4}) {
    const auto poly = svrk::taylor_polynomial(p);
    double prev_err = 0;
    double order = 0;
    for (int lev = 0; lev < 4; ++lev) {
      const long n = 40L << lev;
      const double tau = T / static_cast<double>(n);
      VecD u = u0;
      for (long i = 0; i < n; ++i) u = svrk::linear_step({poly, tau, L}, u);
      const double err = std::hypot(u[0] - exact[0], u[1] - exact[1]);
      if (lev > 0) order = std::log2(prev_err / err);
      prev_err = err;
    }
    CHECK(order == doctest::Approx(static_cast<double>(p)).epsilon(0.02));
  }
}

TEST_CASE("step schedules land exactly on T") {
  auto s = svrk::step_schedule(1.0, 0.1);
  CHECK(s.full_steps == 10);
  CHECK(s.remainder == 0.0);

  s = svrk::step_schedule(1.0, 0.3);
  CHECK(s.full_steps == 3);
  CHECK(s.remainder == doctest::Approx(0.1).epsilon(1e-12));

  s = svrk::step_schedule(0.0, 0.5);
  CHECK(s.full_steps == 0);
  CHECK(s.remainder == 0.0);

  // tau slightly above a divisor of T must not produce a sliver step
  s = svrk::step_schedule(2.0, 2.0 / 3.0);
  CHECK(s.full_steps == 3);
  CHECK(s.remainder == 0.0);

  CHECK_THROWS_AS(svrk::step_schedule(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(svrk::step_schedule(-1.0, 0.1), std::invalid_argument);
}
