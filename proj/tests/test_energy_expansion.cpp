#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "svrk/energy_expansion.hpp"
#include "svrk/matrix.hpp"
#include "svrk/stability_polynomial.hpp"

using svrk::EnergyExpansion;
using svrk::InnerProduct;
using svrk::MatQ;
using svrk::Rational;
using svrk::VecQ;

TEST_CASE("order 1 normal form by hand") {
  // ||(I+Z)u||^2 - ||u||^2 = P(1,1) + 2P(1,0) = P(1,1) - Q(0,0)
  const auto exp = svrk::expand_energy(svrk::taylor_polynomial(1));
  CHECK(exp.beta.at(1) == Rational(1));
  REQUIRE(exp.gamma.rows() == 1);
  CHECK(exp.gamma(0, 0) == Rational(-1));
  CHECK(exp.k_star == 1);
}

TEST_CASE("order 2 normal form by hand") {
  // Seed 2P(1,0) + P(1,1) + P(2,0) + P(2,1) + (1/4)P(2,2); the P(2,0) rewrite
  // cancels P(1,1) and leaves (1/4)P(2,2) - Q(0,0) - Q(1,0) - (1/2)Q(1,1).
  const auto exp = svrk::expand_energy(svrk::taylor_polynomial(2));
  CHECK(exp.beta.at(1) == Rational(0));
  CHECK(exp.beta.at(2) == Rational(1, 4));
  REQUIRE(exp.gamma.rows() == 2);
  CHECK(exp.gamma(0, 0) == Rational(-1));
  CHECK(exp.gamma(1, 0) == Rational(-1, 2));
  CHECK(exp.gamma(0, 1) == Rational(-1, 2));
  CHECK(exp.gamma(1, 1) == Rational(-1, 2));
  CHECK(exp.k_star == 2);
}

TEST_CASE("leading index is ceil((p+1)/2)") {
  const int expected[] = {0, 1, 2, 2, 3, 3, 4};
  for (int p = 1; p <= 6; ++p) {
    const auto exp = svrk::expand_energy(svrk::taylor_polynomial(p));
    CHECK(svrk::leading_index(exp, p) == expected[p]);
    for (int k = 1; k < exp.k_star; ++k) CHECK(exp.beta.at(k) == Rational(0));
    CHECK(exp.gamma.is_symmetric());
  }
}

TEST_CASE("leading_index rejects a mismatched expansion") {
  auto exp = svrk::expand_energy(svrk::taylor_polynomial(3));
  exp.k_star = 1;
  CHECK_THROWS_AS(svrk::leading_index(exp, 3), std::logic_error);
}

TEST_CASE("critical coefficients p = 1..6") {
  const Rational nu0[] = {Rational(0),        Rational(-1, 2),  Rational(-1, 8),
                          Rational(1, 24),    Rational(1, 144), Rational(-1, 720),
                          Rational(-1, 5760)};
  for (int p = 1; p <= 6; ++p) {
    const auto exp = svrk::expand_energy(svrk::taylor_polynomial(p));
    const auto cb = svrk::critical_bounds(exp, p);
    CHECK(cb.nu0 == nu0[p]);
    CHECK(cb.mu0.has_value() == (p % 2 == 0));
  }
}

TEST_CASE("critical dispersive coefficients for even p") {
  const auto mu2 = svrk::critical_bounds(svrk::expand_energy(svrk::taylor_polynomial(2)), 2);
  const auto mu4 = svrk::critical_bounds(svrk::expand_energy(svrk::taylor_polynomial(4)), 4);
  const auto mu6 = svrk::critical_bounds(svrk::expand_energy(svrk::taylor_polynomial(6)), 6);
  CHECK(*mu2.mu0 == Rational(-1, 4));
  CHECK(*mu4.mu0 == Rational(1, 144));
  CHECK(*mu6.mu0 == Rational(-1, 4800));
}

TEST_CASE("critical_bounds rejects an indefinite leading block") {
  auto exp = svrk::expand_energy(svrk::taylor_polynomial(2));
  exp.leading_submatrix(0, 0) = Rational(1);  // -A loses positive definiteness
  CHECK_THROWS_AS(svrk::critical_bounds(exp, 2), std::invalid_argument);
}

TEST_CASE("expand_energy validates its input") {
  svrk::StabilityPolynomial bad;
  bad.coeffs = {Rational(1), Rational(1, 2)};
  bad.order = 1;
  CHECK_THROWS_AS(svrk::expand_energy(bad), std::invalid_argument);
}

TEST_CASE("normal form reproduces the energy change exactly") {
  // The rewrite is an algebraic identity: for any square Z, any u and any
  // positive weights, ||R(Z)u||^2 - ||u||^2 equals the beta/gamma form with
  // [v, w] = -<Zv, w> - <v, Zw> expanded back into plain inner products.
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> wnum(1, 5);

  int trials = 0;
  for (int p = 1; p <= 5; ++p) {
    const auto poly = svrk::taylor_polynomial(p);
    const auto exp = svrk::expand_energy(poly);
    const int s = poly.stage_count();
    for (int trial = 0; trial < 10; ++trial, ++trials) {
      const int n = 3;
      MatQ z(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Rational(num(rng), den(rng));
      VecQ u(n);
      for (int i = 0; i < n; ++i) u[i] = Rational(num(rng), den(rng));
      VecQ w(n);
      for (int i = 0; i < n; ++i) w[i] = Rational(wnum(rng), den(rng));
      const InnerProduct<Rational> ip(w);

      VecQ ru = svrk::polynomial_apply(poly, z, u);
      Rational lhs = ip.dot(ru, ru) - ip.dot(u, u);

      std::vector<VecQ> pow(s + 2);
      pow[0] = u;
      for (int k = 1; k <= s + 1; ++k) pow[k] = z.apply(pow[k - 1]);

      Rational rhs(0);
      for (int k = 1; k <= s; ++k) rhs += exp.beta.at(k) * ip.dot(pow[k], pow[k]);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
          if (exp.gamma(i, j).is_zero()) continue;
          const Rational q = -ip.dot(pow[i + 1], pow[j]) - ip.dot(pow[i], pow[j + 1]);
          rhs += exp.gamma(i, j) * q;
        }
      CHECK(lhs == rhs);
    }
  }
  CHECK(trials == 50);
}

TEST_CASE("json rendering carries the critical coefficients") {
  const std::string j = svrk::expansion_to_json(svrk::expand_energy(svrk::taylor_polynomial(2)));
  CHECK(j.find("\"nu0\": \"-1/8\"") != std::string::npos);
  CHECK(j.find("\"mu0\": \"-1/4\"") != std::string::npos);
  CHECK(j.find("\"k_star\": 2") != std::string::npos);
}
