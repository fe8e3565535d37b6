#include "svrk/rk_core.hpp"

#include <cmath>

#include <json.hpp>

namespace svrk {

void validate_tableau(const ButcherTableau& tab) {
  const int s = tab.stages();
  if (s < 1) throw std::invalid_argument("tableau needs at least one stage");
  if (tab.A.rows() != s || tab.A.cols() != s || static_cast<int>(tab.c.size()) != s)
    throw std::invalid_argument("tableau dimensions disagree");
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (!tab.A(i, j).is_zero())
        throw std::invalid_argument("explicit tableau must be strictly lower triangular");
  Rational bsum(0);
  for (const auto& bi : tab.b) bsum += bi;
  if (bsum != Rational(1)) throw std::invalid_argument("tableau weights must sum to 1");
  for (int i = 0; i < s; ++i) {
    Rational rsum(0);
    for (int j = 0; j < s; ++j) rsum += tab.A(i, j);
    if (rsum != tab.c[i]) throw std::invalid_argument("tableau abscissae must equal row sums");
  }
}

ButcherTableau heun2() {
  ButcherTableau t;
  t.A = MatQ(2, 2);
  t.A(1, 0) = Rational(1);
  t.b = {Rational(1, 2), Rational(1, 2)};
  t.c = {Rational(0), Rational(1)};
  validate_tableau(t);
  return t;
}

ButcherTableau fehlberg5() {
  ButcherTableau t;
  t.A = MatQ(6, 6);
  t.A(1, 0) = Rational(1, 4);
  t.A(2, 0) = Rational(3, 32);
  t.A(2, 1) = Rational(9, 32);
  t.A(3, 0) = Rational(1932, 2197);
  t.A(3, 1) = Rational(-7200, 2197);
  t.A(3, 2) = Rational(7296, 2197);
  t.A(4, 0) = Rational(439, 216);
  t.A(4, 1) = Rational(-8);
  t.A(4, 2) = Rational(3680, 513);
  t.A(4, 3) = Rational(-845, 4104);
  t.A(5, 0) = Rational(-8, 27);
  t.A(5, 1) = Rational(2);
  t.A(5, 2) = Rational(-3544, 2565);
  t.A(5, 3) = Rational(1859, 4104);
  t.A(5, 4) = Rational(-11, 40);
  t.b = {Rational(16, 135), Rational(0),      Rational(6656, 12825),
         Rational(28561, 56430), Rational(-9, 50), Rational(2, 55)};
  t.c = {Rational(0), Rational(1, 4), Rational(3, 8), Rational(12, 13), Rational(1), Rational(1, 2)};
  validate_tableau(t);
  return t;
}

ButcherTableau tableau_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto& ja = j.at("A");
  const int s = static_cast<int>(ja.size());
  ButcherTableau t;
  t.A = MatQ(s, s);
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(ja[i].size()) != s) throw std::invalid_argument("tableau JSON: A must be square");
    for (int c = 0; c < s; ++c) t.A(i, c) = Rational::parse(ja[i][c].get<std::string>());
  }
  for (const auto& v : j.at("b")) t.b.push_back(Rational::parse(v.get<std::string>()));
  for (const auto& v : j.at("c")) t.c.push_back(Rational::parse(v.get<std::string>()));
  validate_tableau(t);
  return t;
}

LinearOrderReport linear_order_check(const ButcherTableau& tab, int p) {
  const int s = tab.stages();
  if (p < 1 || p > s) throw std::invalid_argument("linear_order_check: order out of range");
  LinearOrderReport rep;
  rep.alpha.assign(1, Rational(1));
  VecQ v(s, Rational(1));  // A^{k-1} 1
  for (int k = 1; k <= s; ++k) {
    Rational ak(0);
    for (int i = 0; i < s; ++i) ak += tab.b[i] * v[i];
    rep.alpha.push_back(ak);
    if (k < s) v = tab.A.apply(v);
  }
  rep.satisfied = true;
  for (int k = 1; k <= p; ++k)
    if (rep.alpha[k] != factorial_reciprocal(k)) {
      rep.satisfied = false;
      break;
    }
  return rep;
}

StabilityPolynomial induced_polynomial(const ButcherTableau& tab, int p) {
  const LinearOrderReport rep = linear_order_check(tab, p);
  if (!rep.satisfied)
    throw std::invalid_argument("tableau does not satisfy the linear order conditions");
  StabilityPolynomial poly;
  poly.coeffs = rep.alpha;
  poly.order = p;
  return poly;
}

VecD linear_step(const LinearStepConfig& cfg, const VecD& u) {
  if (!(cfg.tau > 0)) throw std::invalid_argument("linear_step requires tau > 0");
  MatD Z = cfg.generator;
  Z *= cfg.tau;
  return polynomial_apply(cfg.poly, Z, u);
}

VecD nonlinear_step(const ButcherTableau& tab, const RhsFunction& F, double tau, const VecD& u) {
  if (!(tau > 0)) throw std::invalid_argument("nonlinear_step requires tau > 0");
  const int s = tab.stages();
  const std::size_t n = u.size();
  std::vector<VecD> k(s);
  VecD g(n);
  for (int i = 0; i < s; ++i) {
    g = u;
    for (int j = 0; j < i; ++j) {
      const double aij = tab.A(i, j).to_double();
      if (aij == 0.0) continue;
      for (std::size_t m = 0; m < n; ++m) g[m] += tau * aij * k[j][m];
    }
    k[i] = F(g);
    if (k[i].size() != n) throw std::invalid_argument("right-hand side changed dimension");
    for (const double x : k[i])
      if (!std::isfinite(x)) throw StepFailure("non-finite stage value in RK step");
  }
  VecD out = u;
  for (int i = 0; i < s; ++i) {
    const double bi = tab.b[i].to_double();
    if (bi == 0.0) continue;
    for (std::size_t m = 0; m < n; ++m) out[m] += tau * bi * k[i][m];
  }
  return out;
}

StepSchedule step_schedule(double T, double tau) {
  if (!(tau > 0) || !(T >= 0) || !std::isfinite(T) || !std::isfinite(tau))
    throw std::invalid_argument("step_schedule requires tau > 0 and finite T >= 0");
  StepSchedule sched;
  sched.full_steps = static_cast<long>(std::floor(T / tau + 1e-9));
  const double rem = T - static_cast<double>(sched.full_steps) * tau;
  sched.remainder = rem > 1e-12 * tau ? rem : 0.0;
  return sched;
}

}  // namespace svrk
