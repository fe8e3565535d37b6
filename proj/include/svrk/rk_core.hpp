#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svrk/matrix.hpp"
#include "svrk/stability_polynomial.hpp"

namespace svrk {

// Thrown when an RK stage or update produces a non-finite value.
struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit Butcher tableau with exact rational entries.
struct ButcherTableau {
  MatQ A;  // strictly lower triangular
  VecQ b;
  VecQ c;

  int stages() const { return static_cast<int>(b.size()); }
};

// Enforces: A square and strictly lower triangular, sum(b) = 1, and
// c_i = sum_j A_ij. Throws std::invalid_argument.
void validate_tableau(const ButcherTableau& tab);

// Heun's two-stage second-order method.
ButcherTableau heun2();

// The six-stage fifth-order Fehlberg method (the order-5 weights).
ButcherTableau fehlberg5();

// Parses {"A":[["num/den",...],...],"b":[...],"c":[...]} and validates.
ButcherTableau tableau_from_json(const std::string& text);

struct LinearOrderReport {
  bool satisfied = false;       // b^T A^{k-1} 1 = 1/k! for every k <= p
  std::vector<Rational> alpha;  // induced alpha_0..alpha_s (alpha_0 = 1)
};

// Exact rational evaluation of the linear order conditions up to order p,
// together with the full induced stability-polynomial coefficients.
LinearOrderReport linear_order_check(const ButcherTableau& tab, int p);

// Stability polynomial induced by the tableau with stated linear order p;
// throws std::invalid_argument if the order conditions fail.
StabilityPolynomial induced_polynomial(const ButcherTableau& tab, int p);

struct LinearStepConfig {
  StabilityPolynomial poly;
  double tau = 0;  // must be positive
  MatD generator;  // L
};

// u_+ = R(tau L) u, evaluated with stage_count() matrix-vector products.
VecD linear_step(const LinearStepConfig& cfg, const VecD& u);

using RhsFunction = std::function<VecD(const VecD&)>;

// Standard explicit RK step: stages g_i = u + tau sum_j A_ij F(g_j), result
// u + tau sum_i b_i F(g_i). F is evaluated exactly s times. Throws
// StepFailure when any stage goes non-finite.
VecD nonlinear_step(const ButcherTableau& tab, const RhsFunction& F, double tau, const VecD& u);

// Uniform steps of size tau landing exactly on T: full_steps whole steps plus
// one shrunken remainder step (remainder = 0 when T is a multiple of tau).
struct StepSchedule {
  long full_steps = 0;
  double remainder = 0;
};

StepSchedule step_schedule(double T, double tau);

}  // namespace svrk
