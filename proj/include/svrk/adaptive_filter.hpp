#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "svrk/dg1d.hpp"
#include "svrk/linop.hpp"
#include "svrk/matrix.hpp"

namespace svrk {

// Raised by adaptive_nu when ||D u_+|| = 0, where the coefficient formula is
// undefined; the filter step passes u_+ through unchanged instead.
struct FilterInactive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdaptiveFilterReport {
  double nu = 0;               // always <= 0
  bool guarantee_held = true;  // premise |nu| ||D||^2 <= 1, under which the filter cannot overshoot
  double norm_before = 0;      // ||u_0||, the pre-step norm being matched
  double norm_after = 0;       // ||u_F||
  bool filter_inactive = false;  // ||D u_+|| = 0 pass-through
};

// nu = min((||u_0||^2 - ||u_+||^2) / ||D u_+||^2, 0). Throws FilterInactive
// when ||D u_+|| = 0.
double adaptive_nu(const VecD& u0, const VecD& u_plus, const MatD& D,
                   const InnerProduct<double>& ip);

// u_F = (I + nu D^T D) u_+ with D^T the ip-adjoint. The guarantee flag uses
// ||D|| from operator_norm_float; no clamping happens when it fails, the
// report just records it. On ||D u_+|| = 0 the input passes through (with a
// stderr warning if the norm actually grew, since this D cannot damp it).
std::pair<VecD, AdaptiveFilterReport> apply_adaptive_filter(const VecD& u0, const VecD& u_plus,
                                                            const MatD& D,
                                                            const InnerProduct<double>& ip);

// Matrix-free variant for fine meshes; norm_D = ||D|| is supplied by the
// caller (recompute only when the step size changes).
std::pair<VecD, AdaptiveFilterReport> apply_adaptive_filter(const VecD& u0, const VecD& u_plus,
                                                            const LinearOp& D, double norm_D,
                                                            const InnerProduct<double>& ip);

// D = (tau * L_upwind)^{k_star} on the given space: a conservative
// approximation of tau^{k_star} times the k_star-th derivative. Annihilates
// constants, so the filter conserves mass.
MatD build_default_D(const DGSpace& space, double tau, int k_star);
LinearOp build_default_D_op(const DGSpace& space, double tau, int k_star);

// Per-step CSV log: "step,t,nu,guarantee_held,norm_before,norm_after".
std::string adaptive_report_csv_header();
std::string adaptive_report_csv_row(long step, double t, const AdaptiveFilterReport& rep);

}  // namespace svrk
