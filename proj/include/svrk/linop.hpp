#pragma once

#include <functional>

#include "svrk/norms.hpp"
#include "svrk/superviscosity.hpp"

namespace svrk {

// Matrix-free linear operator: an apply pair instead of a dense matrix.
// apply_adjoint must implement the adjoint in the same weighted inner product
// the experiment measures norms in. Used where materializing the operator is
// wasteful (time stepping, adaptive filtering on fine meshes); certificates
// stay on the dense path.
struct LinearOp {
  int dim = 0;
  std::function<VecD(const VecD&)> apply;
  std::function<VecD(const VecD&)> apply_adjoint;
};

// Wraps a dense matrix (adjoint taken against ip).
LinearOp dense_linear_op(const MatD& A, const InnerProduct<double>& ip);

// k-fold composition of op with itself (k >= 0; k = 0 is the identity).
LinearOp operator_power(const LinearOp& op, int k);

// s * op (the adjoint scales by the same real factor).
LinearOp scaled_op(const LinearOp& op, double s);

// sum alpha_k Z^k u, Horner-style.
VecD polynomial_apply_op(const StabilityPolynomial& poly, const LinearOp& Z, const VecD& u);

// G v with G = mu (Z*)^{k*-1} Z^{k*} + nu (Z*)^{k*} Z^{k*}.
VecD viscosity_apply(const LinearOp& Z, const SuperviscosityConfig<double>& cfg, const VecD& v);

// (Z + G) v.
VecD modified_generator_apply(const LinearOp& Z, const SuperviscosityConfig<double>& cfg,
                              const VecD& v);

// One linear step without materializing the operator: Plain R(Z)u, Modified
// R(Z~)u, Filtered (I + G) R(Z) u.
VecD one_step_apply(const StabilityPolynomial& poly, const LinearOp& Z,
                    const SuperviscosityConfig<double>& cfg, Mode mode, const VecD& u);

// ||A|| in the weighted norm by power iteration on A*A, same start-vector
// policy and failure behavior as the dense operator_norm_float.
double operator_norm_float_op(const LinearOp& A, const InnerProduct<double>& ip,
                              const PowerIterationOptions& opts = {});

}  // namespace svrk
