#include "svrk/linop.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace svrk {

namespace {

void require_dim(const LinearOp& op, const VecD& v) {
  if (static_cast<int>(v.size()) != op.dim)
    throw std::invalid_argument("linear operator dimension mismatch");
}

}  // namespace

LinearOp dense_linear_op(const MatD& A, const InnerProduct<double>& ip) {
  if (A.rows() != A.cols() || A.rows() != ip.dim())
    throw std::invalid_argument("dense_linear_op dimension mismatch");
  const auto fwd = std::make_shared<MatD>(A);
  const auto adj = std::make_shared<MatD>(adjoint(A, ip));
  LinearOp op;
  op.dim = A.rows();
  op.apply = [fwd](const VecD& v) { return fwd->apply(v); };
  op.apply_adjoint = [adj](const VecD& v) { return adj->apply(v); };
  return op;
}

LinearOp operator_power(const LinearOp& op, int k) {
  if (k < 0) throw std::invalid_argument("operator_power requires k >= 0");
  LinearOp out;
  out.dim = op.dim;
  out.apply = [op, k](const VecD& v) {
    VecD w = v;
    for (int i = 0; i < k; ++i) w = op.apply(w);
    return w;
  };
  out.apply_adjoint = [op, k](const VecD& v) {
    VecD w = v;
    for (int i = 0; i < k; ++i) w = op.apply_adjoint(w);
    return w;
  };
  return out;
}

LinearOp scaled_op(const LinearOp& op, double s) {
  LinearOp out;
  out.dim = op.dim;
  out.apply = [op, s](const VecD& v) {
    VecD w = op.apply(v);
    for (double& x : w) x *= s;
    return w;
  };
  out.apply_adjoint = [op, s](const VecD& v) {
    VecD w = op.apply_adjoint(v);
    for (double& x : w) x *= s;
    return w;
  };
  return out;
}

VecD polynomial_apply_op(const StabilityPolynomial& poly, const LinearOp& Z, const VecD& u) {
  require_dim(Z, u);
  const int s = poly.stage_count();
  VecD acc(u.size());
  const double top = poly.coeffs[s].to_double();
  for (std::size_t i = 0; i < u.size(); ++i) acc[i] = top * u[i];
  for (int k = s - 1; k >= 0; --k) {
    acc = Z.apply(acc);
    const double ak = poly.coeffs[k].to_double();
    for (std::size_t i = 0; i < u.size(); ++i) acc[i] += ak * u[i];
  }
  return acc;
}

VecD viscosity_apply(const LinearOp& Z, const SuperviscosityConfig<double>& cfg, const VecD& v) {
  require_dim(Z, v);
  if (cfg.k_star < 1) throw std::invalid_argument("viscosity_apply requires k_star >= 1");
  if (cfg.k_star == 1 && cfg.mu != 0.0)
    throw std::invalid_argument("k_star = 1 requires a zero dispersive coefficient");
  VecD w = v;
  for (int i = 0; i < cfg.k_star; ++i) w = Z.apply(w);  // Z^{k*} v
  for (int i = 0; i + 1 < cfg.k_star; ++i) w = Z.apply_adjoint(w);
  // w = (Z*)^{k*-1} Z^{k*} v
  const VecD zw = Z.apply_adjoint(w);
  VecD out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = cfg.mu * w[i] + cfg.nu * zw[i];
  return out;
}

VecD modified_generator_apply(const LinearOp& Z, const SuperviscosityConfig<double>& cfg,
                              const VecD& v) {
  VecD g = viscosity_apply(Z, cfg, v);
  const VecD zv = Z.apply(v);
  for (std::size_t i = 0; i < v.size(); ++i) g[i] += zv[i];
  return g;
}

VecD one_step_apply(const StabilityPolynomial& poly, const LinearOp& Z,
                    const SuperviscosityConfig<double>& cfg, Mode mode, const VecD& u) {
  switch (mode) {
    case Mode::Plain:
      return polynomial_apply_op(poly, Z, u);
    case Mode::Modified: {
      require_dim(Z, u);
      const int s = poly.stage_count();
      VecD acc(u.size());
      const double top = poly.coeffs[s].to_double();
      for (std::size_t i = 0; i < u.size(); ++i) acc[i] = top * u[i];
      for (int k = s - 1; k >= 0; --k) {
        acc = modified_generator_apply(Z, cfg, acc);
        const double ak = poly.coeffs[k].to_double();
        for (std::size_t i = 0; i < u.size(); ++i) acc[i] += ak * u[i];
      }
      return acc;
    }
    case Mode::Filtered: {
      VecD acc = polynomial_apply_op(poly, Z, u);
      const VecD g = viscosity_apply(Z, cfg, acc);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
      return acc;
    }
  }
  throw std::logic_error("unknown mode");
}

double operator_norm_float_op(const LinearOp& A, const InnerProduct<double>& ip,
                              const PowerIterationOptions& opts) {
  if (A.dim != ip.dim()) throw std::invalid_argument("operator_norm_float_op dimension mismatch");
  const int n = A.dim;
  if (n == 0) return 0.0;
  VecD v(n, 1.0);
  bool used_fallback = false;
  double lambda = 0.0;
  for (long it = 0; it < opts.max_iterations; ++it) {
    const VecD w = A.apply_adjoint(A.apply(v));
    const double vv = ip.norm_sq(v);
    const double next = ip.dot(v, w) / vv;
    const double wn = std::sqrt(ip.norm_sq(w));
    if (wn == 0.0) {
      if (used_fallback) return 0.0;
      used_fallback = true;
      for (int i = 0; i < n; ++i) v[i] = std::sin(i + 1.0);
      lambda = 0.0;
      continue;
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / wn;
    if (it > 0 && std::abs(next - lambda) <= opts.tol * std::abs(next))
      return std::sqrt(next > 0 ? next : 0.0);
    lambda = next;
  }
  throw std::runtime_error("operator norm power iteration did not converge");
}

}  // namespace svrk
