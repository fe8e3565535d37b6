#pragma once

#include <stdexcept>

#include "svrk/energy_expansion.hpp"
#include "svrk/matrix.hpp"
#include "svrk/stability_polynomial.hpp"

namespace svrk {

enum class Mode { Plain, Modified, Filtered };

// Superviscosity coefficients: mu is the dispersive coefficient, nu the
// diffusive one, k_star the leading energy index of the base method (supplied
// by the energy expansion, never assumed).
template <class T>
struct SuperviscosityConfig {
  T mu{};
  T nu{};
  int k_star = 1;
};

namespace detail {

template <class T>
void validate_superviscosity(const Matrix<T>& Z, const SuperviscosityConfig<T>& cfg,
                             const InnerProduct<T>& ip) {
  if (Z.rows() != Z.cols() || Z.rows() != ip.dim())
    throw std::invalid_argument("superviscosity dimension mismatch");
  if (cfg.k_star < 1) throw std::invalid_argument("superviscosity requires k_star >= 1");
  if (cfg.k_star == 1 && !(cfg.mu == T(0)))
    throw std::invalid_argument("k_star = 1 requires a zero dispersive coefficient");
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& base, int e) {
  Matrix<T> out = Matrix<T>::identity(base.rows());
  for (int i = 0; i < e; ++i) out = base * out;
  return out;
}

}  // namespace detail

// mu (Z*)^{k*-1} Z^{k*} + nu (Z*)^{k*} Z^{k*}, with Z* the ip-adjoint of Z.
template <class T>
Matrix<T> viscosity_term(const Matrix<T>& Z, const SuperviscosityConfig<T>& cfg,
                         const InnerProduct<T>& ip) {
  detail::validate_superviscosity(Z, cfg, ip);
  const Matrix<T> Zs = adjoint(Z, ip);
  const Matrix<T> A = detail::matrix_power(Zs, cfg.k_star - 1) * detail::matrix_power(Z, cfg.k_star);
  return cfg.mu * A + cfg.nu * (Zs * A);
}

// Z~ = Z + mu (Z*)^{k*-1} Z^{k*} + nu (Z*)^{k*} Z^{k*}. Z is tau*L; divide by
// tau if the modified generator itself is needed.
template <class T>
Matrix<T> build_modified_generator(const Matrix<T>& Z, const SuperviscosityConfig<T>& cfg,
                                   const InnerProduct<T>& ip) {
  return Z + viscosity_term(Z, cfg, ip);
}

// F = I + mu (Z*)^{k*-1} Z^{k*} + nu (Z*)^{k*} Z^{k*}, the post-step filter.
template <class T>
Matrix<T> build_filter(const Matrix<T>& Z, const SuperviscosityConfig<T>& cfg,
                       const InnerProduct<T>& ip) {
  return Matrix<T>::identity(Z.rows()) + viscosity_term(Z, cfg, ip);
}

// One linear step as a dense matrix: Plain R(Z), Modified R(Z~), Filtered
// F * R(Z). Feeds the norm and certificate operations.
template <class T>
Matrix<T> one_step_operator(const StabilityPolynomial& poly, const Matrix<T>& Z,
                            const SuperviscosityConfig<T>& cfg, Mode mode,
                            const InnerProduct<T>& ip) {
  switch (mode) {
    case Mode::Plain:
      detail::validate_superviscosity(Z, cfg, ip);
      return polynomial_matrix(poly, Z);
    case Mode::Modified:
      return polynomial_matrix(poly, build_modified_generator(Z, cfg, ip));
    case Mode::Filtered:
      return build_filter(Z, cfg, ip) * polynomial_matrix(poly, Z);
  }
  throw std::logic_error("unknown mode");
}

// R^T M R - M for the one-step operator, assembled term by term from the
// canonical energy expansion instead of subtracting two O(1) Gram matrices.
// This keeps norm gaps far below machine epsilon representable, which the
// norm tables need at small steps. For Plain and Modified the expansion is
// evaluated at Y = Z and Y = Z~ respectively; for Filtered the plain defect
// is augmented with R^T (G^T M + M G + G^T M G) R, G the viscosity term.
MatD energy_defect_matrix(const StabilityPolynomial& poly, const MatD& Z,
                          const SuperviscosityConfig<double>& cfg, Mode mode,
                          const InnerProduct<double>& ip);

}  // namespace svrk
