#pragma once

#include <vector>

#include "svrk/matrix.hpp"
#include "svrk/rational.hpp"

namespace svrk {

// Coefficients alpha_0..alpha_s of the linear one-step map u -> sum alpha_k Z^k u
// of an explicit RK method, Z = tau * L. Consistency forces alpha_0 = alpha_1 = 1;
// the method is linearly order p exactly when alpha_k = 1/k! for all k <= p.
struct StabilityPolynomial {
  std::vector<Rational> coeffs;  // alpha_0..alpha_s
  int order = 0;                 // linear order p

  int stage_count() const { return static_cast<int>(coeffs.size()) - 1; }
};

// R_p(Z) = sum_{k<=p} Z^k / k!, the stability polynomial of a p-stage method of
// linear order p. Valid for 1 <= p <= 12.
StabilityPolynomial taylor_polynomial(int p);

// Throws std::invalid_argument unless alpha_0 = alpha_1 = 1 and alpha_k = 1/k!
// holds for all k <= order.
void validate_polynomial(const StabilityPolynomial& poly);

namespace detail {
inline double scalar_cast(const Rational& r, double) { return r.to_double(); }
inline const Rational& scalar_cast(const Rational& r, const Rational&) { return r; }
}  // namespace detail

// sum alpha_k Z^k u, evaluated Horner-style with stage_count() matrix-vector
// products. Bit-deterministic for fixed input.
template <class T>
std::vector<T> polynomial_apply(const StabilityPolynomial& poly, const Matrix<T>& Z,
                                const std::vector<T>& u) {
  if (Z.rows() != Z.cols() || Z.cols() != static_cast<int>(u.size()))
    throw std::invalid_argument("polynomial_apply dimension mismatch");
  const int s = poly.stage_count();
  std::vector<T> acc(u.size());
  const T top = detail::scalar_cast(poly.coeffs[s], T(0));
  for (std::size_t i = 0; i < u.size(); ++i) acc[i] = top * u[i];
  for (int k = s - 1; k >= 0; --k) {
    acc = Z.apply(acc);
    const T ak = detail::scalar_cast(poly.coeffs[k], T(0));
    for (std::size_t i = 0; i < u.size(); ++i) acc[i] += ak * u[i];
  }
  return acc;
}

// sum alpha_k Z^k as a dense matrix (Horner on matrices).
template <class T>
Matrix<T> polynomial_matrix(const StabilityPolynomial& poly, const Matrix<T>& Z) {
  if (Z.rows() != Z.cols()) throw std::invalid_argument("polynomial_matrix needs a square matrix");
  const int n = Z.rows();
  const int s = poly.stage_count();
  Matrix<T> acc = Matrix<T>::identity(n);
  acc *= detail::scalar_cast(poly.coeffs[s], T(0));
  for (int k = s - 1; k >= 0; --k) {
    acc = Z * acc;
    const T ak = detail::scalar_cast(poly.coeffs[k], T(0));
    for (int i = 0; i < n; ++i) acc(i, i) += ak;
  }
  return acc;
}

}  // namespace svrk
