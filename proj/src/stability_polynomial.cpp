#include "svrk/stability_polynomial.hpp"

#include <stdexcept>

namespace svrk {

StabilityPolynomial taylor_polynomial(int p) {
  if (p < 1 || p > 12) throw std::invalid_argument("taylor_polynomial: order out of range [1, 12]");
  StabilityPolynomial poly;
  poly.order = p;
  poly.coeffs.reserve(p + 1);
  for (int k = 0; k <= p; ++k) poly.coeffs.push_back(factorial_reciprocal(k));
  return poly;
}

void validate_polynomial(const StabilityPolynomial& poly) {
  if (poly.coeffs.size() < 2) throw std::invalid_argument("stability polynomial needs at least one stage");
  if (poly.coeffs[0] != Rational(1) || poly.coeffs[1] != Rational(1))
    throw std::invalid_argument("stability polynomial must have alpha_0 = alpha_1 = 1");
  if (poly.order < 1 || poly.order > poly.stage_count())
    throw std::invalid_argument("stability polynomial order out of range");
  for (int k = 0; k <= poly.order; ++k)
    if (poly.coeffs[k] != factorial_reciprocal(k))
      throw std::invalid_argument("stability polynomial coefficients violate the stated linear order");
}

}  // namespace svrk
