#pragma once

#include <map>
#include <optional>
#include <string>

#include "svrk/matrix.hpp"
#include "svrk/stability_polynomial.hpp"

namespace svrk {

// Canonical normal form of the one-step energy change for u_+ = R(Z)u with Z
// semi-negative in a weighted inner product:
//
//   ||u_+||^2 - ||u_0||^2 = sum_k beta_k ||Z^k u_0||^2
//                         + sum_{i,j} gamma_ij [Z^i u_0, Z^j u_0],
//
// where [v, w] = -<Zv, w> - <v, Zw> is the (positive semi-definite) defect of
// integration by parts. The form is produced by a deterministic rewrite of the
// raw expansion of ||R(Z)u||^2; see expand_energy.
struct EnergyExpansion {
  int p = 0;                       // linear order of the source polynomial
  std::map<int, Rational> beta;    // k -> beta_k, k = 1..s
  MatQ gamma;                      // s x s, symmetric, indices 0..s-1
  int k_star = 0;                  // smallest k with beta_k != 0
  MatQ leading_submatrix;          // gamma restricted to 0..k_star-1
};

// Critical superviscosity coefficients derived from the expansion: the method
// with diffusive coefficient nu < nu0 (and, for even p, dispersive coefficient
// mu > mu0) is strongly stable for small enough steps.
struct CriticalBounds {
  Rational nu0;                 // -beta_{k_star} / 2
  std::optional<Rational> mu0;  // present iff p is even
};

// Rewrites the raw expansion of ||R(Z)u||^2 - ||u||^2 into the normal form.
// Writing P(i,j) = <Z^i u, Z^j u> and Q(i,j) = [Z^i u, Z^j u], the rules
//   P(i,j) -> -P(i-1, j+1) - Q(i-1, j)   for i - j >= 2,
//   P(j+1,j) -> -(1/2) Q(j, j)
// are applied until only diagonal P terms remain. beta_k is the coefficient of
// P(k,k); gamma is symmetric with gamma_ii = coeff(Q(i,i)) and
// gamma_ij = coeff(Q(i,j))/2 off the diagonal.
EnergyExpansion expand_energy(const StabilityPolynomial& poly);

// Returns k_star; throws std::logic_error if it differs from ceil((p+1)/2),
// the value required by the strong-stability statements for order-p methods.
int leading_index(const EnergyExpansion& exp, int p);

// nu0 = -beta_{k_star}/2. For even p, mu0 is the exact Schur complement
// c - b^T A^{-1} b of the leading submatrix partitioned as [[A, b], [b^T, c]];
// requires A negative definite (throws std::invalid_argument otherwise).
CriticalBounds critical_bounds(const EnergyExpansion& exp, int p);

// JSON rendering of the expansion together with its critical bounds:
// {"p":..,"beta":{"k":"num/den"},"gamma":[["num/den",..]],"k_star":..,
//  "nu0":"num/den","mu0":"num/den"|null}.
std::string expansion_to_json(const EnergyExpansion& exp);

}  // namespace svrk
