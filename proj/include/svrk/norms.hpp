#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "svrk/matrix.hpp"
#include "svrk/psd.hpp"

namespace svrk {

struct PowerIterationOptions {
  double tol = 1e-13;
  long max_iterations = 1000000;
};

// ||R|| in the weighted norm: sqrt of the largest eigenvalue of C^T C with
// C = M^{1/2} R M^{-1/2}, by power iteration. Deterministic: starts from the
// all-ones vector, switching once to a fixed fallback if the start lies in
// the kernel. Throws std::runtime_error when the iteration cap is hit.
double operator_norm_float(const MatD& R, const InnerProduct<double>& ip,
                           const PowerIterationOptions& opts = {});

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, accurate to
// about machine epsilon times the matrix norm. Input is consumed.
std::vector<double> jacobi_eigenvalues(MatD A, int max_sweeps = 100);

// ||R|| - 1 evaluated without cancellation from the energy defect
// E = R^T M R - M: with lambda = max eig of M^{-1/2} E M^{-1/2} (so
// ||R||^2 = 1 + lambda), returns lambda / (sqrt(1 + lambda) + 1). Assembling
// E term-by-term keeps gaps far below machine epsilon resolvable.
double norm_gap_from_defect(const MatD& defect, const InnerProduct<double>& ip);

// Exact enclosure of lambda_max = ||R||^2 from rational bisection.
struct ExactNormBracket {
  Rational lo;
  Rational hi;

  double norm() const {
    const double mid = ((lo + hi) / Rational(2)).to_double();
    return std::sqrt(mid > 0 ? mid : 0.0);
  }

  // (lambda - 1)/(sqrt(lambda) + 1), with lambda - 1 formed in exact
  // arithmetic so values far below machine epsilon keep their digits.
  double norm_minus_one() const {
    const Rational mid = (lo + hi) / Rational(2);
    const double num = (mid - Rational(1)).to_double();
    const double lam = mid.to_double();
    return num / (std::sqrt(lam > 0 ? lam : 0.0) + 1.0);
  }
};

// Brackets lambda_max of the pencil (R^T M R, M) by bisection on exact PSD
// decisions of t M - R^T M R: lambda_max = inf{t : t M - R^T M R is PSD}, so
// each test is multiplicity-proof (a determinant sign test misses maxima of
// even multiplicity, which paired DG singular values produce routinely).
// Initial bracket: largest diagonal Rayleigh quotient below, Gershgorin bound
// on M^{-1} R^T M R above. Terminates when hi - lo < tol * hi. Requires
// dimension <= 128 and tol > 0.
ExactNormBracket operator_norm_exact(const MatQ& R, const InnerProduct<Rational>& ip,
                                     const Rational& tol);

enum class Verdict { StronglyStable, NotStronglyStable };

// Exact decision of ||R|| <= 1 with, in the unstable case, an integer vector
// v whose norm grows: witness_value = v^T (M - R^T M R) v < 0.
struct StabilityCertificate {
  Verdict verdict = Verdict::StronglyStable;
  std::optional<VecQ> witness;
  Rational witness_value;
};

StabilityCertificate strong_stability_certificate(const MatQ& R, const InnerProduct<Rational>& ip);

// R^T M R - M over the rationals.
MatQ gram_defect(const MatQ& R, const InnerProduct<Rational>& ip);

// {"verdict":..., "witness":[...]|null, "witness_value":...|null}
std::string certificate_to_json(const StabilityCertificate& cert);

// {"rows":..., "cols":..., "data":[["num/den", ...], ...]}
std::string matrix_to_json(const MatQ& m);

}  // namespace svrk
