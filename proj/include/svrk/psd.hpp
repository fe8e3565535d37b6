#pragma once

#include <optional>

#include "svrk/matrix.hpp"

namespace svrk {

// Outcome of an exact positive-semidefiniteness test. When the matrix is not
// PSD, witness holds an integer vector v with v^T S v = witness_value < 0,
// re-verified against the input in exact arithmetic before returning.
struct PsdResult {
  bool psd = false;
  std::optional<VecQ> witness;
  Rational witness_value;
};

// Exact PSD test for a symmetric rational matrix. Denominators are cleared
// and the test runs as fraction-free integer elimination with symmetric
// pivoting on the largest positive diagonal entry. A zero diagonal is
// accepted only if the entire remaining row vanishes; a negative diagonal or
// a nonzero entry in a zero-diagonal row yields a witness, lifted back
// through the eliminated block. Throws std::invalid_argument on non-square
// or non-symmetric input.
PsdResult psd_check_rational(const MatQ& S);

// Witness-free variant (skips the certificate lift; used inside bisection
// loops where only the verdict matters).
bool psd_decide(const MatQ& S);

}  // namespace svrk
