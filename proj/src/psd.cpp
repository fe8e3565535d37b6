#include "svrk/psd.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <utility>
#include <vector>

namespace svrk {

VecQ solve_linear(const MatQ& A, const VecQ& b) {
  if (A.rows() != A.cols() || static_cast<int>(b.size()) != A.rows())
    throw std::invalid_argument("solve_linear dimension mismatch");
  const int n = A.rows();
  MatQ m = A;
  VecQ rhs = b;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m(i, k).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular matrix in solve_linear");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      std::swap(rhs[piv], rhs[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      const Rational f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  VecQ x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational acc = rhs[i];
    for (int j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

// Witness for the Schur complement reached after `steps` positive pivots,
// expressed over the remaining permuted coordinates steps..n-1.
struct SchurWitness {
  int steps = 0;
  std::vector<mpz_class> y;
};

// Clears denominators: returns L*S as an integer matrix with L = lcm of all
// denominators (positive scaling, so PSD status and witnesses carry over).
ZMat scale_to_integers(const MatQ& S) {
  const int n = S.rows();
  mpz_class lcm = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), S(i, j).den().get_mpz_t());
  ZMat B(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i][j] = S(i, j).num() * (lcm / S(i, j).den());
  return B;
}

// Fraction-free symmetric elimination on an integer matrix. After k steps the
// trailing block equals (det of the pivot block) times the exact Schur
// complement, and that determinant is positive, so sign tests on trailing
// entries are sign tests on the Schur complement. Returns a witness when the
// matrix is not PSD, std::nullopt otherwise. perm maps current positions to
// original indices and records the symmetric pivot swaps.
std::optional<SchurWitness> eliminate(ZMat& B, std::vector<int>& perm) {
  const int n = static_cast<int>(B.size());
  mpz_class prev = 1;
  for (int k = 0; k < n; ++k) {
    int neg = -1;
    int piv = -1;
    for (int i = k; i < n; ++i) {
      const int s = sgn(B[i][i]);
      if (s < 0) {
        neg = i;
        break;
      }
      if (s > 0 && (piv < 0 || B[i][i] > B[piv][piv])) piv = i;
    }
    if (neg >= 0) {
      SchurWitness w;
      w.steps = k;
      w.y.assign(n - k, 0);
      w.y[neg - k] = 1;
      return w;
    }
    if (piv < 0) {
      // All remaining diagonal entries vanish; any surviving off-diagonal
      // entry B[a][b] makes e_a - sign(B[a][b]) e_b a witness.
      for (int i = k; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (sgn(B[i][j]) != 0) {
            SchurWitness w;
            w.steps = k;
            w.y.assign(n - k, 0);
            w.y[i - k] = 1;
            w.y[j - k] = -sgn(B[i][j]);
            return w;
          }
      return std::nullopt;
    }
    if (piv != k) {
      std::swap(B[piv], B[k]);
      for (int r = 0; r < n; ++r) std::swap(B[r][piv], B[r][k]);
      std::swap(perm[piv], perm[k]);
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        const mpz_class t = B[k][k] * B[i][j] - B[i][k] * B[k][j];
        mpz_divexact(B[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = B[k][k];
  }
  return std::nullopt;
}

void require_symmetric(const MatQ& S) {
  if (S.rows() != S.cols()) throw std::invalid_argument("PSD test requires a square matrix");
  if (!S.is_symmetric()) throw std::invalid_argument("PSD test requires a symmetric matrix");
}

// Lifts a Schur-complement witness back to the original coordinates:
// v = (x, y) with S11 x = -S12 y makes v^T S v equal the Schur quadratic
// form at y. Returns a primitive integer vector.
VecQ lift_witness(const MatQ& S, const ZMat& orig, const std::vector<int>& perm,
                  const SchurWitness& w) {
  const int n = S.rows();
  const int k = w.steps;
  VecQ v_perm(n, Rational(0));
  for (int j = 0; j < n - k; ++j) v_perm[k + j] = Rational(w.y[j]);
  if (k > 0) {
    MatQ A(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) A(i, j) = Rational(orig[perm[i]][perm[j]]);
    VecQ rhs(k, Rational(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n - k; ++j)
        rhs[i] -= Rational(orig[perm[i]][perm[k + j]]) * v_perm[k + j];
    const VecQ x = solve_linear(A, rhs);
    for (int i = 0; i < k; ++i) v_perm[i] = x[i];
  }

  VecQ v(n, Rational(0));
  for (int r = 0; r < n; ++r) v[perm[r]] = v_perm[r];

  mpz_class den_lcm = 1;
  for (const auto& c : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  mpz_class num_gcd = 0;
  std::vector<mpz_class> ints(n);
  for (int i = 0; i < n; ++i) {
    ints[i] = v[i].num() * (den_lcm / v[i].den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
  }
  for (int i = 0; i < n; ++i) v[i] = Rational(mpz_class(ints[i] / num_gcd));
  return v;
}

Rational quadratic_form(const MatQ& S, const VecQ& v) {
  Rational acc(0);
  for (int i = 0; i < S.rows(); ++i) {
    Rational row(0);
    for (int j = 0; j < S.cols(); ++j) row += S(i, j) * v[j];
    acc += v[i] * row;
  }
  return acc;
}

}  // namespace

PsdResult psd_check_rational(const MatQ& S) {
  require_symmetric(S);
  const int n = S.rows();
  PsdResult out;
  if (n == 0) {
    out.psd = true;
    return out;
  }
  const ZMat orig = scale_to_integers(S);
  ZMat B = orig;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  const auto w = eliminate(B, perm);
  if (!w) {
    out.psd = true;
    return out;
  }
  VecQ v = lift_witness(S, orig, perm, *w);
  const Rational value = quadratic_form(S, v);
  if (value.sign() >= 0) throw std::logic_error("PSD witness failed exact verification");
  out.psd = false;
  out.witness = std::move(v);
  out.witness_value = value;
  return out;
}

bool psd_decide(const MatQ& S) {
  require_symmetric(S);
  if (S.rows() == 0) return true;
  ZMat B = scale_to_integers(S);
  std::vector<int> perm(S.rows());
  for (int i = 0; i < S.rows(); ++i) perm[i] = i;
  return !eliminate(B, perm).has_value();
}

}  // namespace svrk
