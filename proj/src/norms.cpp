#include "svrk/norms.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace svrk {

namespace {

constexpr int kExactDimCap = 128;

// C = M^{1/2} R M^{-1/2}; singular values of C are the weighted singular
// values of R.
MatD symmetrize(const MatD& R, const InnerProduct<double>& ip) {
  const int n = R.rows();
  MatD C(n, n);
  for (int i = 0; i < n; ++i) {
    const double si = std::sqrt(ip.weight(i));
    for (int j = 0; j < n; ++j) C(i, j) = si * R(i, j) / std::sqrt(ip.weight(j));
  }
  return C;
}

double dot(const VecD& a, const VecD& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

double operator_norm_float(const MatD& R, const InnerProduct<double>& ip,
                           const PowerIterationOptions& opts) {
  if (R.rows() != R.cols() || R.rows() != ip.dim())
    throw std::invalid_argument("operator_norm_float dimension mismatch");
  const int n = R.rows();
  if (n == 0) return 0.0;
  const MatD C = symmetrize(R, ip);
  const MatD Ct = C.transpose();

  VecD v(n, 1.0);
  bool used_fallback = false;
  double lambda = 0.0;
  for (long it = 0; it < opts.max_iterations; ++it) {
    VecD w = Ct.apply(C.apply(v));
    const double vv = dot(v, v);
    const double next = dot(v, w) / vv;
    const double wn = std::sqrt(dot(w, w));
    if (wn == 0.0) {
      if (used_fallback) return 0.0;  // both documented starts lie in the kernel
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

std::vector<double> jacobi_eigenvalues(MatD A, int max_sweeps) {
  if (A.rows() != A.cols()) throw std::invalid_argument("jacobi_eigenvalues requires a square matrix");
  const int n = A.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    double fro = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        fro += A(i, j) * A(i, j);
        if (i != j) off += A(i, j) * A(i, j);
      }
    if (off <= 1e-30 * fro || fro == 0.0) {
      std::vector<double> eig(n);
      for (int i = 0; i < n; ++i) eig[i] = A(i, i);
      return eig;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        A(p, p) -= t * apq;
        A(q, q) += t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = A(r, p);
          const double arq = A(r, q);
          A(r, p) = A(p, r) = c * arp - s * arq;
          A(r, q) = A(q, r) = s * arp + c * arq;
        }
      }
  }
  throw std::runtime_error("Jacobi eigenvalue iteration did not converge");
}

double norm_gap_from_defect(const MatD& defect, const InnerProduct<double>& ip) {
  if (defect.rows() != defect.cols() || defect.rows() != ip.dim())
    throw std::invalid_argument("norm_gap_from_defect dimension mismatch");
  const int n = defect.rows();
  MatD S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      S(i, j) = defect(i, j) / std::sqrt(ip.weight(i) * ip.weight(j));
  const std::vector<double> eig = jacobi_eigenvalues(std::move(S));
  double lambda = eig.empty() ? 0.0 : eig[0];
  for (const double e : eig) lambda = std::max(lambda, e);
  const double radicand = 1.0 + lambda;
  return lambda / (std::sqrt(radicand > 0 ? radicand : 0.0) + 1.0);
}

MatQ gram_defect(const MatQ& R, const InnerProduct<Rational>& ip) {
  if (R.rows() != R.cols() || R.rows() != ip.dim())
    throw std::invalid_argument("gram_defect dimension mismatch");
  const int n = R.rows();
  MatQ MR(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) MR(i, j) = ip.weight(i) * R(i, j);
  MatQ S = R.transpose() * MR;
  for (int i = 0; i < n; ++i) S(i, i) -= ip.weight(i);
  return S;
}

ExactNormBracket operator_norm_exact(const MatQ& R, const InnerProduct<Rational>& ip,
                                     const Rational& tol) {
  if (R.rows() != R.cols() || R.rows() != ip.dim())
    throw std::invalid_argument("operator_norm_exact dimension mismatch");
  if (R.rows() > kExactDimCap)
    throw std::invalid_argument("operator_norm_exact dimension cap exceeded");
  if (tol.sign() <= 0) throw std::invalid_argument("operator_norm_exact requires tol > 0");
  const int n = R.rows();

  MatQ S = gram_defect(R, ip);  // R^T M R - M
  for (int i = 0; i < n; ++i) S(i, i) += ip.weight(i);

  MatQ M(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = ip.weight(i);

  bool zero = true;
  for (int i = 0; i < n && zero; ++i)
    for (int j = 0; j < n; ++j)
      if (!S(i, j).is_zero()) {
        zero = false;
        break;
      }
  if (zero) return {Rational(0), Rational(0)};
  if (S == M) return {Rational(1), Rational(1)};  // exact isometry

  // Diagonal Rayleigh quotients bound lambda_max from below, the Gershgorin
  // row sums of M^{-1} S from above.
  Rational lo(0);
  Rational hi(0);
  for (int i = 0; i < n; ++i) {
    const Rational ray = S(i, i) / ip.weight(i);
    if (ray > lo) lo = ray;
    Rational row(0);
    for (int j = 0; j < n; ++j) row += abs(S(i, j));
    row /= ip.weight(i);
    if (row > hi) hi = row;
  }

  while (hi - lo >= tol * hi) {
    const Rational mid = (lo + hi) / Rational(2);
    MatQ P = S;
    P *= Rational(-1);
    for (int i = 0; i < n; ++i) P(i, i) += mid * ip.weight(i);
    if (psd_decide(P))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

StabilityCertificate strong_stability_certificate(const MatQ& R, const InnerProduct<Rational>& ip) {
  if (R.rows() != R.cols() || R.rows() != ip.dim())
    throw std::invalid_argument("strong_stability_certificate dimension mismatch");
  if (R.rows() > kExactDimCap)
    throw std::invalid_argument("strong_stability_certificate dimension cap exceeded");
  MatQ D = gram_defect(R, ip);  // M - R^T M R, negated below
  D *= Rational(-1);
  const PsdResult res = psd_check_rational(D);
  StabilityCertificate cert;
  if (res.psd) {
    cert.verdict = Verdict::StronglyStable;
  } else {
    cert.verdict = Verdict::NotStronglyStable;
    cert.witness = res.witness;
    cert.witness_value = res.witness_value;
  }
  return cert;
}

std::string certificate_to_json(const StabilityCertificate& cert) {
  nlohmann::ordered_json j;
  j["verdict"] = cert.verdict == Verdict::StronglyStable ? "StronglyStable" : "NotStronglyStable";
  if (cert.witness) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& c : *cert.witness) w.push_back(c.str());
    j["witness"] = w;
    j["witness_value"] = cert.witness_value.str();
  } else {
    j["witness"] = nullptr;
    j["witness_value"] = nullptr;
  }
  return j.dump();
}

std::string matrix_to_json(const MatQ& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
    data.push_back(row);
  }
  j["data"] = data;
  return j.dump();
}

}  // namespace svrk
