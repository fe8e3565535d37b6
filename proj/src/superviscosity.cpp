#include "svrk/superviscosity.hpp"

#include <vector>

namespace svrk {

namespace {

MatD left_weight(const MatD& A, const InnerProduct<double>& ip) {  // M A
  MatD out = A;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) out(i, j) *= ip.weight(i);
  return out;
}

// A^T M B
MatD gram(const MatD& A, const MatD& B, const InnerProduct<double>& ip) {
  return A.transpose() * left_weight(B, ip);
}

// sum_k beta_k (Y^k)^T M Y^k + sum_{i,j} gamma_ij (Y^i)^T B Y^j with
// B = -(Y^T M + M Y), an algebraic identity for R(Y)^T M R(Y) - M.
MatD expansion_defect(const StabilityPolynomial& poly, const MatD& Y,
                      const InnerProduct<double>& ip) {
  const EnergyExpansion exp = expand_energy(poly);
  const int s = poly.stage_count();
  const int n = Y.rows();
  std::vector<MatD> pw;
  pw.reserve(s + 1);
  pw.push_back(MatD::identity(n));
  for (int k = 1; k <= s; ++k) pw.push_back(Y * pw.back());

  MatD D(n, n);
  for (const auto& [k, bk] : exp.beta) {
    if (bk.is_zero()) continue;
    D += bk.to_double() * gram(pw[k], pw[k], ip);
  }
  const MatD MY = left_weight(Y, ip);
  MatD B = MY.transpose() + MY;
  B *= -1.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const Rational& g = exp.gamma(i, j);
      if (g.is_zero()) continue;
      D += g.to_double() * (pw[i].transpose() * (B * pw[j]));
    }
  return D;
}

}  // namespace

MatD energy_defect_matrix(const StabilityPolynomial& poly, const MatD& Z,
                          const SuperviscosityConfig<double>& cfg, Mode mode,
                          const InnerProduct<double>& ip) {
  detail::validate_superviscosity(Z, cfg, ip);
  switch (mode) {
    case Mode::Plain:
      return expansion_defect(poly, Z, ip);
    case Mode::Modified:
      return expansion_defect(poly, build_modified_generator(Z, cfg, ip), ip);
    case Mode::Filtered: {
      const MatD G = viscosity_term(Z, cfg, ip);
      const MatD R = polynomial_matrix(poly, Z);
      const MatD MG = left_weight(G, ip);
      const MatD extra = MG.transpose() + MG + G.transpose() * MG;
      return expansion_defect(poly, Z, ip) + R.transpose() * (extra * R);
    }
  }
  throw std::logic_error("unknown mode");
}

}  // namespace svrk
