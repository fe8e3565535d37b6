#include "svrk/energy_expansion.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace svrk {

namespace {

using Key = std::pair<int, int>;  // (i, j) with i >= j
using TermMap = std::map<Key, Rational>;

void add_term(TermMap& m, Key k, const Rational& c) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, c);
  else
    it->second += c;
}

// Symmetric Gaussian elimination; all pivots positive iff positive definite.
bool positive_definite(MatQ m) {
  const int n = m.rows();
  for (int k = 0; k < n; ++k) {
    if (m(k, k).sign() <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      const Rational f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

}  // namespace

EnergyExpansion expand_energy(const StabilityPolynomial& poly) {
  validate_polynomial(poly);
  const int s = poly.stage_count();
  const auto& a = poly.coeffs;

  // Seed: ||R(Z)u||^2 - ||u||^2 = sum over (i,j) != (0,0) of a_i a_j P(i,j),
  // folded onto i >= j.
  TermMap p_terms, q_terms;
  for (int i = 0; i <= s; ++i)
    for (int j = 0; j <= i; ++j) {
      if (i == 0 && j == 0) continue;
      Rational c = a[i] * a[j];
      if (i != j) c *= Rational(2);
      if (!c.is_zero()) add_term(p_terms, {i, j}, c);
    }

  // Eliminate off-diagonal P terms. Each rewrite strictly reduces the total
  // index gap, so the loop terminates; linearity makes the result independent
  // of the processing order.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = p_terms.begin(); it != p_terms.end(); ++it) {
      const int i = it->first.first;
      const int j = it->first.second;
      if (i == j) continue;
      const Rational c = it->second;
      p_terms.erase(it);
      if (!c.is_zero()) {
        if (i - j >= 2) {
          add_term(p_terms, {i - 1, j + 1}, -c);
          add_term(q_terms, {i - 1, j}, -c);
        } else {
          add_term(q_terms, {j, j}, -(c / Rational(2)));
        }
      }
      changed = true;
      break;
    }
  }

  EnergyExpansion exp;
  exp.p = poly.order;
  for (int k = 1; k <= s; ++k) {
    const auto it = p_terms.find({k, k});
    exp.beta[k] = (it == p_terms.end()) ? Rational(0) : it->second;
  }

  exp.gamma = MatQ(s, s);
  for (const auto& [key, c] : q_terms) {
    const auto [i, j] = key;
    if (i == j) {
      exp.gamma(i, i) = c;
    } else {
      const Rational half = c / Rational(2);
      exp.gamma(i, j) = half;
      exp.gamma(j, i) = half;
    }
  }

  exp.k_star = 0;
  for (int k = 1; k <= s; ++k)
    if (!exp.beta.at(k).is_zero()) {
      exp.k_star = k;
      break;
    }
  if (exp.k_star == 0) throw std::logic_error("energy expansion has no nonzero beta coefficient");

  exp.leading_submatrix = exp.gamma.block(0, 0, exp.k_star, exp.k_star);
  return exp;
}

int leading_index(const EnergyExpansion& exp, int p) {
  const int expected = (p + 2) / 2;  // ceil((p + 1) / 2)
  if (exp.k_star != expected)
    throw std::logic_error("leading energy index does not match the method order");
  return exp.k_star;
}

CriticalBounds critical_bounds(const EnergyExpansion& exp, int p) {
  CriticalBounds out;
  out.nu0 = -(exp.beta.at(exp.k_star) / Rational(2));
  if (p % 2 != 0) return out;

  // Schur complement of the leading submatrix [[A, b], [b^T, c]].
  const int k = exp.k_star;
  const MatQ A = exp.leading_submatrix.block(0, 0, k - 1, k - 1);
  MatQ negA = A;
  negA *= Rational(-1);
  if (!positive_definite(negA))
    throw std::invalid_argument("leading submatrix block is not negative definite");

  VecQ b(k - 1);
  for (int i = 0; i < k - 1; ++i) b[i] = exp.leading_submatrix(i, k - 1);
  const VecQ x = solve_linear(A, b);
  Rational mu0 = exp.leading_submatrix(k - 1, k - 1);
  for (int i = 0; i < k - 1; ++i) mu0 -= b[i] * x[i];
  out.mu0 = mu0;
  return out;
}

std::string expansion_to_json(const EnergyExpansion& exp) {
  nlohmann::ordered_json j;
  j["p"] = exp.p;
  nlohmann::ordered_json beta = nlohmann::ordered_json::object();
  for (const auto& [k, c] : exp.beta) beta[std::to_string(k)] = c.str();
  j["beta"] = beta;
  nlohmann::ordered_json gamma = nlohmann::ordered_json::array();
  for (int i = 0; i < exp.gamma.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < exp.gamma.cols(); ++c) row.push_back(exp.gamma(i, c).str());
    gamma.push_back(row);
  }
  j["gamma"] = gamma;
  j["k_star"] = exp.k_star;
  const CriticalBounds cb = critical_bounds(exp, exp.p);
  j["nu0"] = cb.nu0.str();
  if (cb.mu0)
    j["mu0"] = cb.mu0->str();
  else
    j["mu0"] = nullptr;
  return j.dump(2);
}

}  // namespace svrk
