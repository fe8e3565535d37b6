#include "svrk/dg1d.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "svrk/csv.hpp"

namespace svrk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

struct RationalBlocks {
  MatQ left;    // coupling to cell j-1
  MatQ center;  // coupling to cell j
  MatQ right;   // coupling to cell j+1
};

// Blocks of h*L_alpha in the modal basis. Row n tests against P_n, column m
// multiplies the coefficient of P_m. Volume term K[n][m] = int P_m P_n' dxi;
// boundary terms use the endpoint values P_m(1) = 1 and P_m(-1) = (-1)^m.
RationalBlocks advection_blocks(int k, const Rational& alpha) {
  const int d = k + 1;
  const Rational a_minus = (Rational(1) - alpha) / Rational(2);
  const Rational a_plus = (Rational(1) + alpha) / Rational(2);
  RationalBlocks b{MatQ(d, d), MatQ(d, d), MatQ(d, d)};
  for (int n = 0; n < d; ++n) {
    const Rational scale(2 * n + 1);
    for (int m = 0; m < d; ++m) {
      const Rational K = (m < n && (m + n) % 2 == 1) ? Rational(2) : Rational(0);
      const int sign_nm = ((n + m) % 2 == 0) ? 1 : -1;
      b.center(n, m) = scale * (K - a_minus + Rational(sign_nm) * a_plus);
      b.left(n, m) = scale * a_minus * Rational(n % 2 == 0 ? 1 : -1);
      b.right(n, m) = -scale * a_plus * Rational(m % 2 == 0 ? 1 : -1);
    }
  }
  return b;
}

// alpha in [-1, 0] is the dissipative range (upwind to central); the mirrored
// range (0, 1] is allowed so the reversed-flux operator L_{-alpha} exists
void require_flux(const Rational& alpha) {
  if (alpha < Rational(-1) || alpha > Rational(1))
    throw std::invalid_argument("flux parameter alpha must lie in [-1, 1]");
}

MatD to_double_scaled(const MatQ& m, double scale) {
  MatD out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double() * scale;
  return out;
}

// Weighted transpose of a block: W(n,m) = ((2n+1)/(2m+1)) B(m,n); taking the
// three blocks crosswise (left <- right, right <- left) gives the adjoint of
// the block-circulant operator under the mass weights.
MatD weighted_block_transpose(const MatD& B) {
  MatD out(B.rows(), B.cols());
  for (int n = 0; n < B.rows(); ++n)
    for (int m = 0; m < B.cols(); ++m)
      out(n, m) = B(m, n) * (2.0 * n + 1.0) / (2.0 * m + 1.0);
  return out;
}

VecD legendre_derivatives(int k, double x) {
  VecD p = legendre_values(k, x);
  VecD dp(k + 1, 0.0);
  if (k >= 1) dp[1] = 1.0;
  for (int n = 2; n <= k; ++n) dp[n] = dp[n - 2] + (2.0 * n - 1.0) * p[n - 1];
  return dp;
}

}  // namespace

DGSpace::DGSpace(int n_cells, int degree) : N(n_cells), k(degree) {
  if (N < 2) throw std::invalid_argument("DG space needs at least two cells");
  if (k < 0 || k > 8) throw std::invalid_argument("DG degree must lie in [0, 8]");
  h = kTwoPi / N;
}

InnerProduct<double> mass_inner_product(const DGSpace& space) {
  VecD w(space.dim());
  for (int j = 0; j < space.N; ++j)
    for (int m = 0; m <= space.k; ++m) w[j * (space.k + 1) + m] = space.h / (2.0 * m + 1.0);
  return InnerProduct<double>(std::move(w));
}

InnerProduct<Rational> mass_inner_product_rational(const DGSpace& space) {
  VecQ w(space.dim());
  for (int j = 0; j < space.N; ++j)
    for (int m = 0; m <= space.k; ++m) w[j * (space.k + 1) + m] = Rational(1, 2 * m + 1);
  return InnerProduct<Rational>(std::move(w));
}

Quadrature gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("Gauss-Legendre size out of range [1, 64]");
  Quadrature q;
  q.nodes.assign(n, 0.0);
  q.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi_v<double> * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

VecD legendre_values(int k, double x) {
  VecD p(k + 1);
  p[0] = 1.0;
  if (k >= 1) p[1] = x;
  for (int n = 2; n <= k; ++n) p[n] = ((2.0 * n - 1.0) * x * p[n - 1] - (n - 1.0) * p[n - 2]) / n;
  return p;
}

MatQ build_advection_operator_rational(const DGSpace& space, const Rational& alpha) {
  require_flux(alpha);
  const RationalBlocks b = advection_blocks(space.k, alpha);
  const int d = space.k + 1;
  MatQ L(space.dim(), space.dim());
  for (int j = 0; j < space.N; ++j) {
    const int jl = (j + space.N - 1) % space.N;
    const int jr = (j + 1) % space.N;
    for (int n = 0; n < d; ++n)
      for (int m = 0; m < d; ++m) {
        L(j * d + n, j * d + m) += b.center(n, m);
        L(j * d + n, jl * d + m) += b.left(n, m);
        L(j * d + n, jr * d + m) += b.right(n, m);
      }
  }
  return L;
}

MatD build_advection_operator(const DGSpace& space, double alpha) {
  const MatQ hL = build_advection_operator_rational(space, Rational(mpq_class(alpha)));
  return to_double_scaled(hL, 1.0 / space.h);
}

LinearOp advection_linear_op(const DGSpace& space, double alpha) {
  const Rational a{mpq_class(alpha)};
  require_flux(a);
  const RationalBlocks rb = advection_blocks(space.k, a);
  const double inv_h = 1.0 / space.h;
  const auto blocks = std::make_shared<std::vector<MatD>>();
  blocks->push_back(to_double_scaled(rb.left, inv_h));
  blocks->push_back(to_double_scaled(rb.center, inv_h));
  blocks->push_back(to_double_scaled(rb.right, inv_h));
  const auto adj = std::make_shared<std::vector<MatD>>();
  adj->push_back(weighted_block_transpose((*blocks)[2]));
  adj->push_back(weighted_block_transpose((*blocks)[1]));
  adj->push_back(weighted_block_transpose((*blocks)[0]));

  const int N = space.N;
  const int d = space.k + 1;
  const auto circulant_apply = [N, d](const std::vector<MatD>& blk, const VecD& v) {
    VecD out(static_cast<std::size_t>(N) * d, 0.0);
    for (int j = 0; j < N; ++j) {
      const int jl = (j + N - 1) % N;
      const int jr = (j + 1) % N;
      for (int n = 0; n < d; ++n) {
        double acc = 0;
        for (int m = 0; m < d; ++m)
          acc += blk[0](n, m) * v[jl * d + m] + blk[1](n, m) * v[j * d + m] +
                 blk[2](n, m) * v[jr * d + m];
        out[j * d + n] = acc;
      }
    }
    return out;
  };

  LinearOp op;
  op.dim = space.dim();
  op.apply = [blocks, circulant_apply](const VecD& v) { return circulant_apply(*blocks, v); };
  op.apply_adjoint = [adj, circulant_apply](const VecD& v) { return circulant_apply(*adj, v); };
  return op;
}

DGFunction l2_project(const std::function<double(double)>& f, const DGSpace& space) {
  const Quadrature q = gauss_legendre(space.k + 5);
  const int d = space.k + 1;
  std::vector<VecD> basis(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) basis[i] = legendre_values(space.k, q.nodes[i]);

  DGFunction u;
  u.coeffs.assign(space.dim(), 0.0);
  for (int j = 0; j < space.N; ++j) {
    const double c = space.cell_center(j);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double fx = f(c + 0.5 * space.h * q.nodes[i]);
      for (int m = 0; m < d; ++m)
        u.coeffs[j * d + m] += 0.5 * (2.0 * m + 1.0) * q.weights[i] * fx * basis[i][m];
    }
  }
  return u;
}

double evaluate(const DGFunction& u, const DGSpace& space, double x) {
  int j = static_cast<int>(std::floor(x / space.h));
  if (j < 0) j = 0;
  if (j >= space.N) j = space.N - 1;
  const double xi = 2.0 * (x - space.cell_center(j)) / space.h;
  const VecD p = legendre_values(space.k, xi);
  double acc = 0;
  for (int m = 0; m <= space.k; ++m) acc += u.coeffs[j * (space.k + 1) + m] * p[m];
  return acc;
}

double entropy_flux(double a, double b) { return (a * a + a * b + b * b) / 6.0; }

DGFunction burgers_rhs(const DGFunction& u, const DGSpace& space) {
  if (static_cast<int>(u.coeffs.size()) != space.dim())
    throw std::invalid_argument("burgers_rhs dimension mismatch");
  const int d = space.k + 1;
  const int N = space.N;
  const Quadrature q = gauss_legendre(2 * space.k + 1);
  const std::size_t nq = q.nodes.size();
  std::vector<VecD> basis(nq), dbasis(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    basis[i] = legendre_values(space.k, q.nodes[i]);
    dbasis[i] = legendre_derivatives(space.k, q.nodes[i]);
  }

  // Interface traces: u^- from the cell's right endpoint, u^+ from its left.
  VecD u_minus(N, 0.0), u_plus(N, 0.0);
  for (int j = 0; j < N; ++j)
    for (int m = 0; m < d; ++m) {
      const double c = u.coeffs[j * d + m];
      u_minus[j] += c;
      u_plus[j] += (m % 2 == 0) ? c : -c;
    }
  VecD fhat(N);  // fhat[j] is the flux at interface j+1/2
  for (int j = 0; j < N; ++j) fhat[j] = entropy_flux(u_minus[j], u_plus[(j + 1) % N]);

  DGFunction rhs;
  rhs.coeffs.assign(space.dim(), 0.0);
  for (int j = 0; j < N; ++j) {
    const int jm = (j + N - 1) % N;
    for (int n = 0; n < d; ++n) {
      double volume = 0;
      for (std::size_t i = 0; i < nq; ++i) {
        double uq = 0;
        for (int m = 0; m < d; ++m) uq += u.coeffs[j * d + m] * basis[i][m];
        volume += q.weights[i] * (0.5 * uq * uq) * dbasis[i][n];
      }
      const double boundary = -fhat[j] + (n % 2 == 0 ? 1.0 : -1.0) * fhat[jm];
      rhs.coeffs[j * d + n] = (2.0 * n + 1.0) / space.h * (volume + boundary);
    }
  }
  return rhs;
}

ErrorNorms error_norms(const DGFunction& u, const std::function<double(double)>& exact,
                       const DGSpace& space) {
  const Quadrature q = gauss_legendre(space.k + 5);
  ErrorNorms e;
  double l2sq = 0;
  for (int j = 0; j < space.N; ++j) {
    const double c = space.cell_center(j);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double x = c + 0.5 * space.h * q.nodes[i];
      const double diff = evaluate(u, space, x) - exact(x);
      e.l1 += 0.5 * space.h * q.weights[i] * std::abs(diff);
      l2sq += 0.5 * space.h * q.weights[i] * diff * diff;
      e.linf = std::max(e.linf, std::abs(diff));
    }
    for (const double xi : {-1.0, 1.0}) {
      double trace = 0;
      const VecD p = legendre_values(space.k, xi);
      for (int m = 0; m <= space.k; ++m) trace += u.coeffs[j * (space.k + 1) + m] * p[m];
      const double x = xi < 0 ? space.cell_left(j) : space.cell_left(j) + space.h;
      e.linf = std::max(e.linf, std::abs(trace - exact(x)));
    }
  }
  e.l2 = std::sqrt(l2sq);
  return e;
}

double burgers_reference(double x, double T) {
  double u = std::sin(x);
  for (int it = 0; it < 100; ++it) {
    const double arg = x - u * T;
    const double r = u - std::sin(arg);
    const double dr = 1.0 + T * std::cos(arg);
    const double du = r / dr;
    u -= du;
    if (std::abs(du) < 1e-14) return u;
  }
  throw std::runtime_error("Burgers characteristic solve did not converge (post-shock time?)");
}

std::string dg_coeffs_csv(const DGFunction& u, const DGSpace& space) {
  std::ostringstream os;
  os << "cell,mode,coefficient\n";
  for (int j = 0; j < space.N; ++j)
    for (int m = 0; m <= space.k; ++m)
      os << j << ',' << m << ',' << format_sci(u.coeffs[j * (space.k + 1) + m]) << '\n';
  return os.str();
}

std::string dg_samples_csv(const DGFunction& u, const DGSpace& space, int samples_per_cell) {
  if (samples_per_cell < 1) throw std::invalid_argument("samples_per_cell must be positive");
  std::ostringstream os;
  os << "x,u\n";
  for (int j = 0; j < space.N; ++j)
    for (int s = 0; s < samples_per_cell; ++s) {
      const double x = space.cell_left(j) + (s + 0.5) * space.h / samples_per_cell;
      os << format_sci(x) << ',' << format_sci(evaluate(u, space, x)) << '\n';
    }
  return os.str();
}

}  // namespace svrk
