#pragma once

#include <functional>
#include <string>

#include "svrk/linop.hpp"
#include "svrk/matrix.hpp"

namespace svrk {

// Periodic 1D DG space on [0, 2pi]: N uniform cells, degree-k un-normalized
// Legendre modes per cell (P_m on the reference cell [-1, 1]). The mass
// matrix is diagonal with cell-independent weights h/(2m+1).
struct DGSpace {
  int N = 0;
  int k = 0;
  double h = 0;

  DGSpace(int n_cells, int degree);

  int dim() const { return N * (k + 1); }
  double cell_left(int j) const { return h * j; }
  double cell_center(int j) const { return h * (j + 0.5); }
};

// Modal coefficients, cell-major: coeffs[j*(k+1) + m].
struct DGFunction {
  VecD coeffs;
};

InnerProduct<double> mass_inner_product(const DGSpace& space);

// Rational mass weights with the common positive factor h dropped (1/(2m+1)
// per mode). Uniform positive scaling leaves operator norms and stability
// certificates unchanged and keeps everything rational.
InnerProduct<Rational> mass_inner_product_rational(const DGSpace& space);

// Gauss-Legendre rule on [-1, 1].
struct Quadrature {
  VecD nodes;
  VecD weights;
};
Quadrature gauss_legendre(int n);

// P_0..P_k at x.
VecD legendre_values(int k, double x);

// L_alpha, the weak-form advection operator for u_t = -u_x with interface
// flux u_hat = ((1-alpha)/2) u^- + ((1+alpha)/2) u^+, alpha in [-1, 1].
// Dissipative runs use [-1, 0] (upwind to central); (0, 1] exists so the
// reversed-flux operator L_{-alpha} of the adjoint identity is constructible.
// Includes the 1/h mass scaling; block circulant with a one-cell stencil.
MatD build_advection_operator(const DGSpace& space, double alpha);

// Exact variant of h*L_alpha (rational for rational alpha), so the scaled
// step operator Z = cfl * (h L) is exact for a rational CFL number tau/h.
MatQ build_advection_operator_rational(const DGSpace& space, const Rational& alpha);

// Matrix-free L_alpha with its mass-weighted adjoint.
LinearOp advection_linear_op(const DGSpace& space, double alpha);

// Per-cell L2 projection with k+5 Gauss points.
DGFunction l2_project(const std::function<double(double)>& f, const DGSpace& space);

// Point evaluation of the modal expansion (cell chosen by floor(x/h)).
double evaluate(const DGFunction& u, const DGSpace& space, double x);

// Entropy-conservative two-point Burgers flux (a^2 + ab + b^2)/6.
double entropy_flux(double a, double b);

// Semi-discrete Burgers right-hand side with the entropy-conservative flux;
// the volume term uses 2k+1 Gauss points (exact for the degree-(3k-1)
// integrand, which is what makes <rhs(u), u> vanish).
DGFunction burgers_rhs(const DGFunction& u, const DGSpace& space);

struct ErrorNorms {
  double l1 = 0;
  double l2 = 0;
  double linf = 0;
};

// L1/L2 by k+5-point Gauss quadrature per cell; Linf over the quadrature
// points plus both endpoint traces of every cell.
ErrorNorms error_norms(const DGFunction& u, const std::function<double(double)>& exact,
                       const DGSpace& space);

// Pre-shock Burgers reference for u(x,0) = sin(x): solves u = sin(x - u*T)
// by Newton iteration to 1e-14.
double burgers_reference(double x, double T);

// CSV dumps: modal coefficients as (cell,mode,coefficient); point samples as
// (x,u) at samples_per_cell uniform interior points per cell.
std::string dg_coeffs_csv(const DGFunction& u, const DGSpace& space);
std::string dg_samples_csv(const DGFunction& u, const DGSpace& space, int samples_per_cell = 10);

}  // namespace svrk
