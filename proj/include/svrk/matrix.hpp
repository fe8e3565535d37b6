#pragma once

#include <stdexcept>
#include <vector>

#include "svrk/rational.hpp"

namespace svrk {

// Dense row-major matrix over double or Rational.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const T& ail = a(i, l);
        for (int j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<T> y(rows_, T(0));
    for (int i = 0; i < rows_; ++i) {
      T acc(0);
      for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  Matrix block(int row0, int col0, int nrows, int ncols) const {
    Matrix b(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<T> a_;
};

using MatD = Matrix<double>;
using MatQ = Matrix<Rational>;
using VecD = std::vector<double>;
using VecQ = std::vector<Rational>;

// Weighted inner product <u, v> = sum_i u_i w_i v_i with positive diagonal
// weights (a diagonal mass matrix).
template <class T>
class InnerProduct {
 public:
  explicit InnerProduct(std::vector<T> weights) : w_(std::move(weights)) {
    for (const auto& w : w_)
      if (!(T(0) < w)) throw std::invalid_argument("inner product weights must be positive");
  }

  static InnerProduct uniform(int n) { return InnerProduct(std::vector<T>(n, T(1))); }

  int dim() const { return static_cast<int>(w_.size()); }
  const std::vector<T>& weights() const { return w_; }
  const T& weight(int i) const { return w_[i]; }

  T dot(const std::vector<T>& u, const std::vector<T>& v) const {
    if (u.size() != w_.size() || v.size() != w_.size())
      throw std::invalid_argument("inner product dimension mismatch");
    T acc(0);
    for (std::size_t i = 0; i < w_.size(); ++i) acc += u[i] * w_[i] * v[i];
    return acc;
  }

  T norm_sq(const std::vector<T>& u) const { return dot(u, u); }

 private:
  std::vector<T> w_;
};

// Adjoint of A with respect to the weighted inner product: M^{-1} A^T M.
// Satisfies <Av, w> = <v, adjoint(A)w>.
template <class T>
Matrix<T> adjoint(const Matrix<T>& A, const InnerProduct<T>& ip) {
  if (A.rows() != A.cols() || A.rows() != ip.dim())
    throw std::invalid_argument("adjoint dimension mismatch");
  Matrix<T> B(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) B(i, j) = ip.weight(j) * A(j, i) / ip.weight(i);
  return B;
}

// Exact dense solve A x = b over the rationals. Throws on singular A.
VecQ solve_linear(const MatQ& A, const VecQ& b);

}  // namespace svrk
