#include "hotpotato/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hotpotato/errors.hpp"
#include "hotpotato/simd/kernels.hpp"

namespace hotpotato::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, double value) {
  return Matrix(rows, cols, value);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::leading_block(std::size_t k) const {
  if (k > rows_ || k > cols_) throw InvalidArgument("leading_block: size exceeds matrix");
  Matrix b(k, k);
  for (std::size_t i = 0; i < k; ++i)
    std::copy_n(row(i).begin(), k, b.row(i).begin());
  return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("matrix size mismatch");
  simd::axpy(1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("matrix size mismatch");
  simd::axpy(-1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  simd::scale(s, data_);
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::axpy(aik, b.row(k), ci);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: size mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("dot: size mismatch");
  return simd::dot(x, y);
}

double sum(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

double inf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double inf_norm(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix size mismatch");
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("vector size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double bilinear(std::span<const double> x, const Matrix& a, std::span<const double> y) {
  if (a.rows() != x.size() || a.cols() != y.size()) throw InvalidArgument("bilinear: size mismatch");
  const Vector ay = a * y;
  return simd::dot(x, ay);
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
  if (!lu_.square()) throw InvalidArgument("LU: matrix must be square");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  norm_ = inf_norm(lu_);
  const double threshold = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * norm_;
  min_abs_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    min_abs_pivot_ = std::min(min_abs_pivot_, best);
    if (best <= threshold) singular_ = true;
    if (best == 0.0) continue;
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
      perm_sign_ = -perm_sign_;
    }
    const double pivot = lu_(k, k);
    const auto tail = lu_.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      double& lik = lu_(i, k);
      if (lik == 0.0) continue;
      lik /= pivot;
      simd::axpy(-lik, tail, lu_.row(i).subspan(k + 1));
    }
  }
  if (n == 0) min_abs_pivot_ = 0.0;
}

double LuFactorization::determinant() const {
  double det = perm_sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

Vector LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw InvalidArgument("LU solve: right-hand side has wrong size");
  if (singular_) throw ModelAssumptionError("LU solve: matrix is numerically singular");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[perm_[i]] - simd::dot(lu_.row(i).first(i), std::span<const double>(x).first(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto upper = lu_.row(i).subspan(i + 1);
    const double s = simd::dot(upper, std::span<const double>(x).subspan(i + 1));
    x[i] = (x[i] - s) / lu_(i, i);
  }
  return x;
}

Matrix LuFactorization::inverse() const {
  const std::size_t n = lu_.rows();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

EigenRange symmetric_eigen_range(const Matrix& a) {
  if (!a.square()) throw InvalidArgument("eigenvalues: matrix must be square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  if (n == 0) throw InvalidArgument("eigenvalues: empty matrix");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = 0.5 * (a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +
                       a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ModelAssumptionError("eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace hotpotato::linalg
