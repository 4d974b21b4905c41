#pragma once

// Dense row-major matrices and the handful of operations the model needs.
// Inner loops go through the dispatched SIMD kernels.

#include <cstddef>
#include <span>
#include <vector>

namespace hotpotato::linalg {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix constant(std::size_t rows, std::size_t cols, double value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  /// Upper-left k x k block.
  Matrix leading_block(std::size_t k) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double inf_norm(std::span<const double> x);
/// Maximum absolute row sum.
double inf_norm(const Matrix& a);
/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
/// x^T A y
double bilinear(std::span<const double> x, const Matrix& a, std::span<const double> y);

/// LU factorization with partial pivoting, PA = LU. Rows with an exactly
/// zero multiplier are skipped, so triangular input factors in O(n^2).
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  std::size_t size() const { return lu_.rows(); }
  /// True if some pivot is below n * eps * ||A||_inf.
  bool singular() const { return singular_; }
  double determinant() const;
  double min_abs_pivot() const { return min_abs_pivot_; }
  double norm() const { return norm_; }

  /// Throws ModelAssumptionError when singular.
  Vector solve(std::span<const double> b) const;
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
  double norm_ = 0.0;
  double min_abs_pivot_ = 0.0;
  bool singular_ = false;
};

/// Smallest and largest eigenvalue of the symmetric part (A + A^T)/2.
struct EigenRange {
  double min;
  double max;
};
EigenRange symmetric_eigen_range(const Matrix& a);

}  // namespace hotpotato::linalg
