#include <gtest/gtest.h>

#include <random>

#include "hotpotato/errors.hpp"
#include "hotpotato/linalg.hpp"
#include "oracles.hpp"

using namespace hotpotato::linalg;

namespace {

Matrix random_matrix(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix a(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = d(rng);
  return a;
}

}  // namespace

TEST(Matrix, BasicShapes) {
  const auto id = Matrix::identity(3);
  EXPECT_EQ(id(1, 1), 1.0);
  EXPECT_EQ(id(0, 2), 0.0);
  EXPECT_TRUE(id.square());
  const auto c = Matrix::constant(2, 3, 4.0);
  EXPECT_EQ(c.rows(), 2u);
  EXPECT_EQ(c.cols(), 3u);
  EXPECT_EQ(c.transpose().rows(), 3u);
  EXPECT_EQ(sum(c.data()), 24.0);
}

TEST(Matrix, ProductsMatchEigen) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 3u, 17u, 40u}) {
    const auto a = random_matrix(n, n + 2, rng);
    const auto b = random_matrix(n + 2, n, rng);
    const oracle::Mat ref = oracle::to_eigen(a) * oracle::to_eigen(b);
    EXPECT_LT((oracle::to_eigen(a * b) - ref).cwiseAbs().maxCoeff(), 1e-13);

    std::vector<double> x(n + 2, 0.5);
    x[0] = -3.0;
    const oracle::Vec ax = oracle::to_eigen(a) * oracle::to_eigen(x);
    EXPECT_LT(oracle::max_abs_diff(ax, a * x), 1e-13);
    EXPECT_NEAR(bilinear(std::vector<double>(n, 1.0), a, x), ax.sum(), 1e-12);
  }
}

TEST(Matrix, LeadingBlockAndArithmetic) {
  std::mt19937_64 rng(2);
  const auto a = random_matrix(5, 5, rng);
  const auto blk = a.leading_block(3);
  EXPECT_EQ(blk.rows(), 3u);
  EXPECT_EQ(blk(2, 1), a(2, 1));
  EXPECT_EQ(max_abs_diff((a + a) - 2.0 * a, Matrix(5, 5)), 0.0);
  EXPECT_DOUBLE_EQ(inf_norm(Matrix::constant(2, 4, -1.5)), 6.0);
}

TEST(Lu, SolveAndDeterminantMatchEigen) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 9u, 60u}) {
    const auto a = random_matrix(n, n, rng);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<double>(i) - 1.5;
    LuFactorization lu(a);
    ASSERT_FALSE(lu.singular());
    const oracle::Mat ea = oracle::to_eigen(a);
    const oracle::Vec x = ea.fullPivLu().solve(oracle::to_eigen(b));
    EXPECT_LT(oracle::max_abs_diff(x, lu.solve(b)), 1e-9);
    EXPECT_NEAR(lu.determinant(), ea.determinant(), 1e-9 * std::abs(ea.determinant()) + 1e-300);
    const oracle::Mat inv = oracle::to_eigen(lu.inverse());
    EXPECT_LT((inv * ea - oracle::Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Lu, UpperTriangularInput) {
  Matrix u(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) u(i, j) = 1.0 + static_cast<double>(i + j);
  LuFactorization lu(u);
  EXPECT_DOUBLE_EQ(lu.determinant(), 1.0 * 3.0 * 5.0 * 7.0);
  const auto x = lu.solve(std::vector<double>{1, 1, 1, 1});
  const auto back = u * x;
  for (double e : back) EXPECT_NEAR(e, 1.0, 1e-14);
}

TEST(Lu, SingularDetected) {
  Matrix a = Matrix::constant(3, 3, 1.0);
  LuFactorization lu(a);
  EXPECT_TRUE(lu.singular());
  EXPECT_THROW(lu.solve(std::vector<double>{1, 1, 1}), hotpotato::ModelAssumptionError);
  EXPECT_EQ(lu.determinant(), 0.0);
}

TEST(Eigen, SymmetricRange) {
  Matrix a(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 2.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const auto r = symmetric_eigen_range(a);
  EXPECT_NEAR(r.min, 1.0, 1e-14);
  EXPECT_NEAR(r.max, 3.0, 1e-14);
  // Only the symmetric part counts.
  a(0, 1) = 3.0;
  a(1, 0) = -1.0;
  EXPECT_NEAR(symmetric_eigen_range(a).max, 3.0, 1e-14);
}
