#pragma once

// Independent reference computations for the tests: dense matrices written
// straight from the model definitions and solved with Eigen's LU, never with
// the library's own builders or factorization.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "hotpotato/linalg.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline std::vector<double> uniform_times(std::size_t n, double horizon) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = horizon * static_cast<double>(k) / static_cast<double>(n);
  return t;
}

/// Gamma_ij = lambda e^{-rho|t_i-t_j|} + gamma.
inline Mat gamma_exp(const std::vector<double>& t, double lambda, double rho, double gamma) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = lambda * std::exp(-rho * std::abs(t[i] - t[j])) + gamma;
  return g;
}

/// Lower triangle with halved diagonal.
inline Mat tilde(const Mat& g) {
  Mat r = g.triangularView<Eigen::StrictlyLower>();
  r.diagonal() = 0.5 * g.diagonal();
  return r;
}

struct Equilibrium {
  Vec v, w, xi, eta;
  double cost_x, cost_y;
};

inline Equilibrium equilibrium(const Mat& g, double theta, double x0, double y0) {
  const auto n = g.rows();
  const Mat gt = g + 2.0 * theta * Mat::Identity(n, n);
  const Mat tl = tilde(g);
  const Vec ones = Vec::Ones(n);
  Vec v = (gt + tl).fullPivLu().solve(ones);
  Vec w = (gt - tl).fullPivLu().solve(ones);
  v /= v.sum();
  w /= w.sum();
  Equilibrium e;
  e.v = v;
  e.w = w;
  e.xi = 0.5 * (x0 + y0) * v + 0.5 * (x0 - y0) * w;
  e.eta = 0.5 * (x0 + y0) * v - 0.5 * (x0 - y0) * w;
  e.cost_x = 0.5 * e.xi.dot(gt * e.xi) + e.xi.dot(tl * e.eta);
  e.cost_y = 0.5 * e.eta.dot(gt * e.eta) + e.eta.dot(tl * e.xi);
  return e;
}

inline Mat to_eigen(const hotpotato::linalg::Matrix& m) {
  Mat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline Vec to_eigen(const std::vector<double>& x) { return Eigen::Map<const Vec>(x.data(), x.size()); }

inline double max_abs_diff(const Vec& a, const std::vector<double>& b) { return (a - to_eigen(b)).cwiseAbs().maxCoeff(); }

inline double inf_norm(const Mat& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace oracle
