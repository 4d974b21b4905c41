#include "hotpotato/impact_matrices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hotpotato/errors.hpp"

namespace hotpotato {

Matrix lower_half(const Matrix& a) {
  if (!a.square()) throw InvalidArgument("lower_half: matrix must be square");
  Matrix t(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) t(i, j) = a(i, j);
    t(i, i) = 0.5 * a(i, i);
  }
  return t;
}

Matrix build_gamma(const DecayKernel& kernel, const TimeGrid& grid) {
  const std::size_t n = grid.size();
  Matrix g(n, n);
  const double g0 = kernel(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = g0;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = kernel(grid[i] - grid[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

ImpactMatrices build_impact_matrices(const ModelParams& params) {
  params.validate();
  ImpactMatrices m;
  m.theta = params.theta;
  m.gamma = build_gamma(params.kernel, params.grid);
  m.gamma_theta = m.gamma;
  for (std::size_t i = 0; i < m.gamma.rows(); ++i) m.gamma_theta(i, i) += 2.0 * params.theta;
  m.gamma_tilde = lower_half(m.gamma);
  return m;
}

Matrix build_sum_matrix(const ModelParams& params) {
  params.validate();
  const auto& grid = params.grid;
  const std::size_t n = grid.size();
  const double g0 = params.kernel(0.0);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = 1.5 * g0 + 2.0 * params.theta;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = params.kernel(grid[i] - grid[j]);
      s(i, j) = 2.0 * v;
      s(j, i) = v;
    }
  }
  return s;
}

Matrix build_difference_matrix(const ModelParams& params) {
  params.validate();
  const auto& grid = params.grid;
  const std::size_t n = grid.size();
  const double g0 = params.kernel(0.0);
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = 0.5 * g0 + 2.0 * params.theta;
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = params.kernel(grid[j] - grid[i]);
  }
  return d;
}

ExponentialBasis build_exponential_basis(const ModelParams& params) {
  params.validate();
  const auto* kp = params.kernel.exponential_params();
  if (kp == nullptr) throw InvalidArgument("exponential basis needs an exponential kernel");
  if (!params.grid.is_equidistant()) throw InvalidArgument("exponential basis needs an equidistant grid");

  ExponentialBasis b;
  b.lambda = kp->lambda;
  b.rho = kp->rho;
  b.gamma = kp->gamma;
  b.theta = params.theta;
  b.horizon = params.grid.horizon();
  b.intervals = params.grid.intervals();
  b.a = std::exp(-b.rho * b.horizon);
  b.step_decay = std::exp(-b.rho * b.horizon / static_cast<double>(b.intervals));
  b.kappa = 2.0 * b.theta / b.lambda + 0.5;
  b.kappa_threshold = 0.5 + 2.0 * b.theta / b.lambda - b.gamma / (2.0 * b.lambda);

  const std::size_t n = b.size();
  const auto& grid = params.grid;
  b.phi = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.phi(i, j) = std::exp(-b.rho * std::abs(grid[i] - grid[j]));
  b.psi = Matrix::constant(n, n, 1.0);
  b.phi_hat = lower_half(b.phi);
  b.psi_hat = lower_half(b.psi).transpose();
  for (std::size_t i = 0; i < n; ++i) {
    b.phi_hat(i, i) += 0.5;
    b.psi_hat(i, i) -= 0.5;
  }
  return b;
}

Matrix closed_inverse_phi(const ExponentialBasis& basis) {
  const double s = basis.step_decay;
  if (!(s < 1.0)) throw InvalidArgument("closed Phi inverse needs a < 1 (rho T > 0)");
  const std::size_t n = basis.size();
  const double c = 1.0 / (1.0 - s * s);
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool boundary = (i == 0 || i + 1 == n);
    inv(i, i) = c * (boundary ? 1.0 : 1.0 + s * s);
    if (i + 1 < n) {
      inv(i, i + 1) = -c * s;
      inv(i + 1, i) = -c * s;
    }
  }
  return inv;
}

Vector closed_inverse_phi_ones(const ExponentialBasis& basis) {
  const double s = basis.step_decay;
  const std::size_t n = basis.size();
  Vector out(n, (1.0 - s) / (1.0 + s));
  out.front() = 1.0 / (1.0 + s);
  out.back() = 1.0 / (1.0 + s);
  return out;
}

Matrix closed_inverse_pi(const ExponentialBasis& basis) {
  if (basis.gamma != 0.0) throw InvalidArgument("closed Pi_N inverse requires gamma == 0");
  const std::size_t n = basis.size();
  const double k = basis.kappa;
  const double s = basis.step_decay;
  const double r = s * (k - 1.0) / k;
  const double lead = -s / (k * k);
  Matrix pi(n, n);
  // Toeplitz in (j - i): diagonal 1/kappa, then -(s/kappa^2) r^(d-1).
  Vector band(n);
  band[0] = 1.0 / k;
  double rp = 1.0;
  for (std::size_t d = 1; d < n; ++d) {
    band[d] = lead * rp;
    rp *= r;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pi(i, j) = band[j - i] / basis.lambda;
  return pi;
}

Matrix closed_inverse_phihat_alpha(const ExponentialBasis& basis, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  const std::size_t n = basis.size();
  const std::size_t N = basis.intervals;
  const double s = basis.step_decay;
  const double s2 = s * s;
  const double beta = 1.0 / (1.0 + (1.0 - s2) * alpha);
  const double mu = (1.0 - s2) * alpha;
  const double nu = (1.0 - s2) * (1.0 + alpha);

  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool first_row = (i == 0);
      const bool last_col = (j == N);
      double v = 0.0;
      if (first_row && last_col && N >= 1 && i != j) {
        v = -basis.a * alpha / (1.0 + alpha) * std::pow(beta, static_cast<double>(N));
      } else if (i == j) {
        v = (i == 0 || i == N) ? beta : (1.0 + (1.0 - s2 * s2) * alpha) * beta * beta;
      } else if (i == j + 1) {
        v = -s * beta;
      } else if (j > i) {
        const auto d = static_cast<double>(j - i);
        const double sd = std::pow(s, d);
        v = (first_row || last_col) ? -sd * std::pow(beta, d + 1.0) * mu
                                    : -sd * std::pow(beta, d + 2.0) * mu * nu;
      }
      p(i, j) = v;
    }
  }
  return p;
}

Matrix build_lambda_delta(const ExponentialBasis& basis, double delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be >= 0");
  const std::size_t n = basis.size();
  const double s = basis.step_decay;
  const double g = basis.gamma / basis.lambda;
  const double scale = 1.0 / (1.0 - s * s);

  // (1 - s^2) Phi^{-1} (Phi_hat - g Psi_hat), upper triangular.
  Matrix lam(n, n);
  lam(0, 0) = 1.0 - s * s;
  if (n > 1) lam(0, 1) = -s - g;
  for (std::size_t j = 2; j < n; ++j) lam(0, j) = -(1.0 - s) * g;
  for (std::size_t i = 1; i < n; ++i) {
    lam(i, i) = 1.0 + s * g;
    if (i + 1 < n) lam(i, i + 1) = -s - (1.0 - s + s * s) * g;
    for (std::size_t j = i + 2; j < n; ++j) lam(i, j) = -(1.0 - s) * (1.0 - s) * g;
  }
  lam *= scale;
  if (delta != 0.0) lam += delta * closed_inverse_phi(basis);
  return lam;
}

MatrixClassification classify_matrix(const Matrix& m, std::optional<double> tol) {
  if (!m.square() || m.rows() == 0) throw InvalidArgument("classify_matrix: need a nonempty square matrix");
  const std::size_t n = m.rows();
  const double norm = linalg::inf_norm(m);
  const double t = tol.value_or(1e-10 * norm);

  MatrixClassification c;
  c.is_z = true;
  for (std::size_t i = 0; i < n && c.is_z; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(i, j) > t) {
        c.is_z = false;
        break;
      }

  bool minors_positive = true;
  c.min_leading_minor = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= n; ++k) {
    const linalg::LuFactorization lu(m.leading_block(k));
    const double det = lu.determinant();
    c.min_leading_minor = std::min(c.min_leading_minor, det);
    if (!(det > 0.0) || lu.min_abs_pivot() <= 1e-12 * lu.norm()) minors_positive = false;
  }

  const linalg::LuFactorization lu(m);
  if (!lu.singular()) {
    const Matrix inv = lu.inverse();
    const double floor = -t * linalg::inf_norm(inv) / std::max(norm, std::numeric_limits<double>::min());
    c.is_inverse_positive = std::all_of(inv.data().begin(), inv.data().end(),
                                        [floor](double v) { return v >= floor; });
  }
  c.is_nonsingular_m = c.is_z && minors_positive && !lu.singular();
  return c;
}

}  // namespace hotpotato
