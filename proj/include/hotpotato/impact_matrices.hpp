#pragma once

// Structured matrices of the two-agent propagator game: the impact matrix
// Gamma_ij = G(|t_i - t_j|), its transaction-cost shift, the strictly
// causal half Gamma~, the exponential-kernel basis and the closed-form
// inverses that come with it.

#include <cstddef>
#include <optional>

#include "hotpotato/kernel.hpp"
#include "hotpotato/linalg.hpp"

namespace hotpotato {

using linalg::Matrix;
using linalg::Vector;

/// Lower-triangular part of A with the diagonal halved, so that
/// tilde(A) + tilde(A)^T = A for symmetric A.
Matrix lower_half(const Matrix& a);

Matrix build_gamma(const DecayKernel& kernel, const TimeGrid& grid);

struct ImpactMatrices {
  Matrix gamma;        ///< Gamma_ij = G(|t_i - t_j|)
  Matrix gamma_theta;  ///< Gamma + 2 theta Id
  Matrix gamma_tilde;  ///< lower triangle of Gamma, diagonal G(0)/2
  double theta = 0.0;

  std::size_t size() const { return gamma.rows(); }
  Matrix sum() const { return gamma_theta + gamma_tilde; }         ///< Gamma_theta + Gamma~
  Matrix difference() const { return gamma_theta - gamma_tilde; }  ///< Gamma_theta - Gamma~
};

ImpactMatrices build_impact_matrices(const ModelParams& params);

/// Gamma_theta + Gamma~ and Gamma_theta - Gamma~ assembled directly from the
/// kernel without materialising the other matrices. The difference is upper
/// triangular for every kernel.
Matrix build_sum_matrix(const ModelParams& params);
Matrix build_difference_matrix(const ModelParams& params);

/// Exponential-kernel decomposition Gamma = lambda Phi + gamma Psi on an
/// equidistant grid.
struct ExponentialBasis {
  Matrix phi;      ///< exp(-rho |t_i - t_j|)
  Matrix psi;      ///< all ones
  Matrix phi_hat;  ///< lower_half(Phi) + Id/2
  Matrix psi_hat;  ///< lower_half(Psi)^T - Id/2, i.e. strictly upper ones
  double lambda = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double horizon = 0.0;
  std::size_t intervals = 0;
  double a = 0.0;                ///< exp(-rho T)
  double step_decay = 0.0;       ///< a^(1/N) = exp(-rho T / N)
  double kappa = 0.0;            ///< 2 theta / lambda + 1/2
  double kappa_threshold = 0.0;  ///< 1/2 + 2 theta / lambda - gamma / (2 lambda)

  std::size_t size() const { return intervals + 1; }
};

/// Requires an ExponentialPermanent kernel and an equidistant grid.
ExponentialBasis build_exponential_basis(const ModelParams& params);

/// Tridiagonal closed form of Phi^{-1}.
Matrix closed_inverse_phi(const ExponentialBasis& basis);

/// Closed form of Phi^{-1} 1.
Vector closed_inverse_phi_ones(const ExponentialBasis& basis);

/// Upper-triangular closed form Pi_N of (Gamma_theta - Gamma~)^{-1} for a
/// purely exponential kernel (gamma == 0).
Matrix closed_inverse_pi(const ExponentialBasis& basis);

/// Closed form of (Phi_hat + alpha Phi)^{-1}, alpha >= 0.
Matrix closed_inverse_phihat_alpha(const ExponentialBasis& basis, double alpha);

/// Lambda_delta = Phi^{-1}(Phi_hat - (gamma/lambda) Psi_hat) + delta Phi^{-1},
/// assembled from the explicit upper-triangular product and the closed Phi^{-1}.
Matrix build_lambda_delta(const ExponentialBasis& basis, double delta);

struct MatrixClassification {
  bool is_z = false;
  bool is_nonsingular_m = false;
  bool is_inverse_positive = false;
  double min_leading_minor = 0.0;
};

/// Z-matrix test, leading principal minors and inverse positivity.
/// `tol` defaults to 1e-10 * ||M||_inf. Off-diagonal entries <= tol count as
/// nonpositive; inverse entries >= -tol * ||M^{-1}||_inf / ||M||_inf count as
/// nonnegative.
MatrixClassification classify_matrix(const Matrix& m, std::optional<double> tol = std::nullopt);

}  // namespace hotpotato
