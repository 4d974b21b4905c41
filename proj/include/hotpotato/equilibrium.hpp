#pragma once

// Nash equilibrium of the two-agent liquidation game: the fundamental
// strategies v and w, equilibrium strategies, expected and realized costs,
// and best responses.
//
// Cost convention: expected costs exclude the book-value term X0 * S0_0,
// which does not depend on the strategy. Realized costs include it, so the
// Monte Carlo average of a realized cost matches the expected cost exactly.

#include <cstdint>
#include <vector>

#include "hotpotato/impact_matrices.hpp"
#include "hotpotato/kernel.hpp"

namespace hotpotato {

struct VwPair {
  Vector v;  ///< (Gamma_theta + Gamma~)^{-1} 1, normalized to sum 1
  Vector w;  ///< (Gamma_theta - Gamma~)^{-1} 1, normalized to sum 1
};

/// Throws ModelAssumptionError if a system is singular or a normalizing
/// denominator is not strictly positive.
VwPair solve_vw(const ImpactMatrices& m);

/// Same as the corresponding half of solve_vw, without building the other
/// matrices. solve_w is O(N^2) since Gamma_theta - Gamma~ is triangular.
Vector solve_v(const ModelParams& params);
Vector solve_w(const ModelParams& params);

struct EquilibriumSolution {
  Vector v;
  Vector w;
  Vector xi_star;   ///< shares sold by X at each t_k
  Vector eta_star;  ///< shares sold by Y at each t_k
  double cost_x = 0.0;
  double cost_y = 0.0;
  double mu = 0.0;    ///< mean of Gamma_theta xi* + Gamma~ eta*
  double beta = 0.0;  ///< mean of Gamma_theta eta* + Gamma~ xi*
  double kkt_residual = 0.0;  ///< max deviation of either stationarity vector from its mean
};

EquilibriumSolution solve_equilibrium(const ModelParams& params);

/// 1/2 xi^T Gamma_theta xi + xi^T Gamma~ eta.
double expected_cost(std::span<const double> xi, std::span<const double> eta, const ImpactMatrices& m);

struct CostReport {
  double expected_cost_x = 0.0;
  double expected_cost_y = 0.0;
  double quadratic_term = 0.0;  ///< 1/2 xi^T Gamma_theta xi
  double cross_term = 0.0;      ///< xi^T Gamma~ eta
};

CostReport cost_report(std::span<const double> xi, std::span<const double> eta, const ImpactMatrices& m);

/// Minimizer of 1/2 xi^T Gamma_theta xi + xi^T Gamma~ eta subject to
/// sum(xi) = z0, from the bordered KKT system. By symmetry of the cost this
/// is also Y's best response to a given xi.
Vector best_response(std::span<const double> eta, double z0, const ImpactMatrices& m);

struct BestResponseIteration {
  Vector xi;
  Vector eta;
  std::size_t iterations = 0;
  bool converged = false;
  double damping = 0.0;
};

/// Damped simultaneous best-response iteration
///   (xi, eta) <- (1 - w)(xi, eta) + w (BR(eta), BR(xi)).
/// The undamped map is generally not a contraction. With damping <= 0 a step
/// size 1 / (1 + ||K||_F)^2 is used, where K is the response operator.
BestResponseIteration iterate_best_response(const ImpactMatrices& m, Vector xi, Vector eta, double x0,
                                            double y0, double damping = 0.0,
                                            std::size_t max_iterations = 2'000'000,
                                            double tolerance = 1e-12);

struct RealizedCostSample {
  double cost_x = 0.0;
  double cost_y = 0.0;
  std::vector<bool> coin_sequence;  ///< eps_k = 1: Y executes first at t_k, X pays the cross term
};

/// Realized costs for fixed deterministic strategies with the unaffected price
/// held at s0. The affected price path is computed once; each sample only
/// draws the execution-order coins.
class RealizedCostModel {
 public:
  RealizedCostModel(std::span<const double> xi, std::span<const double> eta, const ModelParams& params,
                    double s0);

  RealizedCostSample evaluate(const std::vector<bool>& coins) const;
  /// Coins drawn from a 64-bit Mersenne Twister seeded with `seed`.
  RealizedCostSample sample(std::uint64_t seed) const;

  std::span<const double> prices() const { return prices_; }

 private:
  Vector xi_;
  Vector eta_;
  Vector prices_;  ///< S at t_k, before the trades at t_k
  double g0_ = 0.0;
  double base_x_ = 0.0;
  double base_y_ = 0.0;
};

RealizedCostSample realized_cost_sample(std::span<const double> xi, std::span<const double> eta,
                                        const ModelParams& params, double s0, std::uint64_t rng_seed);

struct MonteCarloSummary {
  std::size_t samples = 0;
  double mean_x = 0.0;
  double stderr_x = 0.0;
  double mean_y = 0.0;
  double stderr_y = 0.0;
};

/// Sample i uses seed `seed + i`.
MonteCarloSummary monte_carlo_costs(std::span<const double> xi, std::span<const double> eta,
                                    const ModelParams& params, double s0, std::size_t samples,
                                    std::uint64_t seed);

}  // namespace hotpotato
