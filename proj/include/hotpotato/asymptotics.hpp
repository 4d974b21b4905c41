#pragma once

// Oscillation diagnostics, the critical transaction-cost threshold, closed
// forms for the exponential kernel without permanent impact, and the
// high-frequency limits of the fundamental strategy w and its inventory path.
//
// Index conventions: vectors are 0-based, entry k is the trade at t_k.
// Component limits are addressed by an offset from the front (offset 0 is
// the first trade) or from the back (offset 0 is the last trade).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hotpotato/impact_matrices.hpp"
#include "hotpotato/kernel.hpp"

namespace hotpotato {

/// Relative sign tolerance used throughout: 1e-10 * ||x||_inf.
inline constexpr double kSignTolerance = 1e-10;

// ---------------------------------------------------------------------------
// Closed forms (gamma == 0)

/// Component n (1-based, 1 <= n <= N + 1) of u = lambda Pi_N 1.
double closed_form_u(const ExponentialBasis& basis, std::size_t n);

/// sum_{m=1}^{n} u_m; n = 0 gives 0.
double closed_form_partial_sum_u(const ExponentialBasis& basis, std::size_t n);

// ---------------------------------------------------------------------------
// Oscillation

struct OscillationReport {
  bool alternating = false;
  std::string sign_pattern;  ///< one of '+', '-', '0' per component
  std::size_t num_sign_changes = 0;
  double min_abs_component = 0.0;
};

/// Components with |x_k| <= tol are treated as zero. Alternating means no
/// zeros and opposite signs for every adjacent pair.
OscillationReport detect_oscillation(std::span<const double> x, double tol);
/// Uses tol = kSignTolerance * ||x||_inf.
OscillationReport detect_oscillation(std::span<const double> x);

/// Largest theta (to `resolution`) such that w stays strictly alternating on
/// [0, theta], located by bisection between 0 and `upper` (defaults to the
/// threshold (lambda + gamma) / 4). Returns nullopt if w does not alternate
/// at theta = 0.
std::optional<double> find_alternation_delta(const DecayKernel& kernel, const TimeGrid& grid,
                                             std::optional<double> upper = std::nullopt,
                                             double resolution = 1e-6);

// ---------------------------------------------------------------------------
// Threshold

struct ExponentialKernelParams {
  double lambda = 1.0;
  double rho = 1.0;  ///< ignored where a rho scan set is supplied
  double gamma = 0.0;
};

inline double critical_theta(double lambda, double gamma) { return (lambda + gamma) / 4.0; }

struct ThresholdWitness {
  std::size_t intervals = 0;
  double rho = 0.0;
  char vector = 'v';  ///< 'v' or 'w'
  std::size_t index = 0;
  double value = 0.0;
};

struct ThresholdReport {
  double theta = 0.0;
  double theta_star = 0.0;
  bool all_v_nonneg = true;
  bool all_w_nonneg = true;
  std::optional<ThresholdWitness> witness;  ///< first violation in scan order
  std::size_t points_scanned = 0;

  bool passed() const { return all_v_nonneg && all_w_nonneg; }
};

/// Default scan sets used by the CLI.
std::vector<std::size_t> default_threshold_intervals();
std::vector<double> default_threshold_rhos();

/// Checks componentwise nonnegativity of v and w (tolerance
/// -kSignTolerance * ||.||_inf) over every (N, rho) of the scan. The scan
/// runs N-major, rho-minor, in the given order.
ThresholdReport verify_threshold(const ExponentialKernelParams& kernel, double horizon, double theta,
                                 std::span<const std::size_t> intervals, std::span<const double> rhos);

// ---------------------------------------------------------------------------
// High-frequency limits (gamma == 0)

enum class GridParity { even, odd };
enum class ComponentEnd { front, back };

/// lim 1^T lambda Pi_N 1 along N of the given parity.
double normalization_limit(const ExponentialKernelParams& kernel, double horizon, double theta,
                           GridParity parity);

/// Predicted limit of w^(N) at `offset` from the given end as N grows along
/// the given parity (parity is irrelevant for theta > 0).
double component_limit_w(const ExponentialKernelParams& kernel, double horizon, double theta,
                         ComponentEnd end, std::size_t offset, GridParity parity);

struct ComponentKey {
  ComponentEnd end;
  std::size_t offset;
  friend auto operator<=>(const ComponentKey&, const ComponentKey&) = default;
};

struct LimitReport {
  std::size_t intervals = 0;
  std::map<ComponentKey, double> component_limits;
  std::map<ComponentKey, double> empirical_values;
  double max_abs_error = 0.0;
};

/// Compares w^(N) with its predicted limits at the first `count` front and
/// back offsets.
LimitReport component_limit_report(const ExponentialKernelParams& kernel, double horizon, double theta,
                                   std::size_t intervals, std::size_t count);

/// Piecewise-constant remaining inventory 1 - sum_{t_j < t} x_j of a
/// sum-one strategy.
class InventoryPath {
 public:
  InventoryPath(std::span<const double> strategy, const TimeGrid& grid);

  std::span<const double> times() const { return times_; }
  /// positions()[k]: inventory held on (t_k, t_{k+1}], i.e. after trade k.
  std::span<const double> positions() const { return positions_; }
  /// 1 for t <= 0, 0 for t > T.
  double operator()(double t) const;

 private:
  std::vector<double> times_;
  std::vector<double> positions_;
};

inline InventoryPath inventory_path(std::span<const double> strategy, const TimeGrid& grid) {
  return InventoryPath(strategy, grid);
}

/// Limit of W^(N)_t for theta > 0: (rho (T - t) + 1) / (rho T + 1) on [0, T),
/// 0 beyond T.
double inventory_limit_w(double rho, double horizon, double t);

}  // namespace hotpotato
