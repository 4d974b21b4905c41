#pragma once

// Model ingredients: trading-time grids, decay kernels G(t) and the model
// parameter bundle. All types are immutable after construction.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hotpotato {

/// Ordered trading times 0 = t_0 < t_1 < ... < t_N = T.
class TimeGrid {
 public:
  /// Validates strict monotonicity, times.front() == 0 and at least two points.
  explicit TimeGrid(std::vector<double> times);

  std::span<const double> times() const { return times_; }
  double operator[](std::size_t k) const { return times_[k]; }
  double horizon() const { return times_.back(); }
  /// N, the number of intervals; the grid has N + 1 points.
  std::size_t intervals() const { return times_.size() - 1; }
  std::size_t size() const { return times_.size(); }

  /// True if every t_k matches k T / N to within a few ulps of T.
  bool is_equidistant() const;

 private:
  std::vector<double> times_;
};

/// Grid with times[k] = (k T) / N; rejects N == 0 and T <= 0.
TimeGrid make_equidistant_grid(std::size_t intervals, double horizon);

/// G(t) = lambda exp(-rho t) + gamma.
struct ExponentialPermanent {
  double lambda;
  double rho;
  double gamma;
};

/// G(t) = (1 + t)^(-exponent), exponent in (0, 1).
struct PowerLaw {
  double exponent;
};

/// User-supplied G. Positive definiteness is the caller's responsibility;
/// check_strictly_positive_definite can only test it on a given grid.
struct Tabulated {
  std::function<double(double)> fn;
  std::string name = "tabulated";
};

class DecayKernel {
 public:
  using Variant = std::variant<ExponentialPermanent, PowerLaw, Tabulated>;

  /// Validates parameters: lambda, rho > 0, gamma >= 0, exponent in (0, 1).
  explicit DecayKernel(Variant v);

  static DecayKernel exponential(double lambda, double rho, double gamma = 0.0) {
    return DecayKernel(ExponentialPermanent{lambda, rho, gamma});
  }
  static DecayKernel power_law(double exponent) { return DecayKernel(PowerLaw{exponent}); }
  static DecayKernel tabulated(std::function<double(double)> fn, std::string name = "tabulated") {
    return DecayKernel(Tabulated{std::move(fn), std::move(name)});
  }

  /// G(t) for t >= 0. Throws InvalidArgument for t < 0 and
  /// ModelAssumptionError if a tabulated kernel returns a non-positive value.
  double operator()(double t) const;

  const Variant& variant() const { return variant_; }
  /// Non-null only for the exponential-plus-permanent family.
  const ExponentialPermanent* exponential_params() const {
    return std::get_if<ExponentialPermanent>(&variant_);
  }
  std::string describe() const;

 private:
  Variant variant_;
};

inline double eval_kernel(const DecayKernel& k, double t) { return k(t); }

struct ModelParams {
  DecayKernel kernel;
  TimeGrid grid;
  double theta = 0.0;  ///< quadratic transaction-cost coefficient
  double x0 = 1.0;     ///< initial inventory of agent X
  double y0 = 1.0;     ///< initial inventory of agent Y

  /// Throws InvalidArgument for theta < 0 or non-finite inventories.
  void validate() const;
};

/// Default relative tolerance for the positive-definiteness surrogate.
inline constexpr double kDefaultPdTolerance = 1e-10;

/// Finite-grid surrogate for strict positive definiteness of G(|.|): builds
/// the impact matrix on the grid and checks lambda_min > tol * lambda_max.
bool check_strictly_positive_definite(const DecayKernel& kernel, const TimeGrid& grid,
                                      double tol = kDefaultPdTolerance);

}  // namespace hotpotato
