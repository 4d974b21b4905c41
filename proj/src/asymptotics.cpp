#include "hotpotato/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "hotpotato/equilibrium.hpp"
#include "hotpotato/errors.hpp"
#include "hotpotato/parallel.hpp"

namespace hotpotato {

namespace {

void require_pure_exponential(double gamma) {
  if (gamma != 0.0) throw InvalidArgument("closed forms and limits require gamma == 0");
}

struct UTerms {
  double inv_kappa;
  double ratio;  // s / (kappa (1 - s) + s)
  double r;      // s (kappa - 1) / kappa
};

UTerms u_terms(const ExponentialBasis& b) {
  const double k = b.kappa;
  const double s = b.step_decay;
  return {1.0 / k, s / (k * (1.0 - s) + s), s * (k - 1.0) / k};
}

double sign_floor(std::span<const double> x) { return -kSignTolerance * linalg::inf_norm(x); }

// Most negative component, or nullopt if x is nonnegative within tolerance.
std::optional<std::pair<std::size_t, double>> first_violation(std::span<const double> x) {
  const double floor = sign_floor(x);
  const auto it = std::min_element(x.begin(), x.end());
  if (*it >= floor) return std::nullopt;
  return std::make_pair(static_cast<std::size_t>(it - x.begin()), *it);
}

}  // namespace

double closed_form_u(const ExponentialBasis& basis, std::size_t n) {
  require_pure_exponential(basis.gamma);
  if (n < 1 || n > basis.intervals + 1) throw InvalidArgument("closed_form_u: index out of range");
  const auto t = u_terms(basis);
  const auto m = static_cast<double>(basis.intervals + 1 - n);
  return t.inv_kappa * (1.0 - t.ratio + t.ratio * std::pow(t.r, m));
}

double closed_form_partial_sum_u(const ExponentialBasis& basis, std::size_t n) {
  require_pure_exponential(basis.gamma);
  if (n > basis.intervals + 1) throw InvalidArgument("closed_form_partial_sum_u: index out of range");
  if (n == 0) return 0.0;
  const auto t = u_terms(basis);
  const auto nn = static_cast<double>(n);
  const auto tail = static_cast<double>(basis.intervals + 1 - n);
  const double geometric = std::pow(t.r, tail) * (std::pow(t.r, nn) - 1.0) / (t.r - 1.0);
  return t.inv_kappa * (nn * (1.0 - t.ratio) + t.ratio * geometric);
}

OscillationReport detect_oscillation(std::span<const double> x, double tol) {
  if (x.empty()) throw InvalidArgument("detect_oscillation: empty vector");
  OscillationReport r;
  r.sign_pattern.reserve(x.size());
  r.min_abs_component = std::abs(x[0]);
  int previous = 0;
  bool alternating = true;
  for (std::size_t k = 0; k < x.size(); ++k) {
    r.min_abs_component = std::min(r.min_abs_component, std::abs(x[k]));
    const int sign = x[k] > tol ? 1 : (x[k] < -tol ? -1 : 0);
    r.sign_pattern.push_back(sign > 0 ? '+' : (sign < 0 ? '-' : '0'));
    if (sign == 0) {
      alternating = false;
      continue;
    }
    if (previous != 0 && sign != previous) ++r.num_sign_changes;
    if (k > 0 && sign == previous) alternating = false;
    previous = sign;
  }
  // A zero between two nonzeros already broke alternation above.
  r.alternating = alternating;
  return r;
}

OscillationReport detect_oscillation(std::span<const double> x) {
  return detect_oscillation(x, kSignTolerance * linalg::inf_norm(x));
}

std::optional<double> find_alternation_delta(const DecayKernel& kernel, const TimeGrid& grid,
                                             std::optional<double> upper, double resolution) {
  if (!upper) {
    const auto* kp = kernel.exponential_params();
    if (kp == nullptr) throw InvalidArgument("find_alternation_delta: give an upper bound for this kernel");
    upper = critical_theta(kp->lambda, kp->gamma);
  }
  auto alternates = [&](double theta) {
    return detect_oscillation(solve_w(ModelParams{kernel, grid, theta, 1.0, -1.0})).alternating;
  };
  if (!alternates(0.0)) return std::nullopt;
  double lo = 0.0;
  double hi = *upper;
  if (alternates(hi)) return hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (alternates(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<std::size_t> default_threshold_intervals() {
  std::vector<std::size_t> n(60);
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = i + 1;
  return n;
}

std::vector<double> default_threshold_rhos() { return {0.5, 1.0, 2.0, 4.0, 8.0}; }

ThresholdReport verify_threshold(const ExponentialKernelParams& kernel, double horizon, double theta,
                                 std::span<const std::size_t> intervals, std::span<const double> rhos) {
  if (intervals.empty() || rhos.empty()) throw InvalidArgument("threshold scan sets must be nonempty");
  ThresholdReport report;
  report.theta = theta;
  report.theta_star = critical_theta(kernel.lambda, kernel.gamma);

  struct PointResult {
    std::optional<std::pair<std::size_t, double>> v_bad;
    std::optional<std::pair<std::size_t, double>> w_bad;
  };
  const std::size_t points = intervals.size() * rhos.size();
  std::vector<PointResult> results(points);
  parallel_for(points, [&](std::size_t p) {
    const std::size_t N = intervals[p / rhos.size()];
    const double rho = rhos[p % rhos.size()];
    const ModelParams params{DecayKernel::exponential(kernel.lambda, rho, kernel.gamma),
                             make_equidistant_grid(N, horizon), theta, 1.0, 1.0};
    results[p].v_bad = first_violation(solve_v(params));
    results[p].w_bad = first_violation(solve_w(params));
  });

  for (std::size_t p = 0; p < points; ++p) {
    const auto& r = results[p];
    if (r.v_bad) report.all_v_nonneg = false;
    if (r.w_bad) report.all_w_nonneg = false;
    if (!report.witness && (r.v_bad || r.w_bad)) {
      const bool use_v = r.v_bad.has_value();
      const auto& bad = use_v ? *r.v_bad : *r.w_bad;
      report.witness = ThresholdWitness{intervals[p / rhos.size()], rhos[p % rhos.size()],
                                        use_v ? 'v' : 'w', bad.first, bad.second};
    }
  }
  report.points_scanned = points;
  return report;
}

double normalization_limit(const ExponentialKernelParams& kernel, double horizon, double theta,
                           GridParity parity) {
  require_pure_exponential(kernel.gamma);
  if (!(theta >= 0.0)) throw InvalidArgument("theta must be >= 0");
  const double rt = kernel.rho * horizon;
  if (theta > 0.0) return rt + 1.0;
  const double a = std::exp(-rt);
  return parity == GridParity::even ? rt + a + 1.0 : rt - a + 1.0;
}

double component_limit_w(const ExponentialKernelParams& kernel, double horizon, double theta,
                         ComponentEnd end, std::size_t offset, GridParity parity) {
  require_pure_exponential(kernel.gamma);
  if (!(theta >= 0.0)) throw InvalidArgument("theta must be >= 0");
  const double rt = kernel.rho * horizon;
  const double alt = (offset % 2 == 0) ? 1.0 : -1.0;
  if (theta == 0.0) {
    const double a = std::exp(-rt);
    const double norm = normalization_limit(kernel, horizon, theta, parity);
    if (end == ComponentEnd::back) return alt * 2.0 / norm;
    const double lead = parity == GridParity::even ? 1.0 : -1.0;
    return lead * alt * 2.0 * a / norm;
  }
  if (end == ComponentEnd::front) return 0.0;
  const double lam = kernel.lambda;
  const double q = (4.0 * theta - lam) / (4.0 * theta + lam);
  return std::pow(q, static_cast<double>(offset)) * 2.0 * lam / ((rt + 1.0) * (4.0 * theta + lam));
}

LimitReport component_limit_report(const ExponentialKernelParams& kernel, double horizon, double theta,
                                   std::size_t intervals, std::size_t count) {
  require_pure_exponential(kernel.gamma);
  if (count == 0 || 2 * count > intervals + 1) throw InvalidArgument("limit report: bad component count");
  const ModelParams params{DecayKernel::exponential(kernel.lambda, kernel.rho, 0.0),
                           make_equidistant_grid(intervals, horizon), theta, 1.0, -1.0};
  const Vector w = solve_w(params);
  const GridParity parity = intervals % 2 == 0 ? GridParity::even : GridParity::odd;

  LimitReport r;
  r.intervals = intervals;
  for (ComponentEnd end : {ComponentEnd::front, ComponentEnd::back}) {
    for (std::size_t off = 0; off < count; ++off) {
      const ComponentKey key{end, off};
      const double predicted = component_limit_w(kernel, horizon, theta, end, off, parity);
      const double empirical = end == ComponentEnd::front ? w[off] : w[intervals - off];
      r.component_limits[key] = predicted;
      r.empirical_values[key] = empirical;
      r.max_abs_error = std::max(r.max_abs_error, std::abs(predicted - empirical));
    }
  }
  return r;
}

InventoryPath::InventoryPath(std::span<const double> strategy, const TimeGrid& grid)
    : times_(grid.times().begin(), grid.times().end()) {
  if (strategy.size() != grid.size()) throw InvalidArgument("inventory path: strategy/grid size mismatch");
  const double total = linalg::sum(strategy);
  if (std::abs(total - 1.0) > 1e-8 * std::max(1.0, linalg::inf_norm(strategy))) {
    throw InvalidArgument("inventory path: strategy must sum to one");
  }
  positions_.resize(strategy.size());
  double remaining = 1.0;
  for (std::size_t k = 0; k < strategy.size(); ++k) {
    remaining -= strategy[k];
    positions_[k] = remaining;
  }
  positions_.back() = 0.0;
}

double InventoryPath::operator()(double t) const {
  if (t <= 0.0) return 1.0;
  // Number of trading times strictly before t.
  const auto before = static_cast<std::size_t>(std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
  return positions_[before - 1];
}

double inventory_limit_w(double rho, double horizon, double t) {
  if (t > horizon) return 0.0;
  return (rho * (horizon - t) + 1.0) / (rho * horizon + 1.0);
}

}  // namespace hotpotato
