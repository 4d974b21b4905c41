#include "hotpotato/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hotpotato/errors.hpp"

namespace hotpotato {

namespace {

Vector normalized_solution(Matrix a, const char* label) {
  const std::size_t n = a.rows();
  const linalg::LuFactorization lu(std::move(a));
  if (lu.singular()) {
    throw ModelAssumptionError(std::string(label) +
                               " is singular; the kernel is not strictly positive definite on this grid");
  }
  Vector x = lu.solve(Vector(n, 1.0));
  const double denom = linalg::sum(x);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw ModelAssumptionError(std::string(label) + " gives a non-positive normalizer 1^T A^{-1} 1");
  }
  for (double& e : x) e /= denom;
  return x;
}

void check_size(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() != n) throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

// Deviation of a stationarity vector from its mean level.
double level_and_residual(const Vector& r, double& level) {
  level = linalg::sum(r) / static_cast<double>(r.size());
  double res = 0.0;
  for (double e : r) res = std::max(res, std::abs(e - level));
  return res;
}

}  // namespace

VwPair solve_vw(const ImpactMatrices& m) {
  return {normalized_solution(m.sum(), "Gamma_theta + Gamma~"),
          normalized_solution(m.difference(), "Gamma_theta - Gamma~")};
}

Vector solve_v(const ModelParams& params) {
  return normalized_solution(build_sum_matrix(params), "Gamma_theta + Gamma~");
}

Vector solve_w(const ModelParams& params) {
  return normalized_solution(build_difference_matrix(params), "Gamma_theta - Gamma~");
}

EquilibriumSolution solve_equilibrium(const ModelParams& params) {
  const ImpactMatrices m = build_impact_matrices(params);
  auto [v, w] = solve_vw(m);

  EquilibriumSolution s;
  const double plus = 0.5 * (params.x0 + params.y0);
  const double minus = 0.5 * (params.x0 - params.y0);
  const std::size_t n = v.size();
  s.xi_star.resize(n);
  s.eta_star.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.xi_star[k] = plus * v[k] + minus * w[k];
    s.eta_star[k] = plus * v[k] - minus * w[k];
  }
  s.cost_x = expected_cost(s.xi_star, s.eta_star, m);
  s.cost_y = expected_cost(s.eta_star, s.xi_star, m);

  Vector rx = m.gamma_theta * std::span<const double>(s.xi_star);
  Vector ry = m.gamma_theta * std::span<const double>(s.eta_star);
  const Vector cx = m.gamma_tilde * std::span<const double>(s.eta_star);
  const Vector cy = m.gamma_tilde * std::span<const double>(s.xi_star);
  for (std::size_t k = 0; k < n; ++k) {
    rx[k] += cx[k];
    ry[k] += cy[k];
  }
  s.kkt_residual = std::max(level_and_residual(rx, s.mu), level_and_residual(ry, s.beta));
  s.v = std::move(v);
  s.w = std::move(w);
  return s;
}

double expected_cost(std::span<const double> xi, std::span<const double> eta, const ImpactMatrices& m) {
  check_size(xi, m.size(), "expected_cost");
  check_size(eta, m.size(), "expected_cost");
  return 0.5 * linalg::bilinear(xi, m.gamma_theta, xi) + linalg::bilinear(xi, m.gamma_tilde, eta);
}

CostReport cost_report(std::span<const double> xi, std::span<const double> eta, const ImpactMatrices& m) {
  CostReport r;
  r.quadratic_term = 0.5 * linalg::bilinear(xi, m.gamma_theta, xi);
  r.cross_term = linalg::bilinear(xi, m.gamma_tilde, eta);
  r.expected_cost_x = r.quadratic_term + r.cross_term;
  r.expected_cost_y = expected_cost(eta, xi, m);
  return r;
}

namespace {

Matrix kkt_matrix(const ImpactMatrices& m) {
  const std::size_t n = m.size();
  Matrix k(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.gamma_theta.row(i).begin(), m.gamma_theta.row(i).end(), k.row(i).begin());
    k(i, n) = 1.0;
    k(n, i) = 1.0;
  }
  return k;
}

Vector kkt_solve(const linalg::LuFactorization& lu, const ImpactMatrices& m, std::span<const double> other,
                 double z0) {
  Vector rhs = m.gamma_tilde * other;
  for (double& e : rhs) e = -e;
  rhs.push_back(z0);
  Vector sol = lu.solve(rhs);
  sol.pop_back();
  return sol;
}

}  // namespace

Vector best_response(std::span<const double> eta, double z0, const ImpactMatrices& m) {
  check_size(eta, m.size(), "best_response");
  const linalg::LuFactorization lu(kkt_matrix(m));
  if (lu.singular()) throw ModelAssumptionError("best response: KKT system is singular");
  return kkt_solve(lu, m, eta, z0);
}

BestResponseIteration iterate_best_response(const ImpactMatrices& m, Vector xi, Vector eta, double x0,
                                            double y0, double damping, std::size_t max_iterations,
                                            double tolerance) {
  const std::size_t n = m.size();
  check_size(xi, n, "iterate_best_response");
  check_size(eta, n, "iterate_best_response");
  const linalg::LuFactorization lu(kkt_matrix(m));
  if (lu.singular()) throw ModelAssumptionError("best response: KKT system is singular");

  BestResponseIteration out;
  if (damping <= 0.0) {
    // Response operator K = -[KKT^{-1}]_{xi block} Gamma~; its eigenvalues
    // bound the admissible step.
    double frob = 0.0;
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      const Vector col = kkt_solve(lu, m, e, 0.0);
      for (double c : col) frob += c * c;
      e[j] = 0.0;
    }
    const double bound = 1.0 + std::sqrt(frob);
    damping = 1.0 / (bound * bound);
  }
  out.damping = damping;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    const Vector bx = kkt_solve(lu, m, eta, x0);
    const Vector by = kkt_solve(lu, m, xi, y0);
    double step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double dx = damping * (bx[k] - xi[k]);
      const double dy = damping * (by[k] - eta[k]);
      xi[k] += dx;
      eta[k] += dy;
      step = std::max({step, std::abs(bx[k] - xi[k]), std::abs(by[k] - eta[k])});
    }
    out.iterations = it + 1;
    if (step <= tolerance) {
      out.converged = true;
      break;
    }
  }
  out.xi = std::move(xi);
  out.eta = std::move(eta);
  return out;
}

RealizedCostModel::RealizedCostModel(std::span<const double> xi, std::span<const double> eta,
                                     const ModelParams& params, double s0)
    : xi_(xi.begin(), xi.end()), eta_(eta.begin(), eta.end()) {
  params.validate();
  const auto& grid = params.grid;
  const std::size_t n = grid.size();
  check_size(xi, n, "realized cost");
  check_size(eta, n, "realized cost");
  g0_ = params.kernel(0.0);

  prices_.assign(n, s0);
  for (std::size_t k = 0; k < n; ++k) {
    double impact = 0.0;
    for (std::size_t j = 0; j < k; ++j) impact += params.kernel(grid[k] - grid[j]) * (xi_[j] + eta_[j]);
    prices_[k] = s0 - impact;
  }

  const double x0 = linalg::sum(xi_);
  const double y0 = linalg::sum(eta_);
  base_x_ = x0 * s0;
  base_y_ = y0 * s0;
  for (std::size_t k = 0; k < n; ++k) {
    base_x_ += 0.5 * g0_ * xi_[k] * xi_[k] - prices_[k] * xi_[k] + params.theta * xi_[k] * xi_[k];
    base_y_ += 0.5 * g0_ * eta_[k] * eta_[k] - prices_[k] * eta_[k] + params.theta * eta_[k] * eta_[k];
  }
}

RealizedCostSample RealizedCostModel::evaluate(const std::vector<bool>& coins) const {
  if (coins.size() != xi_.size()) throw InvalidArgument("realized cost: one coin per trading time required");
  RealizedCostSample s;
  s.cost_x = base_x_;
  s.cost_y = base_y_;
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    const double cross = g0_ * xi_[k] * eta_[k];
    if (coins[k]) {
      s.cost_x += cross;
    } else {
      s.cost_y += cross;
    }
  }
  s.coin_sequence = coins;
  return s;
}

RealizedCostSample RealizedCostModel::sample(std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  std::vector<bool> coins(xi_.size());
  for (std::size_t k = 0; k < coins.size(); ++k) coins[k] = (gen() >> 63) != 0;
  return evaluate(coins);
}

RealizedCostSample realized_cost_sample(std::span<const double> xi, std::span<const double> eta,
                                        const ModelParams& params, double s0, std::uint64_t rng_seed) {
  return RealizedCostModel(xi, eta, params, s0).sample(rng_seed);
}

MonteCarloSummary monte_carlo_costs(std::span<const double> xi, std::span<const double> eta,
                                    const ModelParams& params, double s0, std::size_t samples,
                                    std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("Monte Carlo needs at least two samples");
  const RealizedCostModel model(xi, eta, params, s0);
  // Welford accumulation keeps the variance stable for large s0 offsets.
  double mx = 0.0, my = 0.0, m2x = 0.0, m2y = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto s = model.sample(seed + i);
    const double c = static_cast<double>(i + 1);
    const double dx = s.cost_x - mx;
    mx += dx / c;
    m2x += dx * (s.cost_x - mx);
    const double dy = s.cost_y - my;
    my += dy / c;
    m2y += dy * (s.cost_y - my);
  }
  const auto n = static_cast<double>(samples);
  MonteCarloSummary out;
  out.samples = samples;
  out.mean_x = mx;
  out.mean_y = my;
  out.stderr_x = std::sqrt(m2x / (n - 1.0) / n);
  out.stderr_y = std::sqrt(m2y / (n - 1.0) / n);
  return out;
}

}  // namespace hotpotato
