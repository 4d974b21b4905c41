#include <gtest/gtest.h>

#include <random>

#include "hotpotato/asymptotics.hpp"
#include "hotpotato/equilibrium.hpp"
#include "hotpotato/errors.hpp"
#include "oracles.hpp"

using namespace hotpotato;

namespace {

/// w by back substitution on the upper-triangular Gamma_theta - Gamma~,
/// entries written out from the kernel: diagonal G(0)/2 + 2 theta, above the
/// diagonal G(t_j - t_i).
std::vector<double> w_backsub(std::size_t n, double lambda, double rho, double theta, double horizon) {
  const std::size_t m = n + 1;
  const double dt = horizon / static_cast<double>(n);
  std::vector<double> x(m);
  for (std::size_t i = m; i-- > 0;) {
    double r = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) r -= lambda * std::exp(-rho * dt * static_cast<double>(j - i)) * x[j];
    x[i] = r / (0.5 * lambda + 2.0 * theta);
  }
  double s = 0.0;
  for (double e : x) s += e;
  for (double& e : x) e /= s;
  return x;
}

ExponentialBasis basis(std::size_t n, double lambda, double rho, double theta, double horizon = 1.0) {
  return build_exponential_basis(
      {DecayKernel::exponential(lambda, rho), make_equidistant_grid(n, horizon), theta});
}

}  // namespace

TEST(ClosedFormU, MatchesDenseInverse) {
  for (std::size_t n : {1u, 4u, 33u}) {
    for (double theta : {0.0, 0.1, 0.6}) {
      const double lambda = 1.4, rho = 0.7, T = 2.0;
      const auto g = oracle::gamma_exp(oracle::uniform_times(n, T), lambda, rho, 0.0);
      const oracle::Mat diff = g + 2 * theta * oracle::Mat::Identity(n + 1, n + 1) - oracle::tilde(g);
      const oracle::Vec u = lambda * diff.fullPivLu().solve(oracle::Vec::Ones(n + 1));
      const auto b = basis(n, lambda, rho, theta, T);
      double partial = 0.0;
      EXPECT_EQ(closed_form_partial_sum_u(b, 0), 0.0);
      for (std::size_t k = 1; k <= n + 1; ++k) {
        partial += u(k - 1);
        EXPECT_NEAR(closed_form_u(b, k), u(k - 1), 1e-10 * std::max(1.0, std::abs(u(k - 1))));
        EXPECT_NEAR(closed_form_partial_sum_u(b, k), partial, 1e-9 * std::max(1.0, std::abs(partial)));
      }
    }
  }
}

TEST(ClosedFormU, IndexOutOfRange) {
  const auto b = basis(3, 1, 1, 0);
  EXPECT_THROW(closed_form_u(b, 0), InvalidArgument);
  EXPECT_THROW(closed_form_u(b, 5), InvalidArgument);
}

TEST(Oscillation, Detection) {
  auto r = detect_oscillation(std::vector<double>{0.5, -0.2, 0.3, -0.1});
  EXPECT_TRUE(r.alternating);
  EXPECT_EQ(r.sign_pattern, "+-+-");
  EXPECT_EQ(r.num_sign_changes, 3u);
  EXPECT_DOUBLE_EQ(r.min_abs_component, 0.1);

  r = detect_oscillation(std::vector<double>{0.5, 0.2, -0.3});
  EXPECT_FALSE(r.alternating);
  EXPECT_EQ(r.num_sign_changes, 1u);

  r = detect_oscillation(std::vector<double>{1.0, -1e-14, 1.0});
  EXPECT_FALSE(r.alternating);
  EXPECT_EQ(r.sign_pattern, "+0+");

  EXPECT_TRUE(detect_oscillation(std::vector<double>{1.0}).alternating);
}

TEST(Oscillation, LargeAlternatingComponents) {
  const ModelParams p{DecayKernel::exponential(1, 1), make_equidistant_grid(50, 1.0), 0.0};
  const auto s = solve_equilibrium(p);
  EXPECT_TRUE(detect_oscillation(s.w).alternating);
  EXPECT_TRUE(detect_oscillation(s.v).alternating);
  EXPECT_GT(linalg::inf_norm(s.v), 0.6);
  EXPECT_GT(linalg::inf_norm(s.w), 0.6);
}

TEST(Oscillation, AlternationDelta) {
  const auto k = DecayKernel::exponential(1, 1);
  const auto grid = make_equidistant_grid(50, 1.0);
  const auto delta = find_alternation_delta(k, grid);
  ASSERT_TRUE(delta.has_value());
  EXPECT_GT(*delta, 0.0);
  EXPECT_LT(*delta, 0.25);
  EXPECT_TRUE(detect_oscillation(w_backsub(50, 1, 1, *delta - 1e-5, 1.0)).alternating);
  EXPECT_FALSE(detect_oscillation(w_backsub(50, 1, 1, *delta + 1e-5, 1.0)).alternating);
  // Already non-alternating at theta = 0.
  ASSERT_FALSE(detect_oscillation(w_backsub(1, 1, 1, 0.0, 1.0)).alternating);
  EXPECT_FALSE(find_alternation_delta(k, make_equidistant_grid(1, 1.0)).has_value());
}

TEST(Threshold, PassesAtCriticalValue) {
  const std::vector<std::size_t> ns{1, 2, 3, 10, 25, 60};
  const std::vector<double> rhos{0.5, 1, 8};
  for (double gamma : {0.0, 0.5}) {
    const auto r = verify_threshold({1.0, 1.0, gamma}, 1.0, critical_theta(1.0, gamma), ns, rhos);
    EXPECT_TRUE(r.passed()) << gamma;
    EXPECT_EQ(r.points_scanned, ns.size() * rhos.size());
    EXPECT_FALSE(r.witness.has_value());
  }
}

TEST(Threshold, FailsBelowWithWitness) {
  const auto ns = default_threshold_intervals();
  const auto rhos = default_threshold_rhos();
  EXPECT_EQ(ns.front(), 1u);
  EXPECT_EQ(ns.back(), 60u);
  const auto r = verify_threshold({1.0, 1.0, 0.0}, 1.0, 0.24, ns, rhos);
  ASSERT_FALSE(r.passed());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->value, 0.0);
  if (r.witness->vector == 'w') {
    const auto w = w_backsub(r.witness->intervals, 1.0, r.witness->rho, 0.24, 1.0);
    EXPECT_NEAR(w[r.witness->index], r.witness->value, 1e-10);
  }
}

TEST(Limits, ComponentsConvergeMonotonically) {
  const ExponentialKernelParams kp{1.0, 1.0, 0.0};
  for (double theta : {0.0, 0.5}) {
    for (ComponentEnd end : {ComponentEnd::front, ComponentEnd::back}) {
      for (std::size_t off = 0; off < 3; ++off) {
        for (std::size_t parity = 0; parity < (theta == 0.0 ? 2u : 1u); ++parity) {
          double prev = 1e9;
          for (std::size_t n : {64u, 128u, 256u, 512u, 1024u}) {
            const std::size_t nn = n + parity;
            const auto w = w_backsub(nn, 1, 1, theta, 1.0);
            const double emp = end == ComponentEnd::front ? w[off] : w[w.size() - 1 - off];
            const double lim = component_limit_w(kp, 1.0, theta, end, off,
                                                 nn % 2 == 0 ? GridParity::even : GridParity::odd);
            const double err = std::abs(emp - lim);
            EXPECT_LT(err, prev + 1e-12) << "theta=" << theta << " off=" << off << " N=" << nn;
            prev = err;
          }
          EXPECT_LT(prev, 5e-3);
        }
      }
    }
  }
}

TEST(Limits, ReportAgreesWithBacksubstitution) {
  const auto r = component_limit_report({1.0, 1.0, 0.0}, 1.0, 0.0, 1001, 3);
  EXPECT_EQ(r.intervals, 1001u);
  EXPECT_EQ(r.component_limits.size(), 6u);
  const auto w = w_backsub(1001, 1, 1, 0.0, 1.0);
  double worst = 0.0;
  for (const auto& [key, emp] : r.empirical_values) {
    const double ref = key.end == ComponentEnd::front ? w[key.offset] : w[w.size() - 1 - key.offset];
    EXPECT_NEAR(emp, ref, 1e-10);
    worst = std::max(worst, std::abs(emp - r.component_limits.at(key)));
  }
  EXPECT_DOUBLE_EQ(worst, r.max_abs_error);
  EXPECT_THROW(component_limit_report({1.0, 1.0, 0.3}, 1.0, 0.0, 100, 3), InvalidArgument);
}

TEST(Limits, NormalizationLimit) {
  const ExponentialKernelParams kp{1.0, 2.0, 0.0};
  const double a = std::exp(-2.0);
  EXPECT_NEAR(normalization_limit(kp, 1.0, 0.0, GridParity::even), 2.0 + a + 1.0, 1e-14);
  EXPECT_NEAR(normalization_limit(kp, 1.0, 0.0, GridParity::odd), 2.0 - a + 1.0, 1e-14);
  EXPECT_NEAR(normalization_limit(kp, 1.0, 0.3, GridParity::odd), 3.0, 1e-14);
}

TEST(InventoryPath, Shape) {
  const auto grid = make_equidistant_grid(4, 1.0);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.15, 0.25};
  const InventoryPath path(x, grid);
  EXPECT_EQ(path(-1.0), 1.0);
  EXPECT_EQ(path(0.0), 1.0);
  EXPECT_NEAR(path(0.1), 0.9, 1e-15);
  EXPECT_NEAR(path(0.25), 0.9, 1e-15);  // trade at 0.25 not yet executed
  EXPECT_NEAR(path(0.26), 0.7, 1e-15);
  EXPECT_NEAR(path(0.99), 0.25, 1e-15);
  EXPECT_EQ(path(1.0 + 1e-9), 0.0);
  EXPECT_THROW(InventoryPath(std::vector<double>{0.5, 0.2, 0.3}, make_equidistant_grid(3, 1.0)), InvalidArgument);
  EXPECT_THROW(InventoryPath(std::vector<double>{0.5, 0.2, 0.1}, make_equidistant_grid(2, 1.0)), InvalidArgument);
}

TEST(InventoryPath, LimitOfW) {
  const double rho = 1.0, T = 1.0;
  std::vector<double> errors;
  std::vector<std::vector<double>> paths;
  for (double theta : {0.1, 1.0}) {
    const auto w = w_backsub(2048, 1.0, rho, theta, T);
    const InventoryPath path(w, make_equidistant_grid(2048, T));
    double err = 0.0;
    std::vector<double> vals;
    for (int i = 1; i <= 9; ++i) {
      const double t = i / 10.0;
      vals.push_back(path(t));
      err = std::max(err, std::abs(path(t) - inventory_limit_w(rho, T, t)));
    }
    EXPECT_LT(err, 1e-2) << theta;
    paths.push_back(vals);
  }
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(paths[0][i], paths[1][i], 0.02);
  EXPECT_DOUBLE_EQ(inventory_limit_w(rho, T, 0.0), 1.0);
  EXPECT_EQ(inventory_limit_w(rho, T, 1.5), 0.0);
}
