#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hotpotato/asymptotics.hpp"
#include "hotpotato/cli.hpp"
#include "hotpotato/equilibrium.hpp"
#include "hotpotato/errors.hpp"
#include "hotpotato/impact_matrices.hpp"
#include "hotpotato/io.hpp"
#include "hotpotato/parallel.hpp"

namespace hotpotato::cli {

namespace {

using nlohmann::json;

ExponentialKernelParams exponential_params(const RunConfig& cfg) {
  return {cfg.kernel.lambda, cfg.kernel.rho, cfg.kernel.gamma};
}

void dump_matrices(const RunConfig& cfg, const ModelParams& params) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.dump_matrices);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create " + dir.string() + ": " + ec.message());
  const auto m = build_impact_matrices(params);
  const std::pair<const char*, const Matrix*> files[] = {
      {"gamma.csv", &m.gamma}, {"gamma_theta.csv", &m.gamma_theta}, {"gamma_tilde.csv", &m.gamma_tilde}};
  for (const auto& [name, mat] : files) {
    std::ofstream f(dir / name);
    if (!f) throw InvalidArgument("cannot write " + (dir / name).string());
    io::write_matrix_csv(f, *mat);
  }
}

struct Artifact {
  std::string body;
  std::string summary;
};

Artifact cmd_solve(const RunConfig& cfg) {
  const auto params = cfg.model();
  if (!cfg.dump_matrices.empty()) dump_matrices(cfg, params);
  const auto sol = solve_equilibrium(params);
  std::string body;
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    io::CsvWriter csv(os, {"k", "t", "v", "w", "xi", "eta"});
    for (std::size_t k = 0; k < sol.v.size(); ++k) {
      csv.row({std::to_string(k), io::format_real(params.grid[k]), io::format_real(sol.v[k]),
               io::format_real(sol.w[k]), io::format_real(sol.xi_star[k]), io::format_real(sol.eta_star[k])});
    }
    body = os.str();
  } else {
    body = io::to_json(params, sol).dump(2) + "\n";
  }
  double max_v = 0.0;
  for (double x : sol.v) max_v = std::max(max_v, std::abs(x));
  return {body, fmt::format("solve N={} theta={} cost_x={:.10g} cost_y={:.10g} max|v|={:.6g} kkt={:.3g}",
                            cfg.intervals, cfg.theta, sol.cost_x, sol.cost_y, max_v, sol.kkt_residual)};
}

Artifact cmd_sweep_theta(const RunConfig& cfg) {
  const auto rows = sweep_theta(cfg);
  std::ostringstream os;
  io::CsvWriter csv(os, {"theta", "cost_x", "cost_y"});
  for (const auto& r : rows) csv.row({io::format_real(r.theta), io::format_real(r.cost_x), io::format_real(r.cost_y)});
  const auto best = std::min_element(rows.begin(), rows.end(),
                                     [](const auto& a, const auto& b) { return a.cost_x < b.cost_x; });
  return {os.str(), fmt::format("sweep-theta rows={} min cost_x={:.10g} at theta={:.6g}", rows.size(),
                                best->cost_x, best->theta)};
}

Artifact cmd_sweep_n(const RunConfig& cfg) {
  const auto rows = sweep_n(cfg);
  std::ostringstream os;
  io::CsvWriter csv(os, {"N", "cost"});
  for (const auto& r : rows) csv.row({std::to_string(r.intervals), io::format_real(r.cost_x)});
  return {os.str(), fmt::format("sweep-n rows={} N={}..{}", rows.size(), cfg.n_min, cfg.n_max)};
}

Artifact cmd_threshold(const RunConfig& cfg, bool n_range_given) {
  std::vector<std::size_t> ns;
  if (n_range_given) {
    for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) ns.push_back(n);
  } else {
    ns = default_threshold_intervals();
  }
  const auto rhos = cfg.rho_set.empty() ? default_threshold_rhos() : cfg.rho_set;
  const auto report = verify_threshold(exponential_params(cfg), cfg.horizon, cfg.theta, ns, rhos);
  std::string summary = fmt::format("threshold theta={} theta*={} points={} {}", cfg.theta, report.theta_star,
                                    report.points_scanned, report.passed() ? "PASS" : "FAIL");
  if (report.witness) {
    summary += fmt::format(" witness N={} rho={} {}[{}]={:.3g}", report.witness->intervals, report.witness->rho,
                           report.witness->vector, report.witness->index, report.witness->value);
  }
  return {io::to_json(report).dump(2) + "\n", summary};
}

Artifact cmd_limits(const RunConfig& cfg) {
  const auto kp = exponential_params(cfg);
  const auto report = component_limit_report(kp, cfg.horizon, cfg.theta, cfg.limit_intervals, cfg.limit_count);
  json j = {{"components", io::to_json(report)}, {"path", nullptr}};
  std::string summary =
      fmt::format("limits N={} theta={} max component error={:.3g}", report.intervals, cfg.theta, report.max_abs_error);
  if (cfg.theta > 0.0) {
    const auto params = cfg.model(cfg.path_intervals);
    const auto w = solve_w(params);
    const auto path = inventory_path(w, params.grid);
    // Convergence is pointwise on [0, T); the terminal block trade spreads
    // over a few ticks, so the error is measured on interior times.
    double err = 0.0;
    std::vector<double> ts;
    for (int i = 1; i <= 9; ++i) ts.push_back(cfg.horizon * i / 10.0);
    for (double t : ts) err = std::max(err, std::abs(path(t) - inventory_limit_w(cfg.kernel.rho, cfg.horizon, t)));
    j["path"] = {{"N", cfg.path_intervals}, {"t", ts}, {"max_abs_error", err}};
    summary += fmt::format(" path N={} max error={:.3g}", cfg.path_intervals, err);
  }
  return {j.dump(2) + "\n", summary};
}

Artifact cmd_oscillation(const RunConfig& cfg) {
  const auto params = cfg.model();
  const auto sol = solve_equilibrium(params);
  const auto ov = detect_oscillation(sol.v);
  const auto ow = detect_oscillation(sol.w);
  json j = {{"params", io::to_json(params)}, {"v", io::to_json(ov)}, {"w", io::to_json(ow)}};
  std::string summary = fmt::format("oscillation N={} theta={} v:{} w:{}", cfg.intervals, cfg.theta,
                                    ov.alternating ? "alternating" : "not-alternating",
                                    ow.alternating ? "alternating" : "not-alternating");
  if (cfg.find_delta) {
    const auto delta = find_alternation_delta(params.kernel, params.grid);
    j["alternation_delta"] = delta ? json(*delta) : json(nullptr);
    summary += delta ? fmt::format(" delta={:.6g}", *delta) : std::string(" delta=none");
  }
  if (cfg.v_path_intervals > 0) {
    const auto p = cfg.model(cfg.v_path_intervals);
    const auto v = solve_v(p);
    const auto path = inventory_path(v, p.grid);
    j["v_path"] = {{"N", cfg.v_path_intervals},
                   {"t", std::vector<double>(path.times().begin(), path.times().end())},
                   {"position", std::vector<double>(path.positions().begin(), path.positions().end())}};
  }
  return {j.dump(2) + "\n", summary};
}

Artifact cmd_montecarlo(const RunConfig& cfg) {
  const auto params = cfg.model();
  const auto sol = solve_equilibrium(params);
  const auto mc = monte_carlo_costs(sol.xi_star, sol.eta_star, params, cfg.s0, cfg.samples, cfg.seed);
  const double zx = std::abs(mc.mean_x - sol.cost_x) / mc.stderr_x;
  const double zy = std::abs(mc.mean_y - sol.cost_y) / mc.stderr_y;
  json j = {{"params", io::to_json(params)},
            {"s0", cfg.s0},
            {"seed", cfg.seed},
            {"monte_carlo", io::to_json(mc)},
            {"expected_cost_x", sol.cost_x},
            {"expected_cost_y", sol.cost_y},
            {"z_x", zx},
            {"z_y", zy},
            {"within_3_stderr", zx < 3.0 && zy < 3.0}};
  return {j.dump(2) + "\n",
          fmt::format("montecarlo samples={} mean_x={:.8g} expected_x={:.8g} z_x={:.3g} z_y={:.3g} {}", mc.samples,
                      mc.mean_x, sol.cost_x, zx, zy, zx < 3.0 && zy < 3.0 ? "PASS" : "FAIL")};
}

}  // namespace

std::vector<double> theta_grid(double theta_min, double theta_max, double step) {
  // Index-based so that endpoints such as 0.5 = 100 * 0.005 are hit exactly.
  const auto count = static_cast<std::size_t>(std::floor((theta_max - theta_min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = theta_min + static_cast<double>(i) * step;
  return out;
}

std::vector<ThetaCost> sweep_theta(const RunConfig& cfg) {
  const auto thetas = theta_grid(cfg.theta_min, cfg.theta_max, cfg.theta_step);
  std::vector<ThetaCost> rows(thetas.size());
  const auto kernel = cfg.kernel.make();
  const auto grid = make_equidistant_grid(cfg.intervals, cfg.horizon);
  parallel_for(thetas.size(), [&](std::size_t i) {
    const auto sol = solve_equilibrium(ModelParams{kernel, grid, thetas[i], cfg.x0, cfg.y0});
    rows[i] = {thetas[i], sol.cost_x, sol.cost_y};
  });
  return rows;
}

std::vector<IntervalCost> sweep_n(const RunConfig& cfg) {
  std::vector<IntervalCost> rows(cfg.n_max - cfg.n_min + 1);
  parallel_for(rows.size(), [&](std::size_t i) {
    const std::size_t n = cfg.n_min + i;
    const auto sol = solve_equilibrium(cfg.model(n));
    rows[i] = {n, sol.cost_x, sol.cost_y};
  });
  return rows;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    Artifact a;
    switch (cfg.command) {
      case Command::solve: a = cmd_solve(cfg); break;
      case Command::sweep_theta: a = cmd_sweep_theta(cfg); break;
      case Command::sweep_n: a = cmd_sweep_n(cfg); break;
      case Command::threshold: a = cmd_threshold(cfg, cfg.n_range_given); break;
      case Command::limits: a = cmd_limits(cfg); break;
      case Command::oscillation: a = cmd_oscillation(cfg); break;
      case Command::montecarlo: a = cmd_montecarlo(cfg); break;
    }
    if (cfg.out.empty()) {
      out << a.body;
      err << a.summary << '\n';
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write " + cfg.out);
      f << a.body;
      if (!f.flush()) throw InvalidArgument("cannot write " + cfg.out);
      out << a.summary << '\n';
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ModelAssumptionError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace hotpotato::cli
