#include <CLI11.hpp>

#include <cmath>
#include <map>
#include <ostream>

#include "hotpotato/cli.hpp"
#include "hotpotato/errors.hpp"

namespace hotpotato::cli {

DecayKernel KernelSpec::make() const {
  if (type == "exponential") return DecayKernel::exponential(lambda, rho, gamma);
  if (type == "power-law") return DecayKernel::power_law(exponent);
  throw InvalidArgument("unknown kernel type '" + type + "' (use exponential or power-law)");
}

void RunConfig::validate() const {
  (void)kernel.make();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("--T must be > 0");
  if (intervals < 1) throw InvalidArgument("--N must be >= 1");
  if (!(theta >= 0.0)) throw InvalidArgument("--theta must be >= 0");
  if (!(theta_min >= 0.0) || !(theta_max >= theta_min)) {
    throw InvalidArgument("theta range must satisfy 0 <= theta-min <= theta-max");
  }
  if (!(theta_step > 0.0)) throw InvalidArgument("--theta-step must be > 0");
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("N range must satisfy 1 <= n-min <= n-max");
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw InvalidArgument("inventories must be finite");
  if (samples < 2) throw InvalidArgument("--samples must be >= 2");
  for (double r : rho_set) {
    if (!(r > 0.0)) throw InvalidArgument("--rho-set entries must be > 0");
  }
  if (limit_count < 1) throw InvalidArgument("--limit-count must be >= 1");
  if (limit_intervals < 2 * limit_count || path_intervals < 1) {
    throw InvalidArgument("limit grids too small for the requested components");
  }
  const bool reports = command == Command::threshold || command == Command::limits ||
                       command == Command::oscillation || command == Command::montecarlo;
  if (reports && format == OutputFormat::csv) throw InvalidArgument("this command only writes JSON");
  const bool needs_exponential = command == Command::threshold || command == Command::limits;
  if (needs_exponential && kernel.type != "exponential") {
    throw InvalidArgument("this command needs the exponential kernel");
  }
  if (command == Command::limits && kernel.gamma != 0.0) throw InvalidArgument("limits need --gamma 0");
}

ModelParams RunConfig::model(std::size_t n) const {
  return ModelParams{kernel.make(), make_equidistant_grid(n, horizon), theta, x0, y0};
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Two-agent Nash equilibrium of optimal liquidation under transient price impact"};
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  app.add_option("--kernel", cfg.kernel.type, "exponential | power-law")->capture_default_str();
  app.add_option("--lambda", cfg.kernel.lambda, "Transient impact scale")->capture_default_str();
  app.add_option("--rho", cfg.kernel.rho, "Impact decay rate")->capture_default_str();
  app.add_option("--gamma", cfg.kernel.gamma, "Permanent impact")->capture_default_str();
  app.add_option("--exponent", cfg.kernel.exponent, "Power-law exponent in (0,1)")->capture_default_str();
  app.add_option("--T", cfg.horizon, "Horizon")->capture_default_str();
  app.add_option("--N", cfg.intervals, "Number of trading intervals")->capture_default_str();
  app.add_option("--n-min", cfg.n_min, "Smallest N of a sweep / threshold scan")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "Largest N of a sweep / threshold scan")->capture_default_str();
  app.add_option("--theta", cfg.theta, "Transaction-cost coefficient")->capture_default_str();
  app.add_option("--theta-min", cfg.theta_min)->capture_default_str();
  app.add_option("--theta-max", cfg.theta_max)->capture_default_str();
  app.add_option("--theta-step", cfg.theta_step)->capture_default_str();
  app.add_option("--x0", cfg.x0, "Initial inventory of X")->capture_default_str();
  app.add_option("--y0", cfg.y0, "Initial inventory of Y")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  std::string format;
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--s0", cfg.s0, "Constant unaffected price")->capture_default_str();
  app.add_option("--rho-set", cfg.rho_set, "Threshold scan rho values (default 0.5 1 2 4 8)");
  app.add_option("--limit-N", cfg.limit_intervals, "Grid for component limits")->capture_default_str();
  app.add_option("--path-N", cfg.path_intervals, "Grid for the inventory path limit")->capture_default_str();
  app.add_option("--limit-count", cfg.limit_count, "Components per end")->capture_default_str();
  app.add_option("--v-path-N", cfg.v_path_intervals, "Also emit V on this grid (0 = off)");
  app.add_flag("--find-delta", cfg.find_delta, "Bisect the largest theta keeping w alternating");
  app.add_option("--dump-matrices", cfg.dump_matrices, "Directory for Gamma matrix CSV dumps");

  const std::map<std::string, Command> commands{{"solve", Command::solve},
                                                {"sweep-theta", Command::sweep_theta},
                                                {"sweep-n", Command::sweep_n},
                                                {"threshold", Command::threshold},
                                                {"limits", Command::limits},
                                                {"oscillation", Command::oscillation},
                                                {"montecarlo", Command::montecarlo}};
  const std::map<std::string, std::string> help{
      {"solve", "Equilibrium strategies and costs (JSON or CSV)"},
      {"sweep-theta", "Equilibrium cost over a theta range (CSV)"},
      {"sweep-n", "Equilibrium cost over a range of N (CSV)"},
      {"threshold", "Nonnegativity of v and w over an (N, rho) scan"},
      {"limits", "High-frequency limits of w and its inventory path"},
      {"oscillation", "Sign-alternation diagnostics for v and w"},
      {"montecarlo", "Realized-cost Monte Carlo against the expected cost"}};
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->fallthrough();
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  cfg.n_range_given = app.count("--n-min") + app.count("--n-max") > 0;
  if (format == "csv") cfg.format = OutputFormat::csv;
  if (format == "json") cfg.format = OutputFormat::json;
  return cfg;
}

}  // namespace hotpotato::cli
