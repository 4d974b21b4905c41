#pragma once

// Command-line front end. Parsing and command execution live in the library
// so both can be tested without spawning processes.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hotpotato/kernel.hpp"

namespace hotpotato::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

enum class Command { solve, sweep_theta, sweep_n, threshold, limits, oscillation, montecarlo };
enum class OutputFormat { csv, json };

struct KernelSpec {
  std::string type = "exponential";  ///< "exponential" or "power-law"
  double lambda = 1.0;
  double rho = 1.0;
  double gamma = 0.0;
  double exponent = 0.5;

  DecayKernel make() const;
};

struct RunConfig {
  Command command = Command::solve;
  KernelSpec kernel;
  double horizon = 1.0;
  std::size_t intervals = 50;
  std::size_t n_min = 10;
  std::size_t n_max = 60;
  bool n_range_given = false;  ///< threshold scans 1..60 unless a range is given
  double theta = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.5;
  double theta_step = 0.005;
  double x0 = 1.0;
  double y0 = 1.0;
  std::string out;
  std::optional<OutputFormat> format;
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  double s0 = 100.0;
  std::vector<double> rho_set;          ///< threshold scan; empty = default
  std::size_t limit_intervals = 4096;   ///< component limits
  std::size_t path_intervals = 2048;    ///< W path limit
  std::size_t limit_count = 3;
  std::size_t v_path_intervals = 0;     ///< 0 = do not emit the V path
  bool find_delta = false;
  std::string dump_matrices;

  /// Throws InvalidArgument describing the first invalid setting.
  void validate() const;
  ModelParams model(std::size_t n) const;
  ModelParams model() const { return model(intervals); }
};

/// Either a parsed configuration or an exit code (help printed, parse error).
using ParseOutcome = std::variant<RunConfig, int>;

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes the command. The artifact goes to cfg.out if set, else to `out`;
/// the one-line summary goes to `out` when writing a file, else to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Sweep helpers shared by the CLI and the acceptance suite.
struct ThetaCost {
  double theta;
  double cost_x;
  double cost_y;
};
std::vector<double> theta_grid(double theta_min, double theta_max, double step);
std::vector<ThetaCost> sweep_theta(const RunConfig& cfg);

struct IntervalCost {
  std::size_t intervals;
  double cost_x;
  double cost_y;
};
std::vector<IntervalCost> sweep_n(const RunConfig& cfg);

}  // namespace hotpotato::cli
