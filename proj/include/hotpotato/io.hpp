#pragma once

// CSV and JSON serialization of solutions and reports. CSV uses a header row
// and 17-significant-digit scientific notation for reals.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotpotato/asymptotics.hpp"
#include "hotpotato/equilibrium.hpp"
#include "hotpotato/kernel.hpp"

namespace hotpotato::io {

/// "%.16e": 17 significant digits, round-trips every double.
std::string format_real(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  /// Cells are written as given; use format_real for reals.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t columns_;
};

void write_matrix_csv(std::ostream& os, const Matrix& m);

nlohmann::json to_json(const DecayKernel& kernel);
nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const ModelParams& params, const EquilibriumSolution& s);
nlohmann::json to_json(const OscillationReport& r);
nlohmann::json to_json(const ThresholdReport& r);
nlohmann::json to_json(const LimitReport& r);
nlohmann::json to_json(const MonteCarloSummary& m);

}  // namespace hotpotato::io
