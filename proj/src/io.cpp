#include "hotpotato/io.hpp"

#include <fmt/format.h>

#include <ostream>
#include <variant>

#include "hotpotato/errors.hpp"

namespace hotpotato::io {

using nlohmann::json;

std::string format_real(double x) { return fmt::format("{:.16e}", x); }

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw InvalidArgument("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_real(m(i, j));
    }
    os << '\n';
  }
}

json to_json(const DecayKernel& kernel) {
  json j;
  if (const auto* e = kernel.exponential_params()) {
    j = {{"type", "exponential"}, {"lambda", e->lambda}, {"rho", e->rho}, {"gamma", e->gamma}};
  } else if (const auto* p = std::get_if<PowerLaw>(&kernel.variant())) {
    j = {{"type", "power-law"}, {"exponent", p->exponent}};
  } else {
    j = {{"type", "tabulated"}, {"name", std::get<Tabulated>(kernel.variant()).name}};
  }
  return j;
}

json to_json(const ModelParams& params) {
  return {{"kernel", to_json(params.kernel)},
          {"T", params.grid.horizon()},
          {"N", params.grid.intervals()},
          {"equidistant", params.grid.is_equidistant()},
          {"theta", params.theta},
          {"x0", params.x0},
          {"y0", params.y0}};
}

json to_json(const ModelParams& params, const EquilibriumSolution& s) {
  return {{"params", to_json(params)},
          {"v", s.v},
          {"w", s.w},
          {"xi_star", s.xi_star},
          {"eta_star", s.eta_star},
          {"cost_x", s.cost_x},
          {"cost_y", s.cost_y},
          {"mu", s.mu},
          {"beta", s.beta},
          {"kkt_residual", s.kkt_residual}};
}

json to_json(const OscillationReport& r) {
  return {{"alternating", r.alternating},
          {"sign_pattern", r.sign_pattern},
          {"num_sign_changes", r.num_sign_changes},
          {"min_abs_component", r.min_abs_component}};
}

json to_json(const ThresholdReport& r) {
  json j = {{"theta", r.theta},
            {"theta_star", r.theta_star},
            {"all_v_nonneg", r.all_v_nonneg},
            {"all_w_nonneg", r.all_w_nonneg},
            {"passed", r.passed()},
            {"points_scanned", r.points_scanned},
            {"witness", nullptr}};
  if (r.witness) {
    j["witness"] = {{"N", r.witness->intervals},
                    {"rho", r.witness->rho},
                    {"vector", std::string(1, r.witness->vector)},
                    {"index", r.witness->index},
                    {"value", r.witness->value}};
  }
  return j;
}

json to_json(const LimitReport& r) {
  json comps = json::array();
  for (const auto& [key, predicted] : r.component_limits) {
    comps.push_back({{"end", key.end == ComponentEnd::front ? "front" : "back"},
                     {"offset", key.offset},
                     {"predicted", predicted},
                     {"empirical", r.empirical_values.at(key)}});
  }
  return {{"N", r.intervals}, {"components", comps}, {"max_abs_error", r.max_abs_error}};
}

json to_json(const MonteCarloSummary& m) {
  return {{"samples", m.samples},
          {"mean_x", m.mean_x},
          {"stderr_x", m.stderr_x},
          {"mean_y", m.mean_y},
          {"stderr_y", m.stderr_y}};
}

}  // namespace hotpotato::io
