#include "hotpotato/kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hotpotato/errors.hpp"
#include "hotpotato/impact_matrices.hpp"
#include "hotpotato/linalg.hpp"

namespace hotpotato {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw InvalidArgument("time grid needs at least two points");
  if (times_.front() != 0.0) throw InvalidArgument("time grid must start at t = 0");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || !(times_[k] > times_[k - 1])) {
      throw InvalidArgument("time grid must be strictly increasing and finite");
    }
  }
}

bool TimeGrid::is_equidistant() const {
  const double T = horizon();
  const auto N = static_cast<double>(intervals());
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * T;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (std::abs(times_[k] - (static_cast<double>(k) * T) / N) > tol) return false;
  }
  return true;
}

TimeGrid make_equidistant_grid(std::size_t intervals, double horizon) {
  if (intervals == 0) throw InvalidArgument("grid needs N >= 1 intervals");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("grid needs T > 0");
  std::vector<double> times(intervals + 1);
  const auto N = static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) times[k] = (static_cast<double>(k) * horizon) / N;
  times.back() = horizon;
  return TimeGrid(std::move(times));
}

namespace {

struct Validator {
  void operator()(const ExponentialPermanent& p) const {
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw InvalidArgument("kernel needs lambda > 0");
    if (!(p.rho > 0.0) || !std::isfinite(p.rho)) throw InvalidArgument("kernel needs rho > 0");
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw InvalidArgument("kernel needs gamma >= 0");
  }
  void operator()(const PowerLaw& p) const {
    if (!(p.exponent > 0.0 && p.exponent < 1.0)) {
      throw InvalidArgument("power-law exponent must lie in (0, 1)");
    }
  }
  void operator()(const Tabulated& p) const {
    if (!p.fn) throw InvalidArgument("tabulated kernel needs a callable");
  }
};

struct Evaluator {
  double t;
  double operator()(const ExponentialPermanent& p) const {
    return p.lambda * std::exp(-p.rho * t) + p.gamma;
  }
  double operator()(const PowerLaw& p) const { return std::pow(1.0 + t, -p.exponent); }
  double operator()(const Tabulated& p) const {
    const double g = p.fn(t);
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ModelAssumptionError("tabulated kernel '" + p.name + "' is not positive at t = " +
                                 std::to_string(t));
    }
    return g;
  }
};

}  // namespace

DecayKernel::DecayKernel(Variant v) : variant_(std::move(v)) { std::visit(Validator{}, variant_); }

double DecayKernel::operator()(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("decay kernel evaluated at negative time");
  return std::visit(Evaluator{t}, variant_);
}

std::string DecayKernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* e = std::get_if<ExponentialPermanent>(&variant_)) {
    os << "exponential(lambda=" << e->lambda << ", rho=" << e->rho << ", gamma=" << e->gamma << ")";
  } else if (const auto* p = std::get_if<PowerLaw>(&variant_)) {
    os << "power-law(exponent=" << p->exponent << ")";
  } else {
    os << std::get<Tabulated>(variant_).name;
  }
  return os.str();
}

void ModelParams::validate() const {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be >= 0");
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw InvalidArgument("inventories must be finite");
}

bool check_strictly_positive_definite(const DecayKernel& kernel, const TimeGrid& grid, double tol) {
  try {
    const linalg::Matrix gamma = build_gamma(kernel, grid);
    const auto range = linalg::symmetric_eigen_range(gamma);
    return range.min > tol * range.max && range.max > 0.0;
  } catch (const ModelAssumptionError&) {
    return false;
  }
}

}  // namespace hotpotato
