#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "hotpotato/errors.hpp"
#include "hotpotato/io.hpp"

using namespace hotpotato;

TEST(Io, RealsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.7397097342}) {
    const auto s = io::format_real(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
  }
  EXPECT_EQ(io::format_real(0.5), "5.0000000000000000e-01");
}

TEST(Io, CsvWriter) {
  std::ostringstream os;
  io::CsvWriter csv(os, {"a", "b"});
  csv.row({"1", io::format_real(2.0)});
  EXPECT_EQ(os.str(), "a,b\n1,2.0000000000000000e+00\n");
  EXPECT_THROW(csv.row({"1"}), InvalidArgument);
}

TEST(Io, MatrixCsv) {
  std::ostringstream os;
  io::write_matrix_csv(os, Matrix::identity(2));
  EXPECT_EQ(os.str(),
            "1.0000000000000000e+00,0.0000000000000000e+00\n0.0000000000000000e+00,1.0000000000000000e+00\n");
}

TEST(Io, SolutionJson) {
  const ModelParams p{DecayKernel::exponential(1, 2, 0.5), make_equidistant_grid(3, 1.0), 0.1, 1.0, -1.0};
  const auto s = solve_equilibrium(p);
  const auto j = io::to_json(p, s);
  for (const char* key : {"params", "v", "w", "xi_star", "eta_star", "cost_x", "cost_y", "kkt_residual"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["params"]["kernel"]["type"], "exponential");
  EXPECT_EQ(j["params"]["N"], 3);
  // Doubles survive a dump/parse cycle bit for bit.
  const auto back = nlohmann::json::parse(j.dump());
  EXPECT_EQ(back["w"].get<std::vector<double>>(), s.w);
  EXPECT_EQ(back["cost_x"].get<double>(), s.cost_x);
}

TEST(Io, ReportsJson) {
  ThresholdReport r;
  r.theta = 0.2;
  r.all_w_nonneg = false;
  r.witness = ThresholdWitness{7, 0.5, 'w', 6, -1e-3};
  auto j = io::to_json(r);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["witness"]["N"], 7);
  EXPECT_EQ(j["witness"]["vector"], "w");

  EXPECT_EQ(io::to_json(detect_oscillation(std::vector<double>{1, -1}))["sign_pattern"], "+-");
  EXPECT_EQ(io::to_json(DecayKernel::power_law(0.3))["type"], "power-law");
  EXPECT_EQ(io::to_json(MonteCarloSummary{10, 1, 0.1, 2, 0.2})["samples"], 10);
}
