#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "smaneck/errors.hpp"
#include "smaneck/scenario.hpp"
#include "smaneck/trace_io.hpp"

using namespace smaneck;

namespace {

SimTrace short_run(double duration = 0.5) {
  auto sc = load_scenario(bundled_scenario_text());
  sc.sim.duration = duration;
  sc.sim.profile = CurrentProfile::constant(1, 7.0, duration);
  return simulate(sc.system, sc.sim);
}

bool close9(double a, double b) {
  return std::abs(a - b) <= 1e-8 * std::max(std::abs(a), std::abs(b)) + 1e-300;
}

}  // namespace

TEST(TraceColumns, Contract) {
  const auto cols = trace_columns(6);
  ASSERT_EQ(cols.size(), 20u);
  EXPECT_EQ(cols.front(), "t_s");
  EXPECT_EQ(cols[4], "T1_K");
  EXPECT_EQ(cols[10], "xi1");
  EXPECT_EQ(cols[16], "Fk1_N");
  EXPECT_EQ(cols.back(), "residual_Nm");
}

TEST(WriteTrace, LineCount) {
  auto sc = load_scenario(bundled_scenario_text());
  const auto trace = simulate(sc.system, sc.sim);
  ASSERT_EQ(trace.rows.size(), 5001u);
  std::ostringstream out;
  write_trace(trace, out);
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5002);
}

TEST(WriteTrace, RoundTrip) {
  const auto trace = short_run();
  std::stringstream buf;
  write_trace(trace, buf);
  const auto back = read_trace(buf);
  ASSERT_EQ(back.rows.size(), trace.rows.size());
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const auto& a = trace.rows[i];
    const auto& b = back.rows[i];
    EXPECT_TRUE(close9(a.time, b.time));
    EXPECT_TRUE(close9(a.pose.curvature(), b.pose.curvature()));
    EXPECT_TRUE(close9(a.bending_angle, b.bending_angle));
    EXPECT_TRUE(close9(a.reported_phi, b.reported_phi));
    for (std::size_t k = 0; k < a.springs.size(); ++k) {
      EXPECT_TRUE(close9(a.springs[k].temperature, b.springs[k].temperature));
      EXPECT_TRUE(close9(a.springs[k].fraction, b.springs[k].fraction));
    }
    for (int k = 0; k < 3; ++k) EXPECT_TRUE(close9(a.unit_forces[k], b.unit_forces[k]));
    EXPECT_TRUE(close9(a.residual_norm, b.residual_norm));
  }
}

TEST(WriteTrace, DeterministicBytes) {
  std::ostringstream a, b;
  write_trace(short_run(), a);
  write_trace(short_run(), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(WriteTrace, EmptyTraceIsAnError) {
  const auto path = std::filesystem::temp_directory_path() / "smaneck_empty_trace.csv";
  std::filesystem::remove(path);
  EXPECT_THROW(write_trace(SimTrace{}, path), std::invalid_argument);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(WriteTrace, IoFailureNamesPath) {
  try {
    write_trace(short_run(0.01), std::filesystem::path("/nonexistent-dir/x.csv"));
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}

TEST(ReadTrace, RejectsForeignHeader) {
  std::istringstream in("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_trace(in), ParseError);
}
