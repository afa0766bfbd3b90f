#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "smaneck/errors.hpp"
#include "smaneck/scenario.hpp"

using namespace smaneck;

namespace {

Scenario bundled() { return load_scenario(bundled_scenario_text()); }

}  // namespace

TEST(CurrentProfile, HalfOpenSegments) {
  const CurrentProfile p({{1, 0.0, 1.0, 3.0}, {1, 1.0, 2.0, 4.0}, {2, 0.5, 1.5, 1.0}});
  EXPECT_EQ(p.current(1, 0.0), 3.0);
  EXPECT_EQ(p.current(1, 1.0), 4.0);
  EXPECT_EQ(p.current(1, 2.0), 0.0);
  EXPECT_EQ(p.current(2, 0.4), 0.0);
  EXPECT_EQ(p.current(3, 0.7), 0.0);
  EXPECT_NO_THROW(p.validate());
}

TEST(CurrentProfile, RejectsBadSegments) {
  EXPECT_THROW(CurrentProfile({{1, 1.0, 0.5, 1.0}}).validate(), ValidationError);
  EXPECT_THROW(CurrentProfile({{1, -1.0, 0.5, 1.0}}).validate(), ValidationError);
  EXPECT_THROW(CurrentProfile({{4, 0.0, 0.5, 1.0}}).validate(), ValidationError);
  try {
    CurrentProfile({{1, 0.0, 1.0, 1.0}, {1, 0.5, 2.0, 1.0}}).validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "profile.1");
  }
}

TEST(Simulate, ZeroCurrentStaysStraight) {
  auto sc = bundled();
  sc.sim.profile = CurrentProfile{};
  sc.sim.duration = 1.0;
  const auto trace = simulate(sc.system, sc.sim);
  ASSERT_EQ(trace.rows.size(), 1001u);
  for (const auto& row : trace.rows) {
    EXPECT_EQ(row.bending_angle, 0.0);
    EXPECT_FALSE(row.phi_defined);
  }
  EXPECT_EQ(trace.max_bending_angle(), 0.0);
}

TEST(Simulate, RowsHaveOneSamplePerFiber) {
  auto sc = bundled();
  sc.sim.duration = 0.05;
  const auto trace = simulate(sc.system, sc.sim);
  ASSERT_EQ(trace.rows.size(), 51u);
  EXPECT_EQ(trace.rows.back().springs.size(), 6u);
  EXPECT_NEAR(trace.rows.back().time, 0.05, 1e-15);
  EXPECT_GT(trace.rows.back().springs[0].temperature, trace.rows.back().springs[2].temperature);
}

TEST(Simulate, Deterministic) {
  auto sc = bundled();
  sc.sim.duration = 1.0;
  const auto a = simulate(sc.system, sc.sim);
  const auto b = simulate(sc.system, sc.sim);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].pose, b.rows[i].pose);
    EXPECT_EQ(a.rows[i].springs[0].temperature, b.rows[i].springs[0].temperature);
  }
}

TEST(Simulate, ThermalStepErrorCarriesTime) {
  auto sc = bundled();
  sc.sim.dt = 0.2;
  sc.sim.profile = CurrentProfile::constant(1, 8.0, 5.0);
  try {
    simulate(sc.system, sc.sim);
    FAIL();
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.kind(), "StepTooLarge");
    EXPECT_NEAR(e.time(), 0.2, 1e-12);
  }
}

TEST(Sweep, MonotoneFineCurrents) {
  const auto sc = bundled();
  const auto rows = sweep(sc.system, sc.sim, 1, {4.0, 4.25, 4.5, 4.75, 5.0}, 5.0);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_FALSE(rows[i].error);
    EXPECT_GT(rows[i].max_bending_angle, rows[i - 1].max_bending_angle);
  }
}

TEST(Sweep, DegenerateAndDuplicateRows) {
  auto sc = bundled();
  const auto rows = sweep(sc.system, sc.sim, 2, {4.5, 4.5}, 2.0);
  EXPECT_EQ(rows[0].max_bending_angle, rows[1].max_bending_angle);
  sc.sim.duration = 2.0;
  sc.sim.profile = CurrentProfile::constant(2, 4.5, 2.0);
  EXPECT_EQ(simulate(sc.system, sc.sim).max_bending_angle(), rows[0].max_bending_angle);
}

TEST(Sweep, RejectsEmptyInput) {
  const auto sc = bundled();
  EXPECT_THROW(sweep(sc.system, sc.sim, 1, {}, 5.0), std::invalid_argument);
}
