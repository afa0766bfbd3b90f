#include <random>

#include <gtest/gtest.h>

#include "smaneck/errors.hpp"
#include "smaneck/sma.hpp"

using namespace smaneck;

namespace {

struct Rig {
  SmaMaterial material;
  SpringGeometry geometry;
  ThermalEnvironment env;

  SpringState step(const SpringState& s, double amps, double xdot = 0.0,
                   double dt = 1e-3, StepOptions o = {}) const {
    return step_spring(material, geometry, env, s, amps, xdot, dt, o);
  }
};

}  // namespace

TEST(StepSpring, RestIsFixedPoint) {
  const Rig rig;
  const auto s = initial_spring_state(rig.env, 0.5);
  const auto n = rig.step(s, 0.0);
  EXPECT_EQ(n, s);
}

TEST(StepSpring, FractionFallsOnlyAfterAusteniteStart) {
  const Rig rig;
  auto s = initial_spring_state(rig.env, 0.5);
  bool crossed = false;
  for (int i = 0; i < 20000; ++i) {
    const auto prev = s;
    s = rig.step(s, 5.0);
    const double as = stress_shifted(rig.material, shear_stress(rig.geometry, prev.force))
                          .austenite_start;
    if (s.martensite_fraction < prev.martensite_fraction) {
      EXPECT_GT(s.temperature, as);
      crossed = true;
    } else if (!crossed) {
      EXPECT_EQ(s.martensite_fraction, 1.0);
    }
  }
  EXPECT_TRUE(crossed);
  EXPECT_EQ(s.branch, Branch::Reverse);
  EXPECT_EQ(s.fraction_at_reverse_start, 1.0);
  EXPECT_LT(s.martensite_fraction, 1.0);
}

TEST(StepSpring, CoolingReturnsTowardMartensite) {
  const Rig rig;
  auto s = initial_spring_state(rig.env, 0.5);
  for (int i = 0; i < 20000; ++i) s = rig.step(s, 6.0);
  const double hot = s.martensite_fraction;
  ASSERT_LT(hot, 0.9);
  for (int i = 0; i < 60000; ++i) s = rig.step(s, 0.0);
  EXPECT_EQ(s.branch, Branch::Forward);
  EXPECT_NEAR(s.fraction_at_forward_start, hot, 1e-3);
  EXPECT_NEAR(s.martensite_fraction, 1.0, 1e-9);
}

TEST(StepSpring, StepTooLarge) {
  const Rig rig;
  const auto s = initial_spring_state(rig.env);
  EXPECT_THROW(rig.step(s, 8.0, 0.0, 0.5), StepTooLarge);
  StepOptions loose;
  loose.max_temperature_step = 1000.0;
  EXPECT_NO_THROW(rig.step(s, 8.0, 0.0, 0.5, loose));
}

TEST(StepSpring, FrozenKineticsSteadyState) {
  const Rig rig;
  StepOptions frozen;
  frozen.freeze_kinetics = true;
  auto s = initial_spring_state(rig.env);
  for (int i = 0; i < 60000; ++i) s = rig.step(s, 5.0, 0.0, 1e-3, frozen);
  const double expected = rig.env.ambient_temperature +
                          25.0 * rig.material.resistance_martensite /
                              (rig.geometry.surface_area * rig.env.convection_coefficient);
  EXPECT_NEAR(s.temperature, expected, 0.1);
  EXPECT_EQ(s.martensite_fraction, 1.0);
}

TEST(StepSpring, StretchRaisesForce) {
  const Rig rig;
  const auto s = initial_spring_state(rig.env, 1.0);
  const auto n = rig.step(s, 0.0, 0.01);
  EXPECT_GT(n.force, s.force);
  EXPECT_NEAR(n.deflection, 1e-5, 1e-15);
}

TEST(StepSpring, FractionStaysInUnitIntervalUnderRandomProfiles) {
  const Rig rig;
  std::mt19937_64 rng(20241015);
  std::uniform_real_distribution<double> amps(0.0, 8.0);
  std::uniform_int_distribution<int> hold(50, 4000);
  std::uniform_real_distribution<double> xdot(-2e-3, 2e-3);
  auto s = initial_spring_state(rig.env, 0.5);
  int steps = 0;
  while (steps < 100000) {
    const double a = amps(rng);
    const double v = xdot(rng);
    for (int i = hold(rng); i > 0 && steps < 100000; --i, ++steps) {
      s = rig.step(s, a, v);
      ASSERT_GE(s.martensite_fraction, 0.0);
      ASSERT_LE(s.martensite_fraction, 1.0);
      ASSERT_GE(s.force, 0.0);
      ASSERT_TRUE(std::isfinite(s.temperature));
    }
  }
}
