#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "smaneck/equilibrium.hpp"
#include "smaneck/errors.hpp"

using namespace smaneck;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

NeckSystem neck() {
  NeckSystem s;
  s.units = default_units(0.035, 0.035, 20 * kDeg, 20.0);
  return s;
}

}  // namespace

TEST(DefaultUnits, Azimuths) {
  const auto u = default_units(0.03, 0.03, 0.0, 10.0);
  EXPECT_NEAR(u[0].azimuth, 60 * kDeg, 1e-15);
  EXPECT_NEAR(u[1].azimuth, 180 * kDeg, 1e-15);
  EXPECT_NEAR(u[2].azimuth, 300 * kDeg, 1e-15);
  EXPECT_EQ(u[2].index, 3);
}

TEST(Residual, RestIsEquilibrium) {
  EXPECT_EQ(residual(neck(), ArcPose{}, {}), Eigen::Vector3d::Zero());
}

TEST(Residual, BentWithoutForcesIsElasticOnly) {
  auto s = neck();
  s.units = default_units(0.035, 0.035, 0.0, 1e-12);
  const ArcPose p(2.0, 0.3);
  const Eigen::Vector3d r = residual(s, p, {});
  EXPECT_LT((r + elastic_moment(p, s.backbone)).norm(), 1e-12);
  EXPECT_GT(r.norm(), 0.0);
}

TEST(Residual, SingleForceOnStraightPose) {
  const auto s = neck();
  const Eigen::Vector3d r = residual(s, ArcPose{}, {0.0, 3.0, 0.0});
  EXPECT_LT((r - unit_moment(s.units[1], ArcPose{}, s.backbone, 3.0)).norm(), 1e-15);
}

TEST(Gravity, OffByDefaultAndZeroWhenStraight) {
  auto s = neck();
  EXPECT_EQ(gravity_moment(s, ArcPose(3.0, 0.0)), Eigen::Vector3d::Zero());
  s.gravity_enabled = true;
  EXPECT_LT(gravity_moment(s, ArcPose{}).norm(), 1e-15);
  EXPECT_GT(gravity_moment(s, ArcPose(3.0, 0.0)).norm(), 0.0);
}

TEST(SolvePose, UnloadedIsStraight) {
  const auto r = solve_pose(neck(), {}, ArcPose(0.5, 1.0, 0.01));
  EXPECT_NEAR(r.pose.curvature(), 0.0, 1e-9);
  EXPECT_NEAR(r.pose.twist(), 0.0, 1e-9);
  EXPECT_LT(r.residual_norm, 1e-10);
}

TEST(SolvePose, SingleUnitLocksAzimuth) {
  const auto s = neck();
  for (int k = 0; k < 3; ++k) {
    UnitForces f{};
    f[k] = 5.0;
    const auto r = solve_pose(s, f, ArcPose{});
    EXPECT_NEAR(r.pose.plane_angle(), s.units[k].azimuth, 1e-6);
    EXPECT_GT(r.pose.curvature(), 0.0);
  }
}

TEST(SolvePose, LinearizedBeam) {
  auto s = neck();
  const double force = 0.5;
  const auto r = solve_pose(s, {force, 0.0, 0.0}, ArcPose{});
  const double theta = r.pose.bending_angle(s.backbone);
  const double linear = 0.035 * force * s.backbone.length / s.backbone.bending_stiffness_y;
  ASSERT_LT(theta, 3 * kDeg);
  EXPECT_NEAR(theta, linear, 0.05 * linear);
}

TEST(SolvePose, ChartsAgree) {
  const auto s = neck();
  const UnitForces f{6.0, 1.0, 0.0};
  SolverOptions polar, cart;
  polar.chart = Chart::Polar;
  cart.chart = Chart::Cartesian;
  const auto a = solve_pose(s, f, ArcPose(1.0, 1.0), polar);
  const auto b = solve_pose(s, f, ArcPose{}, cart);
  EXPECT_NEAR(a.pose.curvature(), b.pose.curvature(), 1e-8);
  EXPECT_NEAR(a.pose.plane_angle(), b.pose.plane_angle(), 1e-7);
}

TEST(SolvePose, NoConvergenceReportsBestResidual) {
  SolverOptions o;
  o.max_iterations = 1;
  o.tolerance = 1e-300;
  try {
    solve_pose(neck(), {50.0, 0.0, 0.0}, ArcPose{}, o);
    FAIL();
  } catch (const NoConvergence& e) {
    EXPECT_GE(e.best_residual(), 0.0);
    EXPECT_EQ(e.kind(), "NoConvergence");
  }
}

TEST(NeckSystem, ValidationPaths) {
  auto s = neck();
  EXPECT_NO_THROW(s.validate());
  s.units[1].azimuth = 170 * kDeg;
  try {
    s.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "geometry.muscles.azimuths");
  }
  s = neck();
  s.env.convection_coefficient = -1.0;
  try {
    s.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "material.convection_coefficient");
  }
}
