#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "smaneck/backbone.hpp"

using namespace smaneck;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(ArcPose, FoldsNegativeCurvature) {
  const ArcPose p(-2.0, 0.25);
  EXPECT_EQ(p.curvature(), 2.0);
  EXPECT_NEAR(p.plane_angle(), 0.25 + kPi, 1e-15);
}

TEST(ArcPose, CartesianRoundTrip) {
  const auto p = ArcPose::from_cartesian(-1.5, 2.0, 0.1);
  EXPECT_NEAR(p.curvature(), 2.5, 1e-15);
  EXPECT_NEAR(p.kappa_x(), -1.5, 1e-14);
  EXPECT_NEAR(p.kappa_y(), 2.0, 1e-14);
  EXPECT_EQ(p.twist(), 0.1);
}

TEST(WrapAngle, IntoHalfOpenCircle) {
  EXPECT_NEAR(wrap_angle(-0.5), 2 * kPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_angle(7.0), 7.0 - 2 * kPi, 1e-15);
  EXPECT_EQ(wrap_angle(0.0), 0.0);
}

TEST(ArcPosition, Straight) {
  const BackboneGeometry g;
  const auto p = arc_position(ArcPose{}, g, 0.07);
  EXPECT_EQ(p, Eigen::Vector3d(0, 0, 0.07));
}

TEST(ArcPosition, QuarterCircle) {
  BackboneGeometry g;
  const double k = kPi / 2 / g.length;
  const auto p = arc_position(ArcPose(k, 0.0), g, g.length);
  EXPECT_NEAR(p.x(), 1 / k, 1e-15);
  EXPECT_NEAR(p.y(), 0.0, 1e-15);
  EXPECT_NEAR(p.z(), 1 / k, 1e-15);
}

TEST(ArcPosition, RejectsOutsideArc) {
  const BackboneGeometry g;
  EXPECT_THROW(arc_position(ArcPose{}, g, -1e-3), std::out_of_range);
  EXPECT_THROW(arc_position(ArcPose{}, g, g.length * 1.01), std::out_of_range);
}

TEST(ArcPosition, CircleMembership) {
  const BackboneGeometry g;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k(0.1, 30.0), phi(0, 2 * kPi), s(0, g.length);
  for (int i = 0; i < 1000; ++i) {
    const ArcPose pose(k(rng), phi(rng));
    const Eigen::Vector3d center(std::cos(pose.plane_angle()) / pose.curvature(),
                                 std::sin(pose.plane_angle()) / pose.curvature(), 0.0);
    const auto p = arc_position(pose, g, s(rng));
    EXPECT_NEAR((p - center).norm(), 1 / pose.curvature(), 1e-12 / pose.curvature());
  }
}

TEST(ArcPosition, SeriesMatchesClosedFormAtThreshold) {
  const BackboneGeometry g;
  const double k = kStraightThreshold / g.length;
  const auto below = arc_position(ArcPose(k * (1 - 1e-9), 1.0), g, g.length);
  const auto above = arc_position(ArcPose(k * (1 + 1e-9), 1.0), g, g.length);
  EXPECT_LT((below - above).norm(), 1e-10 * g.length);
}

TEST(ArcRotation, PlanarBend) {
  const auto r = arc_rotation(ArcPose(3.0, 0.0), 0.1);
  EXPECT_TRUE(r.isApprox(rot_y(0.3), 1e-14));
  EXPECT_TRUE(arc_rotation(ArcPose{}, 0.05).isApprox(Eigen::Matrix3d::Identity()));
}

TEST(ArcRotation, TangentMatchesPositionDerivative) {
  const BackboneGeometry g;
  const ArcPose pose(5.0, 1.1, 0.3);
  const double s = 0.06, h = 1e-6;
  const Eigen::Vector3d fd =
      (arc_position(pose, g, s + h) - arc_position(pose, g, s - h)) / (2 * h);
  EXPECT_LT((fd - arc_rotation(pose, s).col(2)).norm(), 1e-8);
}

TEST(ArcFrame, Composition) {
  const BackboneGeometry g;
  const ArcPose pose(4.0, 2.0, -0.2);
  const auto f = arc_frame(pose, g, g.length);
  EXPECT_TRUE(f.translation().isApprox(arc_position(pose, g, g.length)));
  const Eigen::Matrix3d r = f.linear();
  EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 1e-12);
}

TEST(ElasticMoment, Examples) {
  const BackboneGeometry g;
  EXPECT_EQ(elastic_moment(ArcPose{}, g), Eigen::Vector3d::Zero());
  const auto m = elastic_moment(ArcPose(2.0, 0.7), g);
  EXPECT_NEAR(m.norm(), g.bending_stiffness_y * 2.0, 1e-14);
  EXPECT_NEAR(elastic_moment(ArcPose(4.0, 0.7), g).norm(), 2.0 * m.norm(), 1e-14);
}

TEST(ElasticMoment, TwistAddsTorsion) {
  const BackboneGeometry g;
  const auto m = elastic_moment(ArcPose(0.0, 0.0, 0.2), g);
  EXPECT_NEAR(m.z(), g.torsional_stiffness / g.length * 0.2, 1e-15);
}
