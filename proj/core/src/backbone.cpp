#include "smaneck/backbone.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smaneck/errors.hpp"

namespace smaneck {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void BackboneGeometry::validate(const std::string& prefix) const {
  const auto check = [&](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw ValidationError(prefix + "." + field, "must be > 0");
    }
  };
  check(length, "length");
  check(bending_stiffness_x, "bending_stiffness_x");
  check(bending_stiffness_y, "bending_stiffness_y");
  check(torsional_stiffness, "torsional_stiffness");
}

double wrap_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

ArcPose::ArcPose(double curvature, double plane_angle, double twist)
    : curvature_(std::abs(curvature)),
      plane_angle_(wrap_angle(curvature < 0.0 ? plane_angle + std::numbers::pi
                                              : plane_angle)),
      twist_(twist) {}

ArcPose ArcPose::from_cartesian(double kappa_x, double kappa_y, double twist) {
  return ArcPose(std::hypot(kappa_x, kappa_y), std::atan2(kappa_y, kappa_x),
                 twist);
}

double ArcPose::kappa_x() const noexcept {
  return curvature_ * std::cos(plane_angle_);
}

double ArcPose::kappa_y() const noexcept {
  return curvature_ * std::sin(plane_angle_);
}

Eigen::Matrix3d rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

Eigen::Matrix3d rot_y(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()).toRotationMatrix();
}

Eigen::Vector3d arc_position(const ArcPose& pose,
                             const BackboneGeometry& geometry, double s) {
  if (!(s >= 0.0 && s <= geometry.length)) {
    throw std::out_of_range("arc length outside [0, l]");
  }
  const double k = pose.curvature();
  const double c = std::cos(pose.plane_angle());
  const double sn = std::sin(pose.plane_angle());
  double radial;
  double axial;
  if (k * geometry.length < kStraightThreshold) {
    // (1 - cos ks)/k and sin(ks)/k to fourth order in ks.
    const double ks = k * s;
    radial = 0.5 * k * s * s * (1.0 - ks * ks / 12.0);
    axial = s * (1.0 - ks * ks / 6.0 + ks * ks * ks * ks / 120.0);
  } else {
    radial = (1.0 - std::cos(k * s)) / k;
    axial = std::sin(k * s) / k;
  }
  return {c * radial, sn * radial, axial};
}

Eigen::Matrix3d arc_rotation(const ArcPose& pose, double s) {
  return rot_z(pose.plane_angle()) * rot_y(pose.curvature() * s) *
         rot_z(pose.twist() - pose.plane_angle());
}

Eigen::Isometry3d arc_frame(const ArcPose& pose,
                            const BackboneGeometry& geometry, double s) {
  Eigen::Isometry3d frame = Eigen::Isometry3d::Identity();
  frame.translation() = arc_position(pose, geometry, s);
  frame.linear() = arc_rotation(pose, s);
  return frame;
}

Eigen::Vector3d elastic_moment(const ArcPose& pose,
                               const BackboneGeometry& geometry) {
  const Eigen::Vector3d stiffness(
      geometry.bending_stiffness_x, geometry.bending_stiffness_y,
      geometry.torsional_stiffness / geometry.length);
  const Eigen::Vector3d strain(0.0, pose.curvature(), pose.twist());
  return rot_z(pose.plane_angle()) *
         rot_y(pose.curvature() * geometry.length) *
         stiffness.cwiseProduct(strain);
}

}  // namespace smaneck
