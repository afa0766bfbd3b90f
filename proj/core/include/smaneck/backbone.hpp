#pragma once

#include <string>

#include <Eigen/Geometry>

namespace smaneck {

struct BackboneGeometry {
  double length = 0.1;                  // l, m
  double bending_stiffness_x = 0.1;     // EI_xx, N m^2 (inert under constant curvature)
  double bending_stiffness_y = 0.1;     // EI_yy, N m^2
  double torsional_stiffness = 0.05;    // GJ, N m^2

  void validate(const std::string& prefix = "geometry.backbone") const;

  bool operator==(const BackboneGeometry&) const = default;
};

// Constant-curvature arc: curvature kappa >= 0, bending-plane angle phi in
// [0, 2*pi), twist epsilon.
class ArcPose {
public:
  ArcPose() = default;
  // Negative curvature is folded into phi + pi.
  ArcPose(double curvature, double plane_angle, double twist = 0.0);

  static ArcPose from_cartesian(double kappa_x, double kappa_y,
                                double twist = 0.0);

  double curvature() const noexcept { return curvature_; }
  double plane_angle() const noexcept { return plane_angle_; }
  double twist() const noexcept { return twist_; }
  double kappa_x() const noexcept;
  double kappa_y() const noexcept;

  double bending_angle(const BackboneGeometry& geometry) const noexcept {
    return curvature_ * geometry.length;
  }

  bool operator==(const ArcPose&) const = default;

private:
  double curvature_ = 0.0;
  double plane_angle_ = 0.0;
  double twist_ = 0.0;
};

double wrap_angle(double angle);

// Below this bending angle (kappa * l) positions use the series expansion.
inline constexpr double kStraightThreshold = 1e-7;

Eigen::Vector3d arc_position(const ArcPose& pose,
                             const BackboneGeometry& geometry, double s);

Eigen::Matrix3d arc_rotation(const ArcPose& pose, double s);

Eigen::Isometry3d arc_frame(const ArcPose& pose,
                            const BackboneGeometry& geometry, double s);

// Moment stored by the deformed backbone, expressed in the base frame.
Eigen::Vector3d elastic_moment(const ArcPose& pose,
                               const BackboneGeometry& geometry);

Eigen::Matrix3d rot_z(double angle);
Eigen::Matrix3d rot_y(double angle);

}  // namespace smaneck
