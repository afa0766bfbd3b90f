#include "smaneck/pennate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "smaneck/errors.hpp"

namespace smaneck {

void PennateUnit::validate(const std::string& prefix) const {
  if (!(pennation_angle >= 0.0 && pennation_angle < 0.5 * std::numbers::pi)) {
    throw ValidationError(prefix + ".pennation_angle", "must lie in [0, 90) deg");
  }
  if (!(std::isfinite(tendon_stiffness) && tendon_stiffness > 0.0)) {
    throw ValidationError(prefix + ".tendon_stiffness", "must be > 0");
  }
  if (springs_per_unit < 1) {
    throw ValidationError(prefix + ".springs_per_unit", "must be >= 1");
  }
  if (!base_attachment.allFinite() || !head_attachment_local.allFinite()) {
    throw ValidationError(prefix + ".attachments", "non-finite coordinates");
  }
}

double PennateUnit::rest_chord(const BackboneGeometry& geometry) const {
  const Eigen::Vector3d head =
      head_attachment_local + Eigen::Vector3d(0.0, 0.0, geometry.length);
  return (head - base_attachment).norm();
}

PennateUnit make_unit(int index, double azimuth, double head_radius,
                      double base_radius, double pennation_angle,
                      double tendon_stiffness, int springs_per_unit) {
  PennateUnit u;
  u.index = index;
  u.azimuth = azimuth;
  const Eigen::Vector3d radial(std::cos(azimuth), std::sin(azimuth), 0.0);
  u.head_attachment_local = head_radius * radial;
  u.base_attachment = base_radius * radial;
  u.pennation_angle = pennation_angle;
  u.tendon_stiffness = tendon_stiffness;
  u.springs_per_unit = springs_per_unit;
  return u;
}

double pennate_force(const PennateUnit& unit, double fiber_force) {
  return unit.springs_per_unit * fiber_force * std::cos(unit.pennation_angle);
}

double pennate_force(const PennateUnit& unit,
                     std::span<const double> fiber_forces) {
  return std::accumulate(fiber_forces.begin(), fiber_forces.end(), 0.0) *
         std::cos(unit.pennation_angle);
}

double tendon_force_from_stretch(const PennateUnit& unit, double contraction) {
  return contraction > 0.0 ? unit.tendon_stiffness * contraction : 0.0;
}

double combine_unit_force(ForceCombination rule, double active, double passive) {
  return rule == ForceCombination::Max ? std::max(active, passive)
                                       : active + passive;
}

LineOfAction unit_line_of_action(const PennateUnit& unit, const ArcPose& pose,
                                 const BackboneGeometry& geometry) {
  const Eigen::Isometry3d tip = arc_frame(pose, geometry, geometry.length);
  LineOfAction line;
  line.head_point = tip * unit.head_attachment_local;
  const Eigen::Vector3d chord = unit.base_attachment - line.head_point;
  const double length = chord.norm();
  line.direction = chord / length;
  line.contraction = unit.rest_chord(geometry) - length;
  return line;
}

Eigen::Vector3d unit_moment(const LineOfAction& line,
                            const Eigen::Vector3d& tip, double force) {
  return (line.head_point - tip).cross(force * line.direction);
}

Eigen::Vector3d unit_moment(const PennateUnit& unit, const ArcPose& pose,
                            const BackboneGeometry& geometry, double force) {
  return unit_moment(unit_line_of_action(unit, pose, geometry),
                     arc_position(pose, geometry, geometry.length), force);
}

}  // namespace smaneck
