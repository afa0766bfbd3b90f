#pragma once

#include <span>
#include <string>

#include <Eigen/Core>

#include "smaneck/backbone.hpp"

namespace smaneck {

// How the SMA-driven fiber force and the passive tendon force combine into
// the unit force F_k.
enum class ForceCombination { Additive, Max };

// One bipennate muscle: a tendon running from the head mount to the base
// plate, pulled by `springs_per_unit` SMA fibers at the pennation angle.
struct PennateUnit {
  int index = 1;                        // k, 1-based
  double azimuth = 0.0;                 // rad
  Eigen::Vector3d base_attachment = Eigen::Vector3d::Zero();       // base frame, m
  Eigen::Vector3d head_attachment_local = Eigen::Vector3d::Zero(); // tip frame, m
  double pennation_angle = 0.0;         // alpha, rad
  double tendon_stiffness = 0.0;        // k_t, N/m
  int springs_per_unit = 2;

  void validate(const std::string& prefix) const;

  // Chord length at the straight rest configuration.
  double rest_chord(const BackboneGeometry& geometry) const;
};

// Unit at `azimuth` with head and base attachments at the given radii; the
// head attachment lies in the head-mount plane (tip frame z = 0).
PennateUnit make_unit(int index, double azimuth, double head_radius,
                      double base_radius, double pennation_angle,
                      double tendon_stiffness, int springs_per_unit = 2);

// |F_k| = n * F_f * cos(alpha) for n identical fibers.
double pennate_force(const PennateUnit& unit, double fiber_force);

// Sum of the individual fiber forces projected on the tendon.
double pennate_force(const PennateUnit& unit,
                     std::span<const double> fiber_forces);

// Unilateral tendon: k_t * dx on contraction, zero otherwise.
double tendon_force_from_stretch(const PennateUnit& unit, double contraction);

double combine_unit_force(ForceCombination rule, double active, double passive);

struct LineOfAction {
  Eigen::Vector3d head_point;  // p_k(l), base frame
  Eigen::Vector3d direction;   // unit vector toward the base attachment
  double contraction;          // rest chord - current chord, m
};

LineOfAction unit_line_of_action(const PennateUnit& unit, const ArcPose& pose,
                                 const BackboneGeometry& geometry);

// Moment of the unit force about the backbone tip, base frame.
Eigen::Vector3d unit_moment(const PennateUnit& unit, const ArcPose& pose,
                            const BackboneGeometry& geometry, double force);

Eigen::Vector3d unit_moment(const LineOfAction& line,
                            const Eigen::Vector3d& tip, double force);

}  // namespace smaneck
