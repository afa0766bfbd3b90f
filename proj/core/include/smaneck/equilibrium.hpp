#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "smaneck/backbone.hpp"
#include "smaneck/pennate.hpp"
#include "smaneck/sma.hpp"

namespace smaneck {

inline constexpr int kUnitCount = 3;
inline constexpr double kGravity = 9.81;

// The assembled neck: one alloy, one spring design shared by every fiber,
// the backbone and three pennate units 120 degrees apart.
struct NeckSystem {
  SmaMaterial material;
  SpringGeometry spring;
  ThermalEnvironment env;
  BackboneGeometry backbone;
  std::array<PennateUnit, kUnitCount> units;
  double head_mass = 0.25;       // kg
  bool gravity_enabled = false;
  ForceCombination force_combination = ForceCombination::Additive;
  double initial_spring_force = 0.0; // N, preload of every fiber

  void validate() const;
};

// Three units at 60, 180 and 300 degrees.
std::array<PennateUnit, kUnitCount> default_units(double head_radius,
                                                  double base_radius,
                                                  double pennation_angle,
                                                  double tendon_stiffness,
                                                  int springs_per_unit = 2);

using UnitForces = std::array<double, kUnitCount>;

// Per-unit tendon forces after adding the passive tendon contribution.
UnitForces total_unit_forces(const NeckSystem& system, const ArcPose& pose,
                             const UnitForces& active);

Eigen::Vector3d gravity_moment(const NeckSystem& system, const ArcPose& pose);

// Net moment on the head mount: muscles + gravity - backbone elasticity.
Eigen::Vector3d residual(const NeckSystem& system, const ArcPose& pose,
                         const UnitForces& active);

enum class Chart { Automatic, Polar, Cartesian };

struct SolverOptions {
  double tolerance = 1e-10;         // N m
  int max_iterations = 50;
  Chart chart = Chart::Automatic;
  double chart_switch_angle = 1e-2; // rad; Cartesian chart below this

  bool operator==(const SolverOptions&) const = default;
};

struct SolveResult {
  ArcPose pose;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Damped Newton on the pose with a central-difference Jacobian.
// Throws NoConvergence or PoseOutOfRange.
SolveResult solve_pose(const NeckSystem& system, const UnitForces& active,
                       const ArcPose& initial_guess,
                       const SolverOptions& options = {});

}  // namespace smaneck
