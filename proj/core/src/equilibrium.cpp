#include "smaneck/equilibrium.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "smaneck/errors.hpp"

namespace smaneck {

void NeckSystem::validate() const {
  material.validate("material");
  spring.validate("geometry.spring");
  // Scenario documents keep ambient under simulation and h_T with the alloy.
  env.validate("simulation", "material");
  backbone.validate("geometry.backbone");
  for (std::size_t k = 0; k < units.size(); ++k) {
    const std::string prefix = "geometry.muscles.unit" + std::to_string(k + 1);
    units[k].validate(prefix);
    if (!(units[k].rest_chord(backbone) > 1e-9)) {
      throw ValidationError(prefix, "head and base attachments coincide");
    }
  }
  for (std::size_t k = 0; k < units.size(); ++k) {
    const double gap =
        wrap_angle(units[(k + 1) % units.size()].azimuth - units[k].azimuth);
    if (std::abs(gap - 2.0 * std::numbers::pi / 3.0) > 1e-9) {
      throw ValidationError("geometry.muscles.azimuths",
                            "units must be 120 deg apart in ascending order");
    }
  }
  if (!(head_mass >= 0.0)) {
    throw ValidationError("geometry.head_mass", "must be >= 0");
  }
  if (!(initial_spring_force >= 0.0)) {
    throw ValidationError("geometry.muscles.initial_force", "must be >= 0");
  }
}

std::array<PennateUnit, kUnitCount> default_units(double head_radius,
                                                  double base_radius,
                                                  double pennation_angle,
                                                  double tendon_stiffness,
                                                  int springs_per_unit) {
  constexpr double deg = std::numbers::pi / 180.0;
  return {make_unit(1, 60.0 * deg, head_radius, base_radius, pennation_angle,
                    tendon_stiffness, springs_per_unit),
          make_unit(2, 180.0 * deg, head_radius, base_radius, pennation_angle,
                    tendon_stiffness, springs_per_unit),
          make_unit(3, 300.0 * deg, head_radius, base_radius, pennation_angle,
                    tendon_stiffness, springs_per_unit)};
}

UnitForces total_unit_forces(const NeckSystem& system, const ArcPose& pose,
                             const UnitForces& active) {
  UnitForces out{};
  for (std::size_t k = 0; k < system.units.size(); ++k) {
    const auto line = unit_line_of_action(system.units[k], pose, system.backbone);
    out[k] = combine_unit_force(
        system.force_combination, active[k],
        tendon_force_from_stretch(system.units[k], line.contraction));
  }
  return out;
}

Eigen::Vector3d gravity_moment(const NeckSystem& system, const ArcPose& pose) {
  if (!system.gravity_enabled) return Eigen::Vector3d::Zero();
  const Eigen::Vector3d tip =
      arc_position(pose, system.backbone, system.backbone.length);
  return tip.cross(Eigen::Vector3d(0.0, 0.0, -system.head_mass * kGravity));
}

Eigen::Vector3d residual(const NeckSystem& system, const ArcPose& pose,
                         const UnitForces& active) {
  const Eigen::Vector3d tip =
      arc_position(pose, system.backbone, system.backbone.length);
  Eigen::Vector3d net = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < system.units.size(); ++k) {
    const auto line = unit_line_of_action(system.units[k], pose, system.backbone);
    const double force = combine_unit_force(
        system.force_combination, active[k],
        tendon_force_from_stretch(system.units[k], line.contraction));
    net += unit_moment(line, tip, force);
  }
  return net + gravity_moment(system, pose) -
         elastic_moment(pose, system.backbone);
}

namespace {

using Vec3 = Eigen::Vector3d;

struct ChartMap {
  bool cartesian;

  ArcPose to_pose(const Vec3& x) const {
    return cartesian ? ArcPose::from_cartesian(x[0], x[1], x[2])
                     : ArcPose(x[0], x[1], x[2]);
  }

  Vec3 from_pose(const ArcPose& p) const {
    return cartesian ? Vec3(p.kappa_x(), p.kappa_y(), p.twist())
                     : Vec3(p.curvature(), p.plane_angle(), p.twist());
  }
};

}  // namespace

SolveResult solve_pose(const NeckSystem& system, const UnitForces& active,
                       const ArcPose& initial_guess,
                       const SolverOptions& options) {
  const double length = system.backbone.length;
  bool cartesian = options.chart == Chart::Cartesian;
  if (options.chart == Chart::Automatic) {
    cartesian = initial_guess.bending_angle(system.backbone) <
                options.chart_switch_angle;
  }
  const ChartMap chart{cartesian};

  const auto eval = [&](const Vec3& x) {
    return residual(system, chart.to_pose(x), active);
  };

  Vec3 x = chart.from_pose(initial_guess);
  Vec3 r = eval(x);
  double norm = r.norm();
  Vec3 best_x = x;
  double best = norm;
  int iter = 0;

  const Vec3 scale(1.0 / length, cartesian ? 1.0 / length : 1.0, 1.0);
  while (norm >= options.tolerance) {
    if (iter >= options.max_iterations) throw NoConvergence(best, iter);
    ++iter;

    Eigen::Matrix3d jac;
    for (int i = 0; i < 3; ++i) {
      const double h = 1e-7 * std::max(scale[i], std::abs(x[i]));
      Vec3 xp = x;
      Vec3 xm = x;
      xp[i] += h;
      xm[i] -= h;
      jac.col(i) = (eval(xp) - eval(xm)) / (2.0 * h);
    }
    const Vec3 step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) throw NoConvergence(best, iter);

    double alpha = 1.0;
    Vec3 trial = x + step;
    Vec3 trial_r = eval(trial);
    for (int halving = 0; halving < 8 && !(trial_r.norm() < norm); ++halving) {
      alpha *= 0.5;
      trial = x + alpha * step;
      trial_r = eval(trial);
    }
    if (!trial_r.allFinite()) throw NoConvergence(best, iter);
    // Re-chart so a fold through kappa = 0 keeps x canonical.
    x = chart.from_pose(chart.to_pose(trial));
    r = eval(x);
    norm = r.norm();
    if (norm < best) {
      best = norm;
      best_x = x;
    }
  }

  const ArcPose pose = chart.to_pose(x);
  const double theta = pose.bending_angle(system.backbone);
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw PoseOutOfRange(theta);
  return {pose, norm, iter};
}

}  // namespace smaneck
