#include "smaneck/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "smaneck/errors.hpp"

namespace smaneck {

CurrentProfile::CurrentProfile(std::vector<CurrentSegment> segments)
    : segments_(std::move(segments)) {}

double CurrentProfile::current(int unit, double t) const {
  for (const auto& s : segments_) {
    if (s.unit == unit && t >= s.start && t < s.end) return s.amps;
  }
  return 0.0;
}

void CurrentProfile::validate(const std::string& prefix) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    const std::string path = prefix + "." + std::to_string(i);
    if (s.unit < 1 || s.unit > kUnitCount) {
      throw ValidationError(path + ".unit", "must be 1, 2 or 3");
    }
    if (!(s.start >= 0.0)) {
      throw ValidationError(path + ".start", "must be >= 0");
    }
    if (!(s.end > s.start)) {
      throw ValidationError(path + ".end", "must exceed start");
    }
    if (!(std::isfinite(s.amps) && s.amps >= 0.0)) {
      throw ValidationError(path + ".current", "must be >= 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = segments_[j];
      if (o.unit == s.unit && s.start < o.end && o.start < s.end) {
        throw ValidationError(path, "overlaps segment " + std::to_string(j) +
                                        " on the same unit");
      }
    }
  }
}

CurrentProfile CurrentProfile::constant(int unit, double amps, double hold) {
  return CurrentProfile({{unit, 0.0, hold, amps}});
}

void SimConfig::validate(const std::string& prefix) const {
  if (!(dt > 0.0)) throw ValidationError(prefix + ".dt", "must be > 0");
  if (!(duration >= dt)) {
    throw ValidationError(prefix + ".duration", "must be >= dt");
  }
  if (!(solver.tolerance > 0.0)) {
    throw ValidationError(prefix + ".solver_tolerance", "must be > 0");
  }
  if (solver.max_iterations < 1) {
    throw ValidationError(prefix + ".max_newton_iterations", "must be >= 1");
  }
  if (!(step.max_temperature_step > 0.0)) {
    throw ValidationError(prefix + ".max_temperature_step", "must be > 0");
  }
}

double SimTrace::max_bending_angle() const {
  double best = 0.0;
  for (const auto& row : rows) best = std::max(best, row.bending_angle);
  return best;
}

namespace {

struct Recorder {
  const NeckSystem& system;
  double last_phi = 0.0;

  TraceRow record(double time, const SolveResult& solved,
                  const std::vector<SpringState>& springs,
                  const UnitForces& active) {
    TraceRow row;
    row.time = time;
    row.pose = solved.pose;
    row.bending_angle = solved.pose.bending_angle(system.backbone);
    row.phi_defined = row.bending_angle > kPhiDefinedAngle;
    if (row.phi_defined) last_phi = solved.pose.plane_angle();
    row.reported_phi = last_phi;
    row.springs.reserve(springs.size());
    for (const auto& s : springs) {
      const auto shifted =
          stress_shifted(system.material, shear_stress(system.spring, s.force));
      row.springs.push_back({s.temperature, s.martensite_fraction, s.force,
                             shifted.austenite_start, shifted.austenite_finish});
    }
    row.unit_forces = total_unit_forces(system, solved.pose, active);
    const Eigen::Vector3d tip = arc_position(solved.pose, system.backbone,
                                             system.backbone.length);
    for (std::size_t k = 0; k < system.units.size(); ++k) {
      const auto line =
          unit_line_of_action(system.units[k], solved.pose, system.backbone);
      row.unit_moments[k] = unit_moment(line, tip, row.unit_forces[k]);
    }
    row.residual_norm = solved.residual_norm;
    return row;
  }
};

UnitForces active_forces(const NeckSystem& system,
                         const std::vector<SpringState>& springs) {
  UnitForces out{};
  std::size_t offset = 0;
  for (std::size_t k = 0; k < system.units.size(); ++k) {
    const auto& unit = system.units[k];
    std::vector<double> fiber(static_cast<std::size_t>(unit.springs_per_unit));
    for (auto& f : fiber) f = springs[offset++].force;
    out[k] = pennate_force(unit, fiber);
  }
  return out;
}

std::array<double, kUnitCount> contractions(const NeckSystem& system,
                                            const ArcPose& pose) {
  std::array<double, kUnitCount> out{};
  for (std::size_t k = 0; k < system.units.size(); ++k) {
    out[k] = unit_line_of_action(system.units[k], pose, system.backbone)
                 .contraction;
  }
  return out;
}

}  // namespace

SimTrace simulate(const NeckSystem& system, const SimConfig& config) {
  const auto steps =
      static_cast<long>(std::llround(config.duration / config.dt));

  std::vector<SpringState> springs;
  for (const auto& unit : system.units) {
    for (int i = 0; i < unit.springs_per_unit; ++i) {
      springs.push_back(
          initial_spring_state(system.env, system.initial_spring_force));
    }
  }

  SimTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(steps) + 1);
  Recorder recorder{system};

  UnitForces active = active_forces(system, springs);
  SolveResult solved;
  try {
    solved = solve_pose(system, active, ArcPose{}, config.solver);
  } catch (const Error& e) {
    throw SimulationError(e, 0.0);
  }
  trace.rows.push_back(recorder.record(0.0, solved, springs, active));

  auto previous = contractions(system, solved.pose);
  auto current = previous;

  for (long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * config.dt;
    const double t_next = static_cast<double>(n + 1) * config.dt;
    try {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < system.units.size(); ++k) {
        const auto& unit = system.units[k];
        const double amps = config.profile.current(unit.index, t);
        // Fiber elongation rate from the last accepted pose change.
        const double elongation_rate = -(current[k] - previous[k]) /
                                       config.dt /
                                       std::cos(unit.pennation_angle);
        for (int i = 0; i < unit.springs_per_unit; ++i, ++offset) {
          springs[offset] =
              step_spring(system.material, system.spring, system.env,
                          springs[offset], amps, elongation_rate, config.dt,
                          config.step);
        }
      }
      active = active_forces(system, springs);
      solved = solve_pose(system, active, solved.pose, config.solver);
    } catch (const Error& e) {
      throw SimulationError(e, t_next);
    }
    previous = current;
    current = contractions(system, solved.pose);
    trace.rows.push_back(recorder.record(t_next, solved, springs, active));
  }
  return trace;
}

std::vector<SweepRow> sweep(const NeckSystem& system, const SimConfig& base,
                            int unit, const std::vector<double>& currents,
                            double hold) {
  if (currents.empty()) throw std::invalid_argument("sweep needs currents");
  if (!(hold > 0.0)) throw std::invalid_argument("hold must be > 0");

  const auto run_row = [&system, &base, unit, hold](double amps) {
    SweepRow row;
    row.current = amps;
    try {
      NeckSystem copy = system;
      SimConfig config = base;
      config.duration = hold;
      config.profile = CurrentProfile::constant(unit, amps, hold);
      row.max_bending_angle = simulate(copy, config).max_bending_angle();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows(currents.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < currents.size(); begin += workers) {
    const std::size_t end = std::min(currents.size(), begin + workers);
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(workers > 1 ? std::launch::async
                                             : std::launch::deferred,
                                 run_row, currents[i]));
    }
    for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }
  return rows;
}

}  // namespace smaneck
