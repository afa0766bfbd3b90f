#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smaneck/equilibrium.hpp"

namespace smaneck {

// Piecewise-constant current on one unit over [start, end).
struct CurrentSegment {
  int unit = 1; // 1-based
  double start = 0.0; // s
  double end = 0.0;   // s
  double amps = 0.0;  // A

  bool operator==(const CurrentSegment&) const = default;
};

class CurrentProfile {
public:
  CurrentProfile() = default;
  explicit CurrentProfile(std::vector<CurrentSegment> segments);

  // Current driven through every fiber of `unit` (1-based) at time t.
  double current(int unit, double t) const;

  const std::vector<CurrentSegment>& segments() const noexcept {
    return segments_;
  }

  // Throws ValidationError for negative times, end <= start or overlapping
  // segments on one unit.
  void validate(const std::string& prefix = "profile") const;

  static CurrentProfile constant(int unit, double amps, double hold);

  bool operator==(const CurrentProfile&) const = default;

private:
  std::vector<CurrentSegment> segments_;
};

struct SimConfig {
  double dt = 1e-3;       // s
  double duration = 5.0;  // s
  SolverOptions solver;
  StepOptions step;
  CurrentProfile profile;

  void validate(const std::string& prefix = "simulation") const;

  bool operator==(const SimConfig&) const = default;
};

struct SpringSample {
  double temperature;      // K
  double fraction;         // xi
  double force;            // F_f, N
  double austenite_start;  // stress-shifted A_s', K
  double austenite_finish; // stress-shifted A_f', K
};

struct TraceRow {
  double time = 0.0;         // s
  ArcPose pose;
  double bending_angle = 0.0; // theta, rad
  double reported_phi = 0.0;  // rad; last well-defined phi when straight
  bool phi_defined = false;
  std::vector<SpringSample> springs;        // unit-major, springs_per_unit each
  UnitForces unit_forces{};                 // N
  std::array<Eigen::Vector3d, kUnitCount> unit_moments{}; // N m
  double residual_norm = 0.0;               // N m
};

struct SimTrace {
  std::vector<TraceRow> rows;

  double max_bending_angle() const; // rad
};

// Below this bending angle phi is reported as undefined.
inline constexpr double kPhiDefinedAngle = 1e-9;

// Quasi-static run of the full neck. Deterministic. Solver failures are
// rethrown as SimulationError carrying the failing time.
SimTrace simulate(const NeckSystem& system, const SimConfig& config);

struct SweepRow {
  double current = 0.0;          // A
  double max_bending_angle = 0.0; // rad
  std::optional<std::string> error;
};

// One fresh run per current, holding it on `unit` for `hold` seconds.
// Rows are independent and evaluated concurrently; order is preserved.
std::vector<SweepRow> sweep(const NeckSystem& system, const SimConfig& base,
                            int unit, const std::vector<double>& currents,
                            double hold);

}  // namespace smaneck
