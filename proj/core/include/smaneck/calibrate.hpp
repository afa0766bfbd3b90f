#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "smaneck/scenario.hpp"

namespace smaneck {

enum class FreeParameter {
  ConvectionCoefficient, // h_T
  PhaseTransformTensor,  // Omega
  TendonStiffness,       // k_t
  PennationAngle,        // alpha
};

const char* to_string(FreeParameter p);

enum class SearchScale { Linear, Log };

struct ParameterBounds {
  FreeParameter parameter = FreeParameter::ConvectionCoefficient;
  double lower = 0.0; // SI
  double upper = 0.0; // SI
  SearchScale scale = SearchScale::Linear;
};

struct CalibrationTarget {
  double current = 0.0;           // A
  double max_bending_angle = 0.0; // rad
};

struct CalibrationSpec {
  int unit = 1;
  double hold = 5.0; // s
  std::vector<ParameterBounds> parameters;
  std::vector<CalibrationTarget> targets;
  int max_rounds = 4;
  // Golden-section stops once the bracket is this fraction of the bounds.
  double tolerance = 1e-3;
  // A starting loss at or below this is returned unchanged.
  double converged_loss = 1e-12;

  void validate(const std::string& prefix = "calibration") const;
};

// Prototype bending-angle table: (h_T, Omega) against five sweep currents.
std::string_view bundled_calibration_text();

CalibrationSpec load_calibration(std::string_view text);
CalibrationSpec load_calibration_file(const std::filesystem::path& path);

double get_parameter(const Scenario& scenario, FreeParameter p);
void set_parameter(Scenario& scenario, FreeParameter p, double value);

struct TargetFit {
  double current = 0.0;  // A
  double target = 0.0;   // rad
  double achieved = 0.0; // rad
  double relative_error = 0.0;
};

struct CalibrationResult {
  std::vector<std::pair<FreeParameter, double>> parameters;
  std::vector<TargetFit> fits;
  double start_loss = 0.0;
  double loss = 0.0;
  int evaluations = 0;
  int rounds = 0;
};

// Sum of squared relative errors of the sweep against the targets; infinite
// when any sweep row fails.
double calibration_loss(const Scenario& scenario, const CalibrationSpec& spec,
                        std::vector<TargetFit>* fits = nullptr);

// Coordinate-descent golden-section search within the bounds. The starting
// point is clamped into the bounds. Throws NonImprovement when the loss does
// not drop below the starting loss.
CalibrationResult calibrate(const Scenario& base, const CalibrationSpec& spec,
                            const std::function<void(const std::string&)>& log = {});

// Applies fitted values to a scenario.
Scenario apply_calibration(const Scenario& base, const CalibrationResult& result);

std::string format_report(const CalibrationResult& result);

}  // namespace smaneck
