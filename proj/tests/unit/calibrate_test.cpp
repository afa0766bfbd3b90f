#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "smaneck/calibrate.hpp"
#include "smaneck/errors.hpp"

using namespace smaneck;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Scenario bundled() { return load_scenario(bundled_scenario_text()); }

CalibrationSpec two_parameter_spec() {
  CalibrationSpec spec;
  spec.parameters = {
      {FreeParameter::ConvectionCoefficient, 100.0, 1000.0, SearchScale::Log},
      {FreeParameter::PhaseTransformTensor, -5e9, -5e7, SearchScale::Log}};
  return spec;
}

}  // namespace

TEST(CalibrationSpec, BundledTable) {
  const auto spec = load_calibration(bundled_calibration_text());
  ASSERT_EQ(spec.targets.size(), 5u);
  EXPECT_EQ(spec.targets[0].current, 4.0);
  EXPECT_NEAR(spec.targets[4].max_bending_angle, 32.41 * kDeg, 1e-12);
  ASSERT_EQ(spec.parameters.size(), 2u);
  EXPECT_EQ(spec.parameters[0].parameter, FreeParameter::ConvectionCoefficient);
  EXPECT_EQ(spec.parameters[1].scale, SearchScale::Log);
}

TEST(CalibrationSpec, Invariants) {
  auto spec = two_parameter_spec();
  spec.targets = {{5.0, 0.1}};
  EXPECT_NO_THROW(spec.validate());
  auto bad = spec;
  bad.parameters.clear();
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = spec;
  bad.parameters[0].lower = 2000.0;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = spec;
  bad.parameters[1].upper = 1e9;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = spec;
  bad.parameters[0].upper = INFINITY;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = spec;
  bad.targets.clear();
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(load_calibration("unit: 1\nhold: 5 s\nparameters: [{name: poisson, lower: 0, "
                                "upper: 1}]\ntargets: [{current: 4 A, max_bending_angle: 1 deg}]"),
               ValidationError);
}

TEST(Calibrate, AlreadyOptimalReturnsStart) {
  const auto sc = bundled();
  auto spec = two_parameter_spec();
  spec.hold = 2.0;
  const auto rows = sweep(sc.system, sc.sim, 1, {4.5}, spec.hold);
  spec.targets = {{4.5, rows[0].max_bending_angle}};
  const auto r = calibrate(sc, spec);
  EXPECT_LT(r.loss, 1e-20);
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_EQ(r.parameters[0].second, sc.system.env.convection_coefficient);
  EXPECT_EQ(r.parameters[1].second, sc.system.material.phase_transform_tensor);
}

TEST(Calibrate, NonImprovementIsReported) {
  auto spec = two_parameter_spec();
  spec.hold = 0.5;
  spec.max_rounds = 1;
  spec.tolerance = 0.05;
  spec.targets = {{0.0, 5 * kDeg}};
  try {
    calibrate(bundled(), spec);
    FAIL();
  } catch (const NonImprovement& e) {
    EXPECT_NE(std::string(e.what()).find("start value"), std::string::npos);
  }
}

TEST(Calibrate, StaysInsideBounds) {
  auto sc = bundled();
  sc.system.env.convection_coefficient = 5000.0;
  auto spec = two_parameter_spec();
  spec.hold = 2.0;
  spec.max_rounds = 1;
  spec.tolerance = 0.02;
  spec.parameters[0].upper = 400.0;
  spec.targets = {{6.0, 10 * kDeg}};
  const auto r = calibrate(sc, spec);
  EXPECT_GE(r.parameters[0].second, 100.0);
  EXPECT_LE(r.parameters[0].second, 400.0);
  EXPECT_GE(r.parameters[1].second, -5e9);
  EXPECT_LE(r.parameters[1].second, -5e7);
  EXPECT_LT(r.loss, r.start_loss);
}

TEST(Calibrate, RecoversSyntheticGroundTruth) {
  const auto start = bundled();
  Scenario truth = start;
  set_parameter(truth, FreeParameter::ConvectionCoefficient, 300.0);
  set_parameter(truth, FreeParameter::PhaseTransformTensor, -4e8);

  auto spec = two_parameter_spec();
  spec.max_rounds = 10;
  spec.tolerance = 5e-4;
  const std::vector<double> currents{4.0, 5.0, 6.0, 7.0, 8.0};
  const auto rows = sweep(truth.system, truth.sim, 1, currents, spec.hold);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_FALSE(rows[i].error);
    spec.targets.push_back({currents[i], rows[i].max_bending_angle});
  }
  const auto r = calibrate(start, spec);
  EXPECT_NEAR(r.parameters[0].second, 300.0, 0.05 * 300.0);
  EXPECT_NEAR(r.parameters[1].second, -4e8, 0.05 * 4e8);
  EXPECT_LT(r.loss, 1e-4);
}

TEST(Calibrate, ApplyAndReport) {
  CalibrationResult r;
  r.parameters = {{FreeParameter::TendonStiffness, 42.0}, {FreeParameter::PennationAngle, 0.2}};
  r.fits = {{4.0, 0.1, 0.11, 0.1}};
  const auto sc = apply_calibration(bundled(), r);
  EXPECT_EQ(sc.muscles.tendon_stiffness, 42.0);
  EXPECT_EQ(sc.system.units[1].tendon_stiffness, 42.0);
  EXPECT_EQ(sc.system.units[2].pennation_angle, 0.2);
  const auto report = format_report(r);
  EXPECT_NE(report.find("tendon_stiffness,42,N/m"), std::string::npos);
  EXPECT_NE(report.find("current_A,target_deg,achieved_deg,relative_error"), std::string::npos);
}
