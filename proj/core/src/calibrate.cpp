#include "smaneck/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "smaneck/errors.hpp"
#include "yaml_reader.hpp"

namespace smaneck {

using detail::MapReader;

const char* to_string(FreeParameter p) {
  switch (p) {
    case FreeParameter::ConvectionCoefficient: return "convection_coefficient";
    case FreeParameter::PhaseTransformTensor: return "phase_transform_tensor";
    case FreeParameter::TendonStiffness: return "tendon_stiffness";
    case FreeParameter::PennationAngle: return "pennation_angle";
  }
  return "?";
}

namespace {

Dimension dimension_of(FreeParameter p) {
  switch (p) {
    case FreeParameter::ConvectionCoefficient: return Dimension::HeatTransferCoefficient;
    case FreeParameter::PhaseTransformTensor: return Dimension::Pressure;
    case FreeParameter::TendonStiffness: return Dimension::Stiffness;
    case FreeParameter::PennationAngle: return Dimension::Angle;
  }
  return Dimension::Dimensionless;
}

FreeParameter parse_parameter(const std::string& name, const std::string& path) {
  for (auto p : {FreeParameter::ConvectionCoefficient, FreeParameter::PhaseTransformTensor,
                 FreeParameter::TendonStiffness, FreeParameter::PennationAngle}) {
    if (name == to_string(p)) return p;
  }
  throw ValidationError(path, "unknown parameter '" + name + "'");
}

// Search coordinate: the value itself, or log|value| keeping the sign.
struct Axis {
  const ParameterBounds& b;

  double sign() const { return b.lower < 0.0 ? -1.0 : 1.0; }
  double to_u(double v) const {
    return b.scale == SearchScale::Log ? std::log(std::abs(v)) : v;
  }
  double to_v(double u) const {
    return b.scale == SearchScale::Log ? sign() * std::exp(u) : u;
  }
  double u_lo() const { return std::min(to_u(b.lower), to_u(b.upper)); }
  double u_hi() const { return std::max(to_u(b.lower), to_u(b.upper)); }
  double clamp(double v) const {
    return std::clamp(v, std::min(b.lower, b.upper), std::max(b.lower, b.upper));
  }
};

}  // namespace

void CalibrationSpec::validate(const std::string& prefix) const {
  if (unit < 1 || unit > kUnitCount) {
    throw ValidationError(prefix + ".unit", "must be 1, 2 or 3");
  }
  if (!(hold > 0.0)) throw ValidationError(prefix + ".hold", "must be > 0");
  if (parameters.empty()) {
    throw ValidationError(prefix + ".parameters", "at least one free parameter");
  }
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const auto& p = parameters[i];
    const std::string path = prefix + ".parameters." + std::to_string(i);
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper)) {
      throw ValidationError(path, "bounds must be finite");
    }
    if (!(p.lower < p.upper)) {
      throw ValidationError(path, "lower must be below upper");
    }
    if (p.scale == SearchScale::Log && !(p.lower * p.upper > 0.0)) {
      throw ValidationError(path + ".scale",
                            "log scale needs bounds of one sign, excluding zero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (parameters[j].parameter == p.parameter) {
        throw ValidationError(path + ".name", "listed twice");
      }
    }
  }
  if (targets.empty()) throw ValidationError(prefix + ".targets", "must not be empty");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string path = prefix + ".targets." + std::to_string(i);
    if (!(targets[i].current >= 0.0)) throw ValidationError(path + ".current", "must be >= 0");
    if (!(targets[i].max_bending_angle > 0.0)) {
      throw ValidationError(path + ".max_bending_angle", "must be > 0");
    }
  }
  if (max_rounds < 1) throw ValidationError(prefix + ".max_rounds", "must be >= 1");
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw ValidationError(prefix + ".tolerance", "must lie in (0, 1)");
  }
}

CalibrationSpec load_calibration(std::string_view text) {
  const YAML::Node doc = detail::parse_document(text);
  if (!doc || doc.IsNull()) throw ParseError("empty calibration document");
  MapReader root(doc, "");
  CalibrationSpec spec;
  spec.unit = root.integer("unit");
  spec.hold = root.quantity("hold", Dimension::Time);
  if (root.has("max_rounds")) spec.max_rounds = root.integer("max_rounds");
  if (root.has("tolerance")) spec.tolerance = root.number("tolerance");

  const YAML::Node params = root.node("parameters");
  if (!params.IsSequence()) throw ValidationError("parameters", "expected a list");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string path = "parameters." + std::to_string(i);
    MapReader r(params[i], path);
    ParameterBounds b;
    b.parameter = parse_parameter(r.text("name"), r.child_path("name"));
    b.lower = r.quantity("lower", dimension_of(b.parameter));
    b.upper = r.quantity("upper", dimension_of(b.parameter));
    const std::string scale = r.has("scale") ? r.text("scale") : "linear";
    if (scale == "log") {
      b.scale = SearchScale::Log;
    } else if (scale != "linear") {
      throw ValidationError(r.child_path("scale"), "expected 'linear' or 'log'");
    }
    r.finish();
    spec.parameters.push_back(b);
  }

  const YAML::Node targets = root.node("targets");
  if (!targets.IsSequence()) throw ValidationError("targets", "expected a list");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    MapReader r(targets[i], "targets." + std::to_string(i));
    CalibrationTarget t;
    t.current = r.quantity("current", Dimension::Current);
    t.max_bending_angle = r.quantity("max_bending_angle", Dimension::Angle);
    r.finish();
    spec.targets.push_back(t);
  }
  root.finish();
  spec.validate("");
  return spec;
}

CalibrationSpec load_calibration_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open calibration spec '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_calibration(buffer.str());
}

double get_parameter(const Scenario& sc, FreeParameter p) {
  switch (p) {
    case FreeParameter::ConvectionCoefficient: return sc.system.env.convection_coefficient;
    case FreeParameter::PhaseTransformTensor: return sc.system.material.phase_transform_tensor;
    case FreeParameter::TendonStiffness: return sc.muscles.tendon_stiffness;
    case FreeParameter::PennationAngle: return sc.muscles.pennation_angle;
  }
  return 0.0;
}

void set_parameter(Scenario& sc, FreeParameter p, double value) {
  switch (p) {
    case FreeParameter::ConvectionCoefficient:
      sc.system.env.convection_coefficient = value;
      break;
    case FreeParameter::PhaseTransformTensor:
      sc.system.material.phase_transform_tensor = value;
      break;
    case FreeParameter::TendonStiffness:
      sc.muscles.tendon_stiffness = value;
      sc.apply_layout();
      break;
    case FreeParameter::PennationAngle:
      sc.muscles.pennation_angle = value;
      sc.apply_layout();
      break;
  }
}

double calibration_loss(const Scenario& sc, const CalibrationSpec& spec,
                        std::vector<TargetFit>* fits) {
  std::vector<double> currents;
  for (const auto& t : spec.targets) currents.push_back(t.current);
  const auto rows = sweep(sc.system, sc.sim, spec.unit, currents, spec.hold);
  double loss = 0.0;
  if (fits) fits->clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& target = spec.targets[i];
    TargetFit fit{target.current, target.max_bending_angle,
                  std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::infinity()};
    if (!rows[i].error) {
      fit.achieved = rows[i].max_bending_angle;
      fit.relative_error =
          (fit.achieved - target.max_bending_angle) / target.max_bending_angle;
    }
    loss += fit.relative_error * fit.relative_error;
    if (fits) fits->push_back(fit);
  }
  return loss;
}

CalibrationResult calibrate(const Scenario& base, const CalibrationSpec& spec,
                            const std::function<void(const std::string&)>& log) {
  spec.validate();
  Scenario current = base;
  for (const auto& b : spec.parameters) {
    set_parameter(current, b.parameter, Axis{b}.clamp(get_parameter(current, b.parameter)));
  }

  CalibrationResult result;
  const auto evaluate = [&](const Scenario& sc) {
    ++result.evaluations;
    return calibration_loss(sc, spec);
  };

  double best = evaluate(current);
  result.start_loss = best;
  const auto note = [&](const std::string& msg) {
    if (log) log(msg);
  };
  note("start loss " + format_double(best));

  if (best > spec.converged_loss) {
    constexpr double kInvPhi = 0.6180339887498949;
    for (int round = 0; round < spec.max_rounds; ++round) {
      ++result.rounds;
      const double round_start = best;
      for (const auto& b : spec.parameters) {
        const Axis axis{b};
        const auto at = [&](double u) {
          Scenario trial = current;
          set_parameter(trial, b.parameter, axis.clamp(axis.to_v(u)));
          return evaluate(trial);
        };
        double lo = axis.u_lo();
        double hi = axis.u_hi();
        const double stop = spec.tolerance * (hi - lo);
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = at(x1);
        double f2 = at(x2);
        double best_u = axis.to_u(get_parameter(current, b.parameter));
        double best_f = best;
        const auto consider = [&](double u, double f) {
          if (f < best_f) {
            best_f = f;
            best_u = u;
          }
        };
        consider(x1, f1);
        consider(x2, f2);
        while (hi - lo > stop) {
          if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = at(x1);
            consider(x1, f1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = at(x2);
            consider(x2, f2);
          }
        }
        if (best_f < best) {
          best = best_f;
          set_parameter(current, b.parameter, axis.clamp(axis.to_v(best_u)));
        }
        note(std::string("round ") + std::to_string(round + 1) + " " +
             to_string(b.parameter) + " = " +
             format_quantity(get_parameter(current, b.parameter), dimension_of(b.parameter)) +
             ", loss " + format_double(best));
      }
      if (round_start - best <= spec.tolerance * round_start) break;
    }
    if (!(best < result.start_loss)) {
      throw NonImprovement("calibration could not reduce the loss below the start value " +
                           format_double(result.start_loss) + " after " +
                           std::to_string(result.evaluations) + " evaluations");
    }
  }

  for (const auto& b : spec.parameters) {
    result.parameters.emplace_back(b.parameter, get_parameter(current, b.parameter));
  }
  result.loss = calibration_loss(current, spec, &result.fits);
  return result;
}

Scenario apply_calibration(const Scenario& base, const CalibrationResult& result) {
  Scenario out = base;
  for (const auto& [p, v] : result.parameters) set_parameter(out, p, v);
  return out;
}

std::string format_report(const CalibrationResult& r) {
  constexpr double deg = 180.0 / std::numbers::pi;
  std::ostringstream o;
  o << "parameter,value,unit\n";
  for (const auto& [p, v] : r.parameters) {
    o << to_string(p) << ',' << format_double(v) << ',' << si_unit(dimension_of(p)) << '\n';
  }
  o << "\ncurrent_A,target_deg,achieved_deg,relative_error\n";
  for (const auto& f : r.fits) {
    o << format_double(f.current) << ',' << format_double(f.target * deg) << ','
      << format_double(f.achieved * deg) << ',' << format_double(f.relative_error) << '\n';
  }
  o << "\nstart_loss," << format_double(r.start_loss) << "\nloss," << format_double(r.loss)
    << "\nevaluations," << r.evaluations << "\nrounds," << r.rounds << '\n';
  return o.str();
}

}  // namespace smaneck
