#include "smaneck/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "yaml_reader.hpp"

namespace smaneck {

using detail::MapReader;

void Scenario::apply_layout() {
  for (std::size_t k = 0; k < system.units.size(); ++k) {
    auto& unit = system.units[k];
    unit = make_unit(static_cast<int>(k) + 1, muscles.azimuths[k],
                     muscles.head_radius, muscles.base_radius,
                     muscles.pennation_angle, muscles.tendon_stiffness,
                     muscles.springs_per_unit);
  }
  system.initial_spring_force = muscles.initial_force;
  system.force_combination = muscles.force_combination;
}

int Scenario::driven_unit() const {
  const auto& segments = sim.profile.segments();
  return segments.empty() ? 1 : segments.front().unit;
}

namespace {

bool same_unit(const PennateUnit& a, const PennateUnit& b) {
  return a.index == b.index && a.azimuth == b.azimuth &&
         a.base_attachment == b.base_attachment &&
         a.head_attachment_local == b.head_attachment_local &&
         a.pennation_angle == b.pennation_angle &&
         a.tendon_stiffness == b.tendon_stiffness &&
         a.springs_per_unit == b.springs_per_unit;
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
  const auto& sa = a.system;
  const auto& sb = b.system;
  for (std::size_t k = 0; k < sa.units.size(); ++k) {
    if (!same_unit(sa.units[k], sb.units[k])) return false;
  }
  return a.schema_version == b.schema_version && sa.material == sb.material &&
         sa.spring == sb.spring && sa.env == sb.env &&
         sa.backbone == sb.backbone && sa.head_mass == sb.head_mass &&
         sa.gravity_enabled == sb.gravity_enabled &&
         sa.force_combination == sb.force_combination &&
         sa.initial_spring_force == sb.initial_spring_force &&
         a.muscles == b.muscles && a.sim == b.sim && a.output == b.output;
}

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError("override '" + std::string(text) +
                     "' is not of the form key.path=value");
  }
  return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

namespace {

void apply_override(YAML::Node& root, const Override& o) {
  std::vector<std::string> keys;
  std::stringstream ss(o.path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ParseError("override path '" + o.path + "' is malformed");
    keys.push_back(part);
  }
  // yaml-cpp nodes are handles; walk with reset() so assignment writes into
  // the document instead of rebinding the handle.
  YAML::Node cursor;
  cursor.reset(root);
  std::string walked;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::string& key = keys[i];
    walked += (walked.empty() ? "" : ".") + key;
    YAML::Node next;
    if (cursor.IsSequence()) {
      std::size_t index = 0;
      try {
        index = std::stoul(key);
      } catch (const std::exception&) {
        throw ValidationError(walked, "expected a sequence index");
      }
      if (index >= cursor.size()) throw ValidationError(walked, "index out of range");
      next.reset(cursor[index]);
    } else if (cursor.IsMap()) {
      if (!cursor[key]) throw ValidationError(walked, "unknown key");
      next.reset(cursor[key]);
    } else {
      throw ValidationError(walked, "cannot descend into a scalar");
    }
    if (i + 1 == keys.size()) {
      next = detail::parse_document(o.value);
    } else {
      cursor.reset(next);
    }
  }
}

ForceCombination parse_combination(const std::string& text,
                                   const std::string& path) {
  if (text == "additive") return ForceCombination::Additive;
  if (text == "max") return ForceCombination::Max;
  throw ValidationError(path, "expected 'additive' or 'max', got '" + text + "'");
}

const char* combination_name(ForceCombination c) {
  return c == ForceCombination::Max ? "max" : "additive";
}

Scenario read_scenario(const YAML::Node& doc) {
  if (!doc || doc.IsNull()) throw ParseError("empty scenario document");
  MapReader root(doc, "");
  Scenario sc;
  sc.schema_version = root.integer("schema_version");
  if (sc.schema_version != kSchemaVersion) {
    throw ValidationError("schema_version",
                          "unsupported version " + std::to_string(sc.schema_version) +
                              " (expected " + std::to_string(kSchemaVersion) + ")");
  }

  {
    auto m = root.map("material");
    auto& mat = sc.system.material;
    mat.young_martensite = m.quantity("young_martensite", Dimension::Pressure);
    mat.young_austenite = m.quantity("young_austenite", Dimension::Pressure);
    mat.poisson = m.number("poisson");
    mat.phase_transform_tensor = m.quantity("phase_transform_tensor", Dimension::Pressure);
    mat.thermal_expansion_factor =
        m.quantity("thermal_expansion_factor", Dimension::PressurePerKelvin);
    mat.austenite_start = m.quantity("austenite_start", Dimension::Temperature);
    mat.austenite_finish = m.quantity("austenite_finish", Dimension::Temperature);
    mat.martensite_start = m.quantity("martensite_start", Dimension::Temperature);
    mat.martensite_finish = m.quantity("martensite_finish", Dimension::Temperature);
    mat.stress_influence_reverse =
        m.quantity("stress_influence_reverse", Dimension::PressurePerKelvin);
    mat.stress_influence_forward =
        m.quantity("stress_influence_forward", Dimension::PressurePerKelvin);
    mat.resistance_martensite = m.quantity("resistance_martensite", Dimension::Resistance);
    mat.resistance_austenite = m.quantity("resistance_austenite", Dimension::Resistance);
    mat.specific_heat = m.quantity("specific_heat", Dimension::SpecificHeat);
    mat.latent_heat = m.quantity("latent_heat", Dimension::SpecificEnergy);
    sc.system.env.convection_coefficient =
        m.quantity("convection_coefficient", Dimension::HeatTransferCoefficient);
    m.finish();
  }

  {
    auto g = root.map("geometry");
    {
      auto s = g.map("spring");
      auto& sp = sc.system.spring;
      sp.wire_diameter = s.quantity("wire_diameter", Dimension::Length);
      sp.coil_diameter = s.quantity("coil_diameter", Dimension::Length);
      sp.active_coils = s.number("active_coils");
      sp.mass = s.quantity("mass", Dimension::Mass);
      sp.surface_area = s.quantity("surface_area", Dimension::Area);
      sp.rest_length = s.quantity("rest_length", Dimension::Length);
      s.finish();
    }
    {
      auto b = g.map("backbone");
      auto& bb = sc.system.backbone;
      bb.length = b.quantity("length", Dimension::Length);
      bb.bending_stiffness_x = b.quantity("bending_stiffness_x", Dimension::FlexuralRigidity);
      bb.bending_stiffness_y = b.quantity("bending_stiffness_y", Dimension::FlexuralRigidity);
      bb.torsional_stiffness = b.quantity("torsional_stiffness", Dimension::FlexuralRigidity);
      b.finish();
    }
    {
      auto mu = g.map("muscles");
      auto& layout = sc.muscles;
      layout.springs_per_unit = mu.integer("springs_per_unit");
      const YAML::Node az = mu.node("azimuths");
      const std::string az_path = mu.child_path("azimuths");
      if (!az.IsSequence() || az.size() != kUnitCount) {
        throw ValidationError(az_path, "expected a list of 3 angles");
      }
      for (std::size_t k = 0; k < kUnitCount; ++k) {
        layout.azimuths[k] = MapReader::quantity_of(
            az[k], Dimension::Angle, az_path + "." + std::to_string(k));
      }
      layout.head_radius = mu.quantity("head_radius", Dimension::Length);
      layout.base_radius = mu.quantity("base_radius", Dimension::Length);
      layout.pennation_angle = mu.quantity("pennation_angle", Dimension::Angle);
      layout.tendon_stiffness = mu.quantity("tendon_stiffness", Dimension::Stiffness);
      layout.initial_force = mu.quantity("initial_force", Dimension::Force);
      layout.force_combination =
          parse_combination(mu.text("force_combination"), mu.child_path("force_combination"));
      mu.finish();
      if (layout.springs_per_unit < 1) {
        throw ValidationError(mu.child_path("springs_per_unit"), "must be >= 1");
      }
      if (!(layout.head_radius > 0.0)) {
        throw ValidationError(mu.child_path("head_radius"), "must be > 0");
      }
      if (!(layout.base_radius > 0.0)) {
        throw ValidationError(mu.child_path("base_radius"), "must be > 0");
      }
    }
    sc.system.head_mass = g.quantity("head_mass", Dimension::Mass);
    g.finish();
  }

  {
    auto s = root.map("simulation");
    sc.system.env.ambient_temperature =
        s.quantity("ambient_temperature", Dimension::Temperature);
    sc.sim.dt = s.quantity("dt", Dimension::Time);
    sc.sim.duration = s.quantity("duration", Dimension::Time);
    sc.sim.solver.tolerance = s.quantity("solver_tolerance", Dimension::Moment);
    sc.sim.solver.max_iterations = s.integer("max_newton_iterations");
    sc.sim.step.max_temperature_step =
        s.quantity("max_temperature_step", Dimension::TemperatureDelta);
    sc.system.gravity_enabled = s.boolean("gravity");
    if (s.has("output")) {
      auto o = s.map("output");
      sc.output.run_id = o.text("run_id");
      sc.output.plots = o.boolean("plots");
      o.finish();
    }
    s.finish();
  }

  {
    const YAML::Node p = root.node("profile");
    if (!p.IsSequence()) throw ValidationError("profile", "expected a list of segments");
    std::vector<CurrentSegment> segments;
    for (std::size_t i = 0; i < p.size(); ++i) {
      MapReader seg(p[i], "profile." + std::to_string(i));
      CurrentSegment s;
      s.unit = seg.integer("unit");
      s.start = seg.quantity("start", Dimension::Time);
      s.end = seg.quantity("end", Dimension::Time);
      s.amps = seg.quantity("current", Dimension::Current);
      seg.finish();
      segments.push_back(s);
    }
    sc.sim.profile = CurrentProfile(std::move(segments));
  }
  root.finish();

  sc.apply_layout();
  sc.system.validate();
  sc.sim.validate();
  sc.sim.profile.validate();
  if (sc.output.run_id.empty() ||
      sc.output.run_id.find_first_of("/\\") != std::string::npos) {
    throw ValidationError("simulation.output.run_id",
                          "must be a non-empty file name stem");
  }
  return sc;
}

}  // namespace

Scenario load_scenario(std::string_view text,
                       const std::vector<Override>& overrides) {
  YAML::Node doc = detail::parse_document(text);
  for (const auto& o : overrides) apply_override(doc, o);
  return read_scenario(doc);
}

Scenario load_scenario_file(const std::filesystem::path& path,
                            const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str(), overrides);
}

std::string dump_scenario(const Scenario& sc) {
  const auto q = [](double v, Dimension d) { return format_quantity(v, d); };
  const auto& mat = sc.system.material;
  const auto& sp = sc.system.spring;
  const auto& bb = sc.system.backbone;
  const auto& mu = sc.muscles;

  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << sc.schema_version;

  out << YAML::Key << "material" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "young_martensite" << YAML::Value << q(mat.young_martensite, Dimension::Pressure);
  out << YAML::Key << "young_austenite" << YAML::Value << q(mat.young_austenite, Dimension::Pressure);
  out << YAML::Key << "poisson" << YAML::Value << format_double(mat.poisson);
  out << YAML::Key << "phase_transform_tensor" << YAML::Value << q(mat.phase_transform_tensor, Dimension::Pressure);
  out << YAML::Key << "thermal_expansion_factor" << YAML::Value << q(mat.thermal_expansion_factor, Dimension::PressurePerKelvin);
  out << YAML::Key << "austenite_start" << YAML::Value << q(mat.austenite_start, Dimension::Temperature);
  out << YAML::Key << "austenite_finish" << YAML::Value << q(mat.austenite_finish, Dimension::Temperature);
  out << YAML::Key << "martensite_start" << YAML::Value << q(mat.martensite_start, Dimension::Temperature);
  out << YAML::Key << "martensite_finish" << YAML::Value << q(mat.martensite_finish, Dimension::Temperature);
  out << YAML::Key << "stress_influence_reverse" << YAML::Value << q(mat.stress_influence_reverse, Dimension::PressurePerKelvin);
  out << YAML::Key << "stress_influence_forward" << YAML::Value << q(mat.stress_influence_forward, Dimension::PressurePerKelvin);
  out << YAML::Key << "resistance_martensite" << YAML::Value << q(mat.resistance_martensite, Dimension::Resistance);
  out << YAML::Key << "resistance_austenite" << YAML::Value << q(mat.resistance_austenite, Dimension::Resistance);
  out << YAML::Key << "specific_heat" << YAML::Value << q(mat.specific_heat, Dimension::SpecificHeat);
  out << YAML::Key << "latent_heat" << YAML::Value << q(mat.latent_heat, Dimension::SpecificEnergy);
  out << YAML::Key << "convection_coefficient" << YAML::Value
      << q(sc.system.env.convection_coefficient, Dimension::HeatTransferCoefficient);
  out << YAML::EndMap;

  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "spring" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "wire_diameter" << YAML::Value << q(sp.wire_diameter, Dimension::Length);
  out << YAML::Key << "coil_diameter" << YAML::Value << q(sp.coil_diameter, Dimension::Length);
  out << YAML::Key << "active_coils" << YAML::Value << format_double(sp.active_coils);
  out << YAML::Key << "mass" << YAML::Value << q(sp.mass, Dimension::Mass);
  out << YAML::Key << "surface_area" << YAML::Value << q(sp.surface_area, Dimension::Area);
  out << YAML::Key << "rest_length" << YAML::Value << q(sp.rest_length, Dimension::Length);
  out << YAML::EndMap;
  out << YAML::Key << "backbone" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "length" << YAML::Value << q(bb.length, Dimension::Length);
  out << YAML::Key << "bending_stiffness_x" << YAML::Value << q(bb.bending_stiffness_x, Dimension::FlexuralRigidity);
  out << YAML::Key << "bending_stiffness_y" << YAML::Value << q(bb.bending_stiffness_y, Dimension::FlexuralRigidity);
  out << YAML::Key << "torsional_stiffness" << YAML::Value << q(bb.torsional_stiffness, Dimension::FlexuralRigidity);
  out << YAML::EndMap;
  out << YAML::Key << "muscles" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "springs_per_unit" << YAML::Value << mu.springs_per_unit;
  out << YAML::Key << "azimuths" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double a : mu.azimuths) out << q(a, Dimension::Angle);
  out << YAML::EndSeq;
  out << YAML::Key << "head_radius" << YAML::Value << q(mu.head_radius, Dimension::Length);
  out << YAML::Key << "base_radius" << YAML::Value << q(mu.base_radius, Dimension::Length);
  out << YAML::Key << "pennation_angle" << YAML::Value << q(mu.pennation_angle, Dimension::Angle);
  out << YAML::Key << "tendon_stiffness" << YAML::Value << q(mu.tendon_stiffness, Dimension::Stiffness);
  out << YAML::Key << "initial_force" << YAML::Value << q(mu.initial_force, Dimension::Force);
  out << YAML::Key << "force_combination" << YAML::Value << combination_name(mu.force_combination);
  out << YAML::EndMap;
  out << YAML::Key << "head_mass" << YAML::Value << q(sc.system.head_mass, Dimension::Mass);
  out << YAML::EndMap;

  out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "ambient_temperature" << YAML::Value
      << q(sc.system.env.ambient_temperature, Dimension::Temperature);
  out << YAML::Key << "dt" << YAML::Value << q(sc.sim.dt, Dimension::Time);
  out << YAML::Key << "duration" << YAML::Value << q(sc.sim.duration, Dimension::Time);
  out << YAML::Key << "solver_tolerance" << YAML::Value << q(sc.sim.solver.tolerance, Dimension::Moment);
  out << YAML::Key << "max_newton_iterations" << YAML::Value << sc.sim.solver.max_iterations;
  out << YAML::Key << "max_temperature_step" << YAML::Value
      << q(sc.sim.step.max_temperature_step, Dimension::TemperatureDelta);
  out << YAML::Key << "gravity" << YAML::Value << sc.system.gravity_enabled;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "run_id" << YAML::Value << sc.output.run_id;
  out << YAML::Key << "plots" << YAML::Value << sc.output.plots;
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::Key << "profile" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : sc.sim.profile.segments()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "unit" << YAML::Value << s.unit;
    out << YAML::Key << "start" << YAML::Value << q(s.start, Dimension::Time);
    out << YAML::Key << "end" << YAML::Value << q(s.end, Dimension::Time);
    out << YAML::Key << "current" << YAML::Value << q(s.amps, Dimension::Current);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace smaneck
