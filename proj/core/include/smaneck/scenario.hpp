#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smaneck/simulation.hpp"

namespace smaneck {

inline constexpr int kSchemaVersion = 1;

// Muscle layout as written in the scenario document; the three PennateUnit
// values of the system are derived from it.
struct MuscleLayout {
  int springs_per_unit = 2;
  std::array<double, kUnitCount> azimuths{}; // rad
  double head_radius = 0.035;                // m
  double base_radius = 0.035;                // m
  double pennation_angle = 0.0;              // rad
  double tendon_stiffness = 0.0;             // N/m
  double initial_force = 0.0;                // N
  ForceCombination force_combination = ForceCombination::Additive;

  bool operator==(const MuscleLayout&) const = default;
};

struct OutputOptions {
  std::string run_id = "run";
  bool plots = false;

  bool operator==(const OutputOptions&) const = default;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  NeckSystem system;
  MuscleLayout muscles;
  SimConfig sim;
  OutputOptions output;

  // Rebuilds system.units and the preload from `muscles`.
  void apply_layout();

  // Index (1-based) of the unit driven by the first profile segment, or 1.
  int driven_unit() const;
};

bool operator==(const Scenario& a, const Scenario& b);

// The scenario compiled into the library (the default prototype setup).
std::string_view bundled_scenario_text();

// A "dotted.key=value" override applied to the document before validation.
// Sequence elements are addressed by index, e.g. profile.0.current=4 A.
struct Override {
  std::string path;
  std::string value;
};

Override parse_override(std::string_view text);

// Parses and validates a scenario document. Throws ParseError,
// ValidationError (with field path) or UnitsError.
Scenario load_scenario(std::string_view text,
                       const std::vector<Override>& overrides = {});

Scenario load_scenario_file(const std::filesystem::path& path,
                            const std::vector<Override>& overrides = {});

// Serializes in SI units; load_scenario(dump_scenario(s)) == s.
std::string dump_scenario(const Scenario& scenario);

}  // namespace smaneck
