#include "smaneck/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "smaneck/errors.hpp"

namespace smaneck {

namespace {

struct UnitSpec {
  std::string_view symbol;
  Dimension dimension;
  double scale;
  double offset = 0.0; // si = value * scale + offset
};

constexpr double kDeg = std::numbers::pi / 180.0;

// clang-format off
constexpr std::array kUnits = {
  UnitSpec{"1", Dimension::Dimensionless, 1.0},
  UnitSpec{"-", Dimension::Dimensionless, 1.0},

  UnitSpec{"m", Dimension::Length, 1.0},
  UnitSpec{"cm", Dimension::Length, 1e-2},
  UnitSpec{"mm", Dimension::Length, 1e-3},
  UnitSpec{"um", Dimension::Length, 1e-6},

  UnitSpec{"m^2", Dimension::Area, 1.0},
  UnitSpec{"cm^2", Dimension::Area, 1e-4},
  UnitSpec{"mm^2", Dimension::Area, 1e-6},

  UnitSpec{"kg", Dimension::Mass, 1.0},
  UnitSpec{"g", Dimension::Mass, 1e-3},
  UnitSpec{"mg", Dimension::Mass, 1e-6},

  UnitSpec{"s", Dimension::Time, 1.0},
  UnitSpec{"ms", Dimension::Time, 1e-3},
  UnitSpec{"us", Dimension::Time, 1e-6},

  UnitSpec{"A", Dimension::Current, 1.0},
  UnitSpec{"mA", Dimension::Current, 1e-3},

  UnitSpec{"ohm", Dimension::Resistance, 1.0},
  UnitSpec{"mohm", Dimension::Resistance, 1e-3},

  UnitSpec{"K", Dimension::Temperature, 1.0},
  UnitSpec{"degC", Dimension::Temperature, 1.0, 273.15},

  UnitSpec{"K", Dimension::TemperatureDelta, 1.0},
  UnitSpec{"degC", Dimension::TemperatureDelta, 1.0},

  UnitSpec{"rad", Dimension::Angle, 1.0},
  UnitSpec{"deg", Dimension::Angle, kDeg},

  UnitSpec{"Pa", Dimension::Pressure, 1.0},
  UnitSpec{"kPa", Dimension::Pressure, 1e3},
  UnitSpec{"MPa", Dimension::Pressure, 1e6},
  UnitSpec{"GPa", Dimension::Pressure, 1e9},

  UnitSpec{"Pa/K", Dimension::PressurePerKelvin, 1.0},
  UnitSpec{"kPa/K", Dimension::PressurePerKelvin, 1e3},
  UnitSpec{"MPa/K", Dimension::PressurePerKelvin, 1e6},

  UnitSpec{"J/kg/K", Dimension::SpecificHeat, 1.0},
  UnitSpec{"J/(kg*K)", Dimension::SpecificHeat, 1.0},
  UnitSpec{"kJ/kg/K", Dimension::SpecificHeat, 1e3},

  UnitSpec{"J/kg", Dimension::SpecificEnergy, 1.0},
  UnitSpec{"kJ/kg", Dimension::SpecificEnergy, 1e3},

  UnitSpec{"W/m^2/K", Dimension::HeatTransferCoefficient, 1.0},
  UnitSpec{"W/(m^2*K)", Dimension::HeatTransferCoefficient, 1.0},

  UnitSpec{"N", Dimension::Force, 1.0},
  UnitSpec{"mN", Dimension::Force, 1e-3},

  UnitSpec{"N/m", Dimension::Stiffness, 1.0},
  UnitSpec{"N/mm", Dimension::Stiffness, 1e3},

  UnitSpec{"N*m", Dimension::Moment, 1.0},
  UnitSpec{"N*mm", Dimension::Moment, 1e-3},

  UnitSpec{"N*m^2", Dimension::FlexuralRigidity, 1.0},
  UnitSpec{"N*mm^2", Dimension::FlexuralRigidity, 1e-6},
};
// clang-format on

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::Dimensionless: return "dimensionless";
    case Dimension::Length: return "length";
    case Dimension::Area: return "area";
    case Dimension::Mass: return "mass";
    case Dimension::Time: return "time";
    case Dimension::Current: return "current";
    case Dimension::Resistance: return "resistance";
    case Dimension::Temperature: return "temperature";
    case Dimension::TemperatureDelta: return "temperature difference";
    case Dimension::Angle: return "angle";
    case Dimension::Pressure: return "pressure";
    case Dimension::PressurePerKelvin: return "pressure per kelvin";
    case Dimension::SpecificHeat: return "specific heat";
    case Dimension::SpecificEnergy: return "specific energy";
    case Dimension::HeatTransferCoefficient: return "heat transfer coefficient";
    case Dimension::Force: return "force";
    case Dimension::Stiffness: return "stiffness";
    case Dimension::Moment: return "moment";
    case Dimension::FlexuralRigidity: return "flexural rigidity";
  }
  return "unknown";
}

const char* si_unit(Dimension dimension) {
  switch (dimension) {
    case Dimension::Dimensionless: return "1";
    case Dimension::Length: return "m";
    case Dimension::Area: return "m^2";
    case Dimension::Mass: return "kg";
    case Dimension::Time: return "s";
    case Dimension::Current: return "A";
    case Dimension::Resistance: return "ohm";
    case Dimension::Temperature: return "K";
    case Dimension::TemperatureDelta: return "K";
    case Dimension::Angle: return "rad";
    case Dimension::Pressure: return "Pa";
    case Dimension::PressurePerKelvin: return "Pa/K";
    case Dimension::SpecificHeat: return "J/kg/K";
    case Dimension::SpecificEnergy: return "J/kg";
    case Dimension::HeatTransferCoefficient: return "W/m^2/K";
    case Dimension::Force: return "N";
    case Dimension::Stiffness: return "N/m";
    case Dimension::Moment: return "N*m";
    case Dimension::FlexuralRigidity: return "N*m^2";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dimension,
                      const std::string& path) {
  text = trim(text);
  const auto space = text.find_first_of(" \t");
  const std::string_view number = text.substr(0, space);
  const std::string_view unit =
      space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));

  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || end != number.data() + number.size() ||
      !std::isfinite(value)) {
    throw ParseError(path + ": expected '<number> <unit>', got '" +
                     std::string(text) + "'");
  }
  if (unit.empty()) {
    throw UnitsError(path, "missing unit (expected " +
                               std::string(to_string(dimension)) + ")");
  }
  bool known = false;
  for (const auto& spec : kUnits) {
    if (spec.symbol != unit) continue;
    known = true;
    if (spec.dimension == dimension) return value * spec.scale + spec.offset;
  }
  throw UnitsError(path, std::string(known ? "unit '" : "unknown unit '") +
                             std::string(unit) + "'" +
                             (known ? " is not a " : "; expected ") +
                             to_string(dimension));
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string format_quantity(double value, Dimension dimension) {
  return format_double(value) + " " + si_unit(dimension);
}

}  // namespace smaneck
