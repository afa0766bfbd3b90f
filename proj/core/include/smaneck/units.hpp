#pragma once

#include <string>
#include <string_view>

namespace smaneck {

// Physical dimension of a scenario field. Each dimension accepts a fixed set
// of unit spellings; values are converted to SI (temperatures to kelvin).
enum class Dimension {
  Dimensionless,
  Length,
  Area,
  Mass,
  Time,
  Current,
  Resistance,
  Temperature,
  TemperatureDelta,
  Angle,
  Pressure,
  PressurePerKelvin,
  SpecificHeat,
  SpecificEnergy,
  HeatTransferCoefficient,
  Force,
  Stiffness,
  Moment,
  FlexuralRigidity,
};

const char* to_string(Dimension dimension);

// SI unit used when dumping a value of this dimension.
const char* si_unit(Dimension dimension);

// Parses "<number> <unit>" into SI. `path` is used in error messages.
// Throws UnitsError for a bad unit and ParseError
// for a malformed number.
double parse_quantity(std::string_view text, Dimension dimension,
                      const std::string& path);

// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

// "<value> <si unit>", the inverse of parse_quantity for SI values.
std::string format_quantity(double value, Dimension dimension);

}  // namespace smaneck
