#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "smaneck/simulation.hpp"

namespace smaneck {

// Column names of the trace CSV for a system with `springs` fibers.
std::vector<std::string> trace_columns(std::size_t springs);

// One header line plus one line per row, 9 significant digits.
// Throws std::invalid_argument for an empty trace.
void write_trace(const SimTrace& trace, std::ostream& out);

// Writes to a file; I/O failures raise IoError naming the path.
void write_trace(const SimTrace& trace, const std::filesystem::path& path);

// Reads back what write_trace produced. Only the columns present in the CSV
// are restored: time, pose (twist is not stored), theta, phi, per-spring
// temperature and fraction, unit forces and residual.
SimTrace read_trace(std::istream& in);

}  // namespace smaneck
