#include "smaneck/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "smaneck/errors.hpp"

namespace smaneck {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

void put(std::string& line, double v) {
  char buf[32];
  // %.9g without locale dependence.
  const auto r = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 9);
  line.append(buf, r.ptr);
}

double take(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (r.ec != std::errc{} || r.ptr != cell.data() + cell.size()) {
    throw ParseError("trace line " + std::to_string(line_no) +
                     ": bad number '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  return cells;
}

}  // namespace

std::vector<std::string> trace_columns(std::size_t springs) {
  std::vector<std::string> cols{"t_s", "kappa_per_m", "phi_rad", "theta_deg"};
  for (std::size_t i = 1; i <= springs; ++i) cols.push_back("T" + std::to_string(i) + "_K");
  for (std::size_t i = 1; i <= springs; ++i) cols.push_back("xi" + std::to_string(i));
  for (int k = 1; k <= kUnitCount; ++k) cols.push_back("Fk" + std::to_string(k) + "_N");
  cols.push_back("residual_Nm");
  return cols;
}

void write_trace(const SimTrace& trace, std::ostream& out) {
  if (trace.rows.empty()) throw std::invalid_argument("cannot write an empty trace");
  const std::size_t springs = trace.rows.front().springs.size();
  const auto cols = trace_columns(springs);
  std::string line;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) line += ',';
    line += cols[i];
  }
  line += '\n';
  out << line;
  for (const auto& row : trace.rows) {
    line.clear();
    put(line, row.time);
    line += ',';
    put(line, row.pose.curvature());
    line += ',';
    put(line, row.reported_phi);
    line += ',';
    put(line, row.bending_angle * kDegPerRad);
    for (const auto& s : row.springs) {
      line += ',';
      put(line, s.temperature);
    }
    for (const auto& s : row.springs) {
      line += ',';
      put(line, s.fraction);
    }
    for (double f : row.unit_forces) {
      line += ',';
      put(line, f);
    }
    line += ',';
    put(line, row.residual_norm);
    line += '\n';
    out << line;
  }
}

void write_trace(const SimTrace& trace, const std::filesystem::path& path) {
  if (trace.rows.empty()) throw std::invalid_argument("cannot write an empty trace");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_trace(trace, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

SimTrace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace is empty");
  const auto header = split(line);
  if (header.size() < 8 || (header.size() - 8) % 2 != 0) {
    throw ParseError("trace header has an unexpected column count");
  }
  const std::size_t springs = (header.size() - 8) / 2;
  if (header != trace_columns(springs)) {
    throw ParseError("trace header does not match the column contract");
  }

  SimTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError("trace line " + std::to_string(line_no) +
                       ": expected " + std::to_string(header.size()) + " cells");
    }
    std::size_t c = 0;
    TraceRow row;
    row.time = take(cells[c++], line_no);
    const double kappa = take(cells[c++], line_no);
    row.reported_phi = take(cells[c++], line_no);
    row.bending_angle = take(cells[c++], line_no) / kDegPerRad;
    row.phi_defined = row.bending_angle > kPhiDefinedAngle;
    row.pose = ArcPose(kappa, row.reported_phi);
    row.springs.resize(springs);
    for (auto& s : row.springs) s.temperature = take(cells[c++], line_no);
    for (auto& s : row.springs) s.fraction = take(cells[c++], line_no);
    for (auto& f : row.unit_forces) f = take(cells[c++], line_no);
    row.residual_norm = take(cells[c++], line_no);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

}  // namespace smaneck
