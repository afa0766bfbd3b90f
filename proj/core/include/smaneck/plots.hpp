#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smaneck/simulation.hpp"

namespace smaneck {

struct PlotFile {
  std::string name;    // e.g. "run_theta.svg"
  std::string content; // SVG document
};

// Panels: phi, theta, force, temperature, xi.
inline constexpr const char* kPlotPanels[] = {"phi", "theta", "force",
                                              "temperature", "xi"};

// Index of the first row at which the lead fiber's fraction drops, or -1.
// The lead fiber is the one reaching the highest temperature.
long austenite_crossing_row(const SimTrace& trace);

// Renders the five panels. Throws std::invalid_argument for an empty trace.
std::vector<PlotFile> render_plots(const SimTrace& trace,
                                   const std::string& run_id);

// Writes render_plots() into `directory`; returns the written paths.
std::vector<std::filesystem::path> emit_plots(
    const SimTrace& trace, const std::filesystem::path& directory,
    const std::string& run_id);

}  // namespace smaneck
