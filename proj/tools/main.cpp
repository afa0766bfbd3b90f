// smaneck command-line front end.

#include <chrono>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smaneck/calibrate.hpp"
#include "smaneck/errors.hpp"
#include "smaneck/plots.hpp"
#include "smaneck/scenario.hpp"
#include "smaneck/trace_io.hpp"
#include "smaneck/units.hpp"

namespace fs = std::filesystem;
using namespace smaneck;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

enum Exit { kOk = 0, kInvalid = 1, kSolver = 2 };

struct Options {
  std::optional<std::string> scenario;
  std::string out = ".";
  std::vector<std::string> overrides;
  std::vector<double> currents{4, 5, 6, 7, 8};
  double hold = 5.0;
  bool plots = false;
  bool quiet = false;
  std::optional<std::string> calibration;
};

std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

// One machine-readable line, then one line for humans.
int fail(int code, const std::string& kind, const std::string& message,
         const std::string& path, const std::string& hint) {
  std::cerr << "error kind=" << kind;
  if (!path.empty()) std::cerr << " path=" << path;
  std::cerr << " exit=" << code << " message=" << quoted(message) << '\n';
  std::cerr << hint << '\n';
  return code;
}

bool is_solver_kind(const std::string& kind) {
  return kind == "NoConvergence" || kind == "PoseOutOfRange" ||
         kind == "StepTooLarge" || kind == "NonImprovement";
}

Scenario load(const Options& o) {
  std::vector<Override> overrides;
  for (const auto& s : o.overrides) overrides.push_back(parse_override(s));
  Scenario sc = o.scenario ? load_scenario_file(*o.scenario, overrides)
                           : load_scenario(bundled_scenario_text(), overrides);
  return sc;
}

fs::path prepare_out(const Options& o) {
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

int run_simulate(const Options& o) {
  const Scenario sc = load(o);
  const fs::path dir = prepare_out(o);
  const auto started = std::chrono::steady_clock::now();
  const SimTrace trace = simulate(sc.system, sc.sim);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const fs::path csv = dir / (sc.output.run_id + ".csv");
  write_trace(trace, csv);
  if (o.plots || sc.output.plots) {
    for (const auto& p : emit_plots(trace, dir, sc.output.run_id)) {
      if (!o.quiet) std::cerr << "wrote " << p.string() << '\n';
    }
  }
  if (!o.quiet) std::cerr << "wrote " << csv.string() << '\n';
  const auto& last = trace.rows.back();
  std::cout << "max_theta_deg=" << format_double(trace.max_bending_angle() * kDeg)
            << " final_phi_deg=" << format_double(last.reported_phi * kDeg)
            << " wall_time_s=" << wall << '\n';
  return kOk;
}

int run_sweep(const Options& o) {
  const Scenario sc = load(o);
  if (o.currents.empty()) throw ValidationError("--currents", "at least one current");
  for (double c : o.currents) {
    if (!(c >= 0.0)) throw ValidationError("--currents", "currents must be >= 0 A");
  }
  if (!(o.hold > 0.0)) throw ValidationError("--hold", "must be > 0 s");
  const fs::path dir = prepare_out(o);
  const auto rows = sweep(sc.system, sc.sim, sc.driven_unit(), o.currents, o.hold);

  std::ostringstream csv;
  csv << "current_A,max_theta_deg\n";
  std::cout << "current_A  max_theta_deg\n";
  int status = kOk;
  for (const auto& r : rows) {
    if (r.error) {
      status = kSolver;
      csv << format_double(r.current) << ",nan\n";
      std::cout << r.current << "  failed: " << *r.error << '\n';
    } else {
      csv << format_double(r.current) << ',' << format_double(r.max_bending_angle * kDeg) << '\n';
      char line[64];
      std::snprintf(line, sizeof line, "%9.3f  %13.4f", r.current, r.max_bending_angle * kDeg);
      std::cout << line << '\n';
    }
  }
  const fs::path path = dir / (sc.output.run_id + "_sweep.csv");
  write_text(path, csv.str());
  if (!o.quiet) std::cerr << "wrote " << path.string() << '\n';
  if (status != kOk) {
    return fail(kSolver, "SweepFailure", "one or more sweep rows failed", "",
                "See the failed rows above; a smaller dt or lower current usually helps.");
  }
  return kOk;
}

int run_calibrate(const Options& o) {
  const Scenario sc = load(o);
  const CalibrationSpec spec = o.calibration ? load_calibration_file(*o.calibration)
                                             : load_calibration(bundled_calibration_text());
  const fs::path dir = prepare_out(o);
  std::function<void(const std::string&)> log;
  if (!o.quiet) log = [](const std::string& m) { std::cerr << m << '\n'; };
  const CalibrationResult result = calibrate(sc, spec, log);
  const std::string report = format_report(result);
  std::cout << report;
  write_text(dir / (sc.output.run_id + "_calibration.csv"), report);
  write_text(dir / (sc.output.run_id + "_calibrated.yaml"),
             dump_scenario(apply_calibration(sc, result)));
  return kOk;
}

int run_validate(const Options& o) {
  const Scenario sc = load(o);
  std::cout << "ok schema_version=" << sc.schema_version
            << " units=" << sc.system.units.size()
            << " segments=" << sc.sim.profile.segments().size() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-static simulation of an SMA-actuated neck"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "smaneck 0.1.0");

  Options o;
  const auto common = [&o](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "Scenario file (default: bundled prototype)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--set", o.overrides, "Override key.path=value (repeatable)")
        ->allow_extra_args(false);
    sub->add_flag("--quiet", o.quiet, "Suppress progress messages");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the scenario and write the trace");
  common(simulate_cmd);
  simulate_cmd->add_flag("--plots", o.plots, "Also write SVG plots");

  auto* sweep_cmd = app.add_subcommand("sweep", "Maximum bending angle per current");
  common(sweep_cmd);
  sweep_cmd->add_option("--currents", o.currents, "Currents in A, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--hold", o.hold, "Seconds each current is held")->capture_default_str();

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit parameters to a target table");
  common(calibrate_cmd);
  calibrate_cmd->add_option("--calibration", o.calibration,
                            "Calibration spec (default: bundled table)")
      ->check(CLI::ExistingFile);

  auto* validate_cmd = app.add_subcommand("validate-config", "Check a scenario and exit");
  common(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kInvalid, "UsageError", e.what(), "", "Run 'smaneck --help' for usage.");
  }

  try {
    if (simulate_cmd->parsed()) return run_simulate(o);
    if (sweep_cmd->parsed()) return run_sweep(o);
    if (calibrate_cmd->parsed()) return run_calibrate(o);
    return run_validate(o);
  } catch (const SimulationError& e) {
    return fail(kSolver, e.kind(), e.what(), "",
                "The pose solver or thermal step failed mid-run; try a smaller dt.");
  } catch (const ValidationError& e) {
    return fail(kInvalid, e.kind(), e.what(), e.path(),
                "Fix the named field in the scenario or the --set override.");
  } catch (const UnitsError& e) {
    return fail(kInvalid, e.kind(), e.what(), e.path(),
                "Write quantities as '<number> <unit>', e.g. '5 A' or '88 degC'.");
  } catch (const Error& e) {
    const bool solver = is_solver_kind(e.kind());
    return fail(solver ? kSolver : kInvalid, e.kind(), e.what(), "",
                solver ? "The numerical solve did not succeed with these parameters."
                       : "Check the input files and output directory.");
  } catch (const std::exception& e) {
    return fail(kInvalid, "Error", e.what(), "", "Unexpected failure.");
  }
}
