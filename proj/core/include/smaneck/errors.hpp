#pragma once

#include <stdexcept>
#include <string>

namespace smaneck {

// Base class for every error raised by the library. kind() is a stable,
// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

class ValidationError : public Error {
public:
  ValidationError(std::string path, const std::string& what)
      : Error("ValidationError", path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

class UnitsError : public Error {
public:
  UnitsError(std::string path, const std::string& what)
      : Error("UnitsError", path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

class StepTooLarge : public Error {
public:
  StepTooLarge(double delta_temperature, double bound)
      : Error("StepTooLarge",
              "temperature change " + std::to_string(delta_temperature) +
                  " K per step exceeds bound " + std::to_string(bound) +
                  " K; reduce dt"),
        delta_(delta_temperature) {}

  double delta_temperature() const noexcept { return delta_; }

private:
  double delta_;
};

class NoConvergence : public Error {
public:
  NoConvergence(double best_residual, int iterations)
      : Error("NoConvergence", "pose solver did not converge after " +
                                   std::to_string(iterations) +
                                   " iterations; best residual " +
                                   std::to_string(best_residual) + " N*m"),
        best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

class PoseOutOfRange : public Error {
public:
  explicit PoseOutOfRange(double bending_angle)
      : Error("PoseOutOfRange", "bending angle " +
                                    std::to_string(bending_angle) +
                                    " rad left [0, pi]") {}
};

class NonImprovement : public Error {
public:
  explicit NonImprovement(const std::string& what)
      : Error("NonImprovement", what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error("IoError", what) {}
};

// Wraps a solver error with the simulation time at which it occurred.
class SimulationError : public Error {
public:
  SimulationError(const Error& cause, double time)
      : Error(cause.kind(), "t=" + std::to_string(time) + " s: " + cause.what()),
        time_(time) {}

  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace smaneck
