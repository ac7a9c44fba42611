// runner.hpp - executes scenarios: sweeps on a worker pool, calibration, files.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/convergence.hpp"
#include "slowlight/scenario.hpp"

namespace slowlight {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SLOWLIGHT_OUTPUT_DIR";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNumerical = 3 };

struct PointOutcome {
    double param;
    SimulationConfig config;
    PropagationResult result;
    Observables observables;
    std::optional<ConvergenceReport> convergence;
};

/// Propagates one config at the scenario's fidelity.
PropagationResult run_point(const Scenario& scenario, const SimulationConfig& cfg);

/// Runs every sweep point on `workers` threads (0 = hardware concurrency).
/// Results are ordered by sweep index; the lowest-index failure is rethrown.
/// refine > 0 adds a convergence study with that many halvings per point.
std::vector<PointOutcome> run_scenario(const Scenario& scenario, unsigned workers = 0, int refine = 0);

struct EmitOptions {
    std::filesystem::path out_dir;
    bool plots = false;
};

/// Writes the requested artifacts; returns the files written.
std::vector<std::filesystem::path> emit_scenario(const Scenario& scenario, const std::vector<PointOutcome>& points,
                                                 const EmitOptions& options);

struct Calibration {
    double alpha0;    // 1/m
    double depth;     // alpha0 * L
    double t_energy;  // achieved
    int evaluations;
};

/// Relative tolerance on t_energy at which the bisection stops.
inline constexpr double kCalibrationTolerance = 0.01;

/// Bisection on alpha0 (n_z re-derived at each trial) until t_energy is within
/// kCalibrationTolerance of `target`. The scenario's sweep, if any, is ignored.
Calibration calibrate_alpha0(double target, const Scenario& scenario);

/// --out flag if given, else $SLOWLIGHT_OUTPUT_DIR, else the working directory.
std::filesystem::path output_directory(const std::optional<std::string>& flag);

/// Entry point of the command-line tool; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slowlight
