// config.hpp - simulation configuration and its validation.

#pragma once

#include <string>
#include <vector>

#include "slowlight/core.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/sources.hpp"

namespace slowlight {

// Accuracy guards on the dimensionless steps.
inline constexpr double kMaxTimeStep = 0.1;   // 2 gamma2 dt
inline constexpr double kMaxDepthStep = 0.2;  // alpha0 dz
inline constexpr double kDefaultDepthStep = 0.1;
inline constexpr int kMinDepthSteps = 8;
inline constexpr std::size_t kMinSamples = 16;

struct SimulationConfig {
    MediumSpec medium;
    double length_m = 0.0;
    int n_z = 0;
    TimeGrid grid;
    SourceSpec source;
    int record_slices = 0;

    bool operator==(const SimulationConfig&) const = default;
};

/// Smallest n_z >= 8 with max_absorption * dz <= 0.1.
int default_depth_steps(const MediumSpec& medium, double length_m);

/// A SimulationConfig whose invariants have been checked, with derived steps.
class ValidatedConfig {
public:
    const SimulationConfig& config() const noexcept { return cfg_; }
    const MediumSpec& medium() const noexcept { return cfg_.medium; }
    const TimeGrid& grid() const noexcept { return cfg_.grid; }

    double time_step() const noexcept { return time_step_; }    // 2 gamma2 dt
    double depth_step() const noexcept { return depth_step_; }  // L / n_z, meters

    /// Soft warnings raised during validation (e.g. marginal gamma1/gamma2).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    bool operator==(const ValidatedConfig&) const = default;

private:
    friend ValidatedConfig validate_config(const SimulationConfig& cfg);
    explicit ValidatedConfig(SimulationConfig cfg);

    SimulationConfig cfg_;
    double time_step_ = 0.0;
    double depth_step_ = 0.0;
    std::vector<std::string> warnings_;
};

/// All violated invariants; empty when the config is valid.
std::vector<ConfigIssue> check_config(const SimulationConfig& cfg);

/// Throws ConfigError listing every violated invariant.
ValidatedConfig validate_config(const SimulationConfig& cfg);
inline ValidatedConfig validate_config(const ValidatedConfig& cfg) { return cfg; }

/// Extra requirements of the full density-matrix models (gamma1, gamma3,
/// gamma1/gamma2 >= 1e3). Returns issues; appends soft warnings.
std::vector<ConfigIssue> check_full_model(const MediumSpec& medium,
                                          std::vector<std::string>* warnings = nullptr);

}  // namespace slowlight
