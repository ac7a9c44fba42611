// scenario.hpp - scenario files: a strict sectioned key = value format.
//
//   [scenario]    name, outputs (envelopes, observables, slices, populations)
//   [medium]      model, gamma2, alpha0, alpha_ratio, sat_factor, gamma1, gamma3
//   [propagation] length_m, n_z, record_slices, fidelity, scheme
//   [grid]        t_start, dt, n
//   [source]      type = gaussian: omega0, sigma | type = modulated: i0, m, delta
//   [sweep]       parameter (peak_amplitude | i0 | delta), values
//
// Unknown sections and keys are errors. README.md documents every key.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slowlight/config.hpp"
#include "slowlight/propagation.hpp"

namespace slowlight {

enum class Artifact { Envelopes, Observables, Slices, Populations };
enum class SweepParameter { PeakAmplitude, I0, Delta };
enum class Fidelity { Reduced, Full };

struct Sweep {
    SweepParameter parameter;
    std::vector<double> values;  // strictly increasing
};

struct Scenario {
    std::string name;
    SimulationConfig config;
    std::optional<Sweep> sweep;
    std::vector<Artifact> outputs{Artifact::Envelopes, Artifact::Observables};
    Fidelity fidelity = Fidelity::Reduced;
    StiffScheme scheme = StiffScheme::Implicit;
    bool auto_depth_steps = true;  // n_z was not given; derived from the medium

    bool wants(Artifact a) const;
    /// One config per sweep value, or the base config alone.
    std::vector<SimulationConfig> points() const;
    /// Swept value at point k (the source amplitude parameter without a sweep).
    double parameter(std::size_t k) const;
};

const char* to_string(SweepParameter p);

/// Parses and validates a scenario. Throws ConfigError listing every problem.
Scenario parse_scenario(std::istream& in, const std::string& default_name);
Scenario parse_scenario_text(const std::string& text, const std::string& default_name);

/// Loads a file, or a bundled preset when no such file exists.
Scenario load_scenario(const std::string& path_or_preset);

/// Copy of `cfg` with the swept parameter set to `value`.
SimulationConfig apply_sweep_value(SimulationConfig cfg, SweepParameter p, double value);

}  // namespace slowlight
