// propagation.hpp - z-marching of the envelope + population system in the
// retarded frame (tau = t - z/c, z).

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "slowlight/config.hpp"
#include "slowlight/core.hpp"

namespace slowlight {

/// Per-step bound on the |Heun - midpoint| population estimate.
inline constexpr double kLocalErrorTolerance = 1e-6;
/// Envelope values below this are flushed to zero.
inline constexpr double kUnderflowFloor = 1e-30;
/// Explicit full-model steps need dt * max(gamma1, gamma3) below this.
inline constexpr double kExplicitStiffnessLimit = 0.5;

struct Slice {
    double z;  // meters
    Envelope envelope;
};

struct FullModelDiagnostics {
    double max_trace_error = 0.0;
    double min_population = 1.0;
    double max_population = 0.0;
};

struct PropagationResult {
    Envelope input;
    Envelope output;
    std::vector<Slice> slices;
    std::optional<std::vector<double>> populations_out;  // rho_gg(tau) at z = L
    std::size_t steps_taken = 0;
    double convergence_estimate = 0.0;
    std::optional<FullModelDiagnostics> full_diagnostics;
};

/// Population history of a reduced model at fixed depth (Heun in T, envelope
/// linearly interpolated at half-steps for the error estimate). Returns the
/// model population: rho_gg (three/four-level) or rho_11 (two-level).
/// Throws NumericalError when a step's local error estimate exceeds `tolerance`.
std::vector<double> solve_population_history(const MediumSpec& medium, const Envelope& envelope,
                                             double rho_init,
                                             double tolerance = kLocalErrorTolerance);

/// Population at the first sample: dark state for pulses, steady state at
/// the leading amplitude for modulated beams.
double initial_population(const MediumSpec& medium, const SourceSpec& source, double leading_amp);

/// Reduced-model propagation, second order in dz and dT.
PropagationResult propagate(const ValidatedConfig& cfg);

enum class StiffScheme {
    Explicit,  // Heun; needs dt * gamma1 <= 0.5
    Implicit,  // two-stage Radau IIA, L-stable
};

struct FullModelOptions {
    StiffScheme scheme = StiffScheme::Implicit;
};

/// dt * max(gamma1, gamma3), i.e. the dimensionless step times gamma1/(2 gamma2).
double stiffness_number(const ValidatedConfig& cfg);

/// Propagation with the full density-matrix dynamics (three- or four-level).
PropagationResult propagate_full(const ValidatedConfig& cfg, FullModelOptions options = {});

}  // namespace slowlight
