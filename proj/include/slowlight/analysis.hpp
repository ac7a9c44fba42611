// analysis.hpp - observables extracted from propagated envelopes.

#pragma once

#include <optional>

#include "slowlight/config.hpp"
#include "slowlight/core.hpp"
#include "slowlight/propagation.hpp"
#include "slowlight/sources.hpp"

namespace slowlight {

/// Peak time of an envelope by 3-point parabolic interpolation.
/// Throws AnalysisError if the maximum sits on the grid edge or on a plateau.
double peak_time(const Envelope& envelope);

/// t_peak(output) - t_peak(reference); positive means the output is delayed.
double peak_delay(const Envelope& output, const Envelope& reference);

/// Difference of intensity-weighted centroids. Secondary diagnostic only:
/// reshaping under strong absorption biases it.
double centroid_delay(const Envelope& output, const Envelope& reference);

struct GroupVelocity {
    double v_g;         // m/s
    bool superluminal;  // delay < 0: faster than c, or negative v_g
};

/// v_g = L / (L/c + delay).
GroupVelocity group_velocity(double delay_s, double length_m);

struct Transmissions {
    double energy;  // ratio of trapezoidal integrals of amp^2
    double peak;    // (max out / max in)^2
};

Transmissions transmissions(const Envelope& output, const Envelope& input);

/// Full width at half maximum of amp, half-max crossings linearly interpolated.
double fwhm(const Envelope& envelope);
double width_ratio(const Envelope& output, const Envelope& input);

struct ModulationFit {
    double theta;           // phase lag of the output modulation, radians
    double delay_s;         // theta / delta; > 0 when the pattern arrives late
    double residual;        // rms misfit of the sinusoid, intensity units
    double mean_intensity;  // fitted I0 of the output
    double depth;           // fitted modulation index of the output
};

/// Residual gate: residual <= kModulationResidualGate * depth * mean_intensity.
inline constexpr double kModulationResidualGate = 0.05;
/// Fits need at least this many whole periods after the discard window.
inline constexpr int kMinFitPeriods = 4;

/// Least-squares fit of I = I0 (1 + m cos(delta (tau - t_start) - theta)) over
/// an integer number of periods after `discard_s`. Phase is measured against
/// the source convention (zero phase at grid start). Written as
/// I0 (1 + m cos(delta t + theta')) instead, theta' = -theta.
ModulationFit modulation_phase(const Envelope& output, const ModulatedSource& spec, double discard_s);

/// Phase of `output` relative to `reference` (same grid, same delta).
ModulationFit modulation_phase(const Envelope& output, const Envelope& reference, double delta,
                               double discard_s);

struct Observables {
    double delay_s = 0.0;
    double v_g = 0.0;
    bool superluminal = false;
    double t_energy = 0.0;
    double t_peak = 0.0;
    double width_ratio = 0.0;              // NaN for modulated beams
    std::optional<double> theta;           // modulated beams only
    std::optional<double> centroid_delay;  // pulses only
};

/// Discard window for modulated-beam analysis: 10 / (2 gamma2).
double transient_window(const MediumSpec& medium);

/// All observables for one run. Pulses use peak delay; modulated beams use
/// the modulation phase.
Observables observe(const PropagationResult& result, const SimulationConfig& cfg);

}  // namespace slowlight
