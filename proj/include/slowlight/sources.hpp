// sources.hpp - input envelopes at z = 0.

#pragma once

#include <variant>

#include "slowlight/core.hpp"

namespace slowlight {

/// Gaussian pulse amp = omega0 * exp(-(tau - t_c)^2 / (2 sigma^2)),
/// centered at the grid midpoint.
struct GaussianSource {
    double omega0 = 0.0;  // peak normalized amplitude
    double sigma = 0.0;   // seconds

    bool operator==(const GaussianSource&) const = default;
};

/// Amplitude-modulated beam, intensity amp^2 = i0 (1 + m cos(delta (tau - t_start))).
struct ModulatedSource {
    double i0 = 0.0;     // mean intensity, saturation units
    double m = 0.0;      // modulation index, 0 <= m < 1
    double delta = 0.0;  // rad/s

    bool operator==(const ModulatedSource&) const = default;
};

using SourceSpec = std::variant<GaussianSource, ModulatedSource>;

/// Minimum grid span for a Gaussian of width sigma (+/- 6 sigma).
inline constexpr double kGaussianSupportSigmas = 12.0;
/// Modulation periods a modulated run must contain, excluding the transient.
inline constexpr double kModulationPeriods = 8.0;
/// Turn-on transient discarded before modulation analysis, in units of 1/(2 gamma2).
inline constexpr double kTransientWindow = 10.0;

Envelope gaussian_envelope(const GaussianSource& spec, const TimeGrid& grid);
Envelope modulated_envelope(const ModulatedSource& spec, const TimeGrid& grid);
Envelope make_envelope(const SourceSpec& spec, const TimeGrid& grid);

/// Span a grid needs for the modulated source (transient window depends on gamma2).
double modulated_required_span(const ModulatedSource& spec, double gamma2);

}  // namespace slowlight
