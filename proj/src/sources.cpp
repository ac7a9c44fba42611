#include "slowlight/sources.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "slowlight/errors.hpp"

namespace slowlight {

Envelope gaussian_envelope(const GaussianSource& spec, const TimeGrid& grid) {
    if (!(spec.omega0 >= 0.0)) throw ConfigError("source.omega0", "must be >= 0");
    if (!(spec.sigma > 0.0)) throw ConfigError("source.sigma", "must be > 0");
    if (grid.span() < kGaussianSupportSigmas * spec.sigma) {
        std::ostringstream os;
        os << "grid too short: span " << grid.span() << " s < 12 sigma = "
           << kGaussianSupportSigmas * spec.sigma << " s";
        throw ConfigError("grid", os.str());
    }
    // Offsets from the center are formed in index space so the pulse is
    // bit-symmetric about the midpoint.
    const double center = 0.5 * static_cast<double>(grid.n - 1);
    const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
    std::vector<double> amp(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = (static_cast<double>(i) - center) * grid.dt;
        amp[i] = spec.omega0 * std::exp(-x * x * inv);
    }
    return Envelope(grid, std::move(amp));
}

Envelope modulated_envelope(const ModulatedSource& spec, const TimeGrid& grid) {
    if (!(spec.i0 > 0.0)) throw ConfigError("source.i0", "must be > 0");
    if (!(spec.m >= 0.0 && spec.m < 1.0))
        throw ConfigError("source.m", "modulation index must satisfy 0 <= m < 1 (intensity must stay positive)");
    if (!(spec.delta > 0.0)) throw ConfigError("source.delta", "must be > 0");
    std::vector<double> amp(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double phase = spec.delta * grid.dt * static_cast<double>(i);
        amp[i] = std::sqrt(spec.i0 * (1.0 + spec.m * std::cos(phase)));
    }
    return Envelope(grid, std::move(amp));
}

Envelope make_envelope(const SourceSpec& spec, const TimeGrid& grid) {
    return std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GaussianSource>)
                return gaussian_envelope(s, grid);
            else
                return modulated_envelope(s, grid);
        },
        spec);
}

double modulated_required_span(const ModulatedSource& spec, double gamma2) {
    return kModulationPeriods * 2.0 * std::numbers::pi / spec.delta +
           kTransientWindow / (2.0 * gamma2);
}

}  // namespace slowlight
