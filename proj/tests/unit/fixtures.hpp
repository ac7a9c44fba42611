// Shared scenario builders for the unit tests.

#pragma once

#include <cmath>

#include "slowlight/config.hpp"

namespace fixtures {

// Ruby: 1/(2 gamma2) = 4.45 ms, L = 7.25 cm, sigma = 20 ms.
inline constexpr double kRubyT1 = 4.45e-3;
inline constexpr double kRubyGamma2 = 1.0 / (2.0 * kRubyT1);
inline constexpr double kRubyLength = 0.0725;
inline constexpr double kRubySigma = 20e-3;

/// Grid of +/- half_span around zero with dimensionless step dT.
inline slowlight::TimeGrid symmetric_grid(double half_span, double gamma2, double dT) {
    const double dt = dT / (2.0 * gamma2);
    const auto half = static_cast<std::size_t>(std::ceil(half_span / dt));
    return {-static_cast<double>(half) * dt, dt, 2 * half + 1};
}

/// Gaussian pulse through a reduced medium with optical depth alpha0 L = depth.
inline slowlight::SimulationConfig gaussian_config(slowlight::MediumModel model, double omega0, double depth,
                                                   double dT = 0.05, double sigma = kRubySigma,
                                                   double gamma2 = kRubyGamma2, double length = kRubyLength) {
    slowlight::SimulationConfig cfg;
    cfg.medium.model = model;
    cfg.medium.gamma2 = gamma2;
    cfg.medium.alpha0 = depth / length;
    cfg.medium.alpha_ratio = model == slowlight::MediumModel::FourLevelReverse ? 4.0 : 0.0;
    cfg.length_m = length;
    cfg.n_z = slowlight::default_depth_steps(cfg.medium, length);
    cfg.grid = symmetric_grid(6.0 * sigma, gamma2, dT);
    cfg.source = slowlight::GaussianSource{omega0, sigma};
    return cfg;
}

}  // namespace fixtures
