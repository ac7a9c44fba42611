// convergence.hpp - grid refinement study for propagate().

#pragma once

#include <optional>
#include <vector>

#include "slowlight/config.hpp"

namespace slowlight {

struct ConvergenceLevel {
    int n_z = 0;
    std::size_t n_t = 0;
    double time_step = 0.0;   // 2 gamma2 dt
    double depth_step = 0.0;  // meters
    double delay_s = 0.0;
    double t_energy = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;  // coarse to fine, steps halved each level
    std::optional<double> delay_order;     // from the three finest levels
    std::optional<double> energy_order;
    double delay_extrapolated = 0.0;  // Richardson, observed order (formal 2 if unknown)
    double energy_extrapolated = 0.0;
    bool non_monotone = false;  // differences grew or changed sign under refinement
};

/// Runs propagate at (dz, dT), (dz/2, dT/2), ... with `refinements` halvings.
ConvergenceReport convergence_study(const SimulationConfig& cfg, int refinements = 2);

/// Observed order log2(|q0 - q1| / |q1 - q2|) for halved steps; nullopt when
/// the differences are at roundoff level.
std::optional<double> observed_order(double coarse, double mid, double fine);

/// Richardson extrapolation of (mid, fine) with step ratio 2 and order p.
double richardson(double mid, double fine, double order);

}  // namespace slowlight
