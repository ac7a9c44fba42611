// media.hpp - material response: reduced population rate laws, the field
// absorption law, and the full density-matrix models used as oracles.
//
// Reduced models work in dimensionless time T = 2 gamma2 tau and the
// normalized amplitude; the full models work in physical units (1/s, rad/s).

#pragma once

#include <complex>

#include "slowlight/core.hpp"

namespace slowlight {

// --- reduced models ---------------------------------------------------------

/// d(rho_gg)/dT = (1 - rho_gg) - s omega^2 rho_gg  (three- and four-level).
constexpr double saturable_rate(double rho_gg, double omega, double s) {
    return (1.0 - rho_gg) - s * omega * omega * rho_gg;
}

constexpr double saturable_steady(double omega, double s) { return 1.0 / (1.0 + s * omega * omega); }

/// d(rho_11)/dT = -rho_11 + 2 omega^2 (1 - 2 rho_11), with T = tau / T1.
constexpr double two_level_rate(double rho_11, double omega) {
    return -rho_11 + 2.0 * omega * omega * (1.0 - 2.0 * rho_11);
}

constexpr double two_level_steady(double omega) {
    const double w2 = omega * omega;
    return 2.0 * w2 / (1.0 + 4.0 * w2);
}

// The "population" of a reduced model is rho_gg for the saturable and
// reverse-saturable media and rho_11 for the two-level medium.

double population_rate(MediumModel model, double population, double omega, double s);
double steady_population(MediumModel model, double omega, double s);
/// Initial population before any field: rho_gg = 1 or rho_11 = 0.
double dark_population(MediumModel model);
/// rho_gg from the model population.
double ground_population(MediumModel model, double population);

/// d(amp)/dz in 1/m times amp units.
double field_rate(double omega, double population, const MediumSpec& medium);

// --- full density-matrix models ------------------------------------------------

/// Populations of |g>, |e1>, |e2> and the pumped coherence rho_1g.
/// rho_11 is slaved to the trace: rho_11 = 1 - rho_gg - rho_22.
struct FullThreeLevelState {
    double rho_gg = 1.0;
    double rho_11 = 0.0;
    double rho_22 = 0.0;
    std::complex<double> rho_1g{};

    double trace() const { return rho_gg + rho_11 + rho_22; }
};

/// Adds |e3> (excited-state absorption band) and the rho_32 coherence.
struct FullFourLevelState {
    double rho_gg = 1.0;
    double rho_11 = 0.0;
    double rho_22 = 0.0;
    double rho_33 = 0.0;
    std::complex<double> rho_1g{};
    std::complex<double> rho_32{};

    double trace() const { return rho_gg + rho_11 + rho_22 + rho_33; }
};

/// Time derivative (1/s) of the three-level density matrix driven at Rabi
/// frequency omega_phys (rad/s). Requires medium.gamma1.
FullThreeLevelState full_three_level_rates(const FullThreeLevelState& state, double omega_phys,
                                           const MediumSpec& medium);

/// Time derivative of the four-level density matrix; one field drives both
/// |g>-|e1> and |e2>-|e3>. Requires medium.gamma1 and medium.gamma3.
FullFourLevelState full_four_level_rates(const FullFourLevelState& state, double omega_phys,
                                         const MediumSpec& medium);

/// Physical Rabi frequency of unit normalized amplitude: sqrt(s gamma1 gamma2).
/// With s = 4 this is 2 sqrt(gamma1 gamma2).
double full_rabi_scale(const MediumSpec& medium);

/// dOmega/dz (rad/s per m) from the coherences:
/// -(alpha0 gamma1 / 2) Im rho_1g [ - (alpha~0 gamma3 / 2) Im rho_32 ].
double full_field_rate(const FullThreeLevelState& state, const MediumSpec& medium);
double full_field_rate(const FullFourLevelState& state, const MediumSpec& medium);

/// Stationary state under constant drive.
FullThreeLevelState full_three_level_steady(double omega_phys, const MediumSpec& medium);
FullFourLevelState full_four_level_steady(double omega_phys, const MediumSpec& medium);

}  // namespace slowlight
