#include "slowlight/media.hpp"

#include <cmath>
#include <stdexcept>

#include "detail/full_model.hpp"

namespace slowlight {
namespace {

constexpr std::complex<double> I{0.0, 1.0};

double require(const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("full model requires ") + name);
    return *v;
}

}  // namespace

double population_rate(MediumModel model, double population, double omega, double s) {
    if (model == MediumModel::TwoLevelBloch) return two_level_rate(population, omega);
    return saturable_rate(population, omega, s);
}

double steady_population(MediumModel model, double omega, double s) {
    if (model == MediumModel::TwoLevelBloch) return two_level_steady(omega);
    return saturable_steady(omega, s);
}

double dark_population(MediumModel model) { return model == MediumModel::TwoLevelBloch ? 0.0 : 1.0; }

double ground_population(MediumModel model, double population) {
    return model == MediumModel::TwoLevelBloch ? 1.0 - population : population;
}

double field_rate(double omega, double population, const MediumSpec& m) {
    const double half = 0.5 * m.alpha0;
    switch (m.model) {
        case MediumModel::ThreeLevelSaturable:
            return -half * omega * population;
        case MediumModel::TwoLevelBloch:
            return -half * omega * (1.0 - 2.0 * population);
        case MediumModel::FourLevelReverse:
            return -half * omega * population - half * m.alpha_ratio * omega * (1.0 - population);
    }
    return 0.0;
}

FullThreeLevelState full_three_level_rates(const FullThreeLevelState& s, double omega,
                                           const MediumSpec& m) {
    const double g1 = require(m.gamma1, "gamma1");
    const double g2 = m.gamma2;
    const std::complex<double> rho_g1 = std::conj(s.rho_1g);

    FullThreeLevelState d;
    d.rho_gg = 2.0 * g2 * s.rho_22 + (I * omega * (s.rho_1g - rho_g1)).real();
    d.rho_22 = 2.0 * g1 * s.rho_11 - 2.0 * g2 * s.rho_22;
    d.rho_1g = -g1 * s.rho_1g + I * omega * (s.rho_gg - s.rho_11);
    d.rho_11 = -(d.rho_gg + d.rho_22);
    return d;
}

FullFourLevelState full_four_level_rates(const FullFourLevelState& s, double omega,
                                         const MediumSpec& m) {
    const double g1 = require(m.gamma1, "gamma1");
    const double g3 = require(m.gamma3, "gamma3");
    const double g2 = m.gamma2;
    const std::complex<double> rho_g1 = std::conj(s.rho_1g);
    const std::complex<double> rho_23 = std::conj(s.rho_32);
    // Net |e2> -> |e3> pumping; it leaves rho_22 as it enters rho_33.
    const double pump_23 = (I * omega * (rho_23 - s.rho_32)).real();

    FullFourLevelState d;
    d.rho_gg = 2.0 * g2 * s.rho_22 + (I * omega * (s.rho_1g - rho_g1)).real();
    d.rho_22 = 2.0 * g1 * s.rho_11 - 2.0 * g2 * s.rho_22 + 2.0 * g3 * s.rho_33 - pump_23;
    d.rho_33 = -2.0 * g3 * s.rho_33 + pump_23;
    d.rho_32 = -g3 * s.rho_32 + I * omega * (s.rho_22 - s.rho_33);
    d.rho_1g = -g1 * s.rho_1g + I * omega * (s.rho_gg - s.rho_11);
    d.rho_11 = -(d.rho_gg + d.rho_22 + d.rho_33);
    return d;
}

double full_rabi_scale(const MediumSpec& m) {
    return std::sqrt(m.sat_factor * require(m.gamma1, "gamma1") * m.gamma2);
}

double full_field_rate(const FullThreeLevelState& s, const MediumSpec& m) {
    return -0.5 * m.alpha0 * require(m.gamma1, "gamma1") * s.rho_1g.imag();
}

double full_field_rate(const FullFourLevelState& s, const MediumSpec& m) {
    const double pumped = -0.5 * m.alpha0 * require(m.gamma1, "gamma1") * s.rho_1g.imag();
    const double excited = -0.5 * m.alpha0 * m.alpha_ratio * require(m.gamma3, "gamma3") * s.rho_32.imag();
    return pumped + excited;
}

namespace {

template <class State>
State steady(double omega, const MediumSpec& m) {
    using Layout = detail::FullLayout<State>;
    const auto gen = detail::AffineGenerator<State>::at(omega, m);
    const typename Layout::Vector x = gen.M.partialPivLu().solve(-gen.b);
    return Layout::unpack(x);
}

}  // namespace

FullThreeLevelState full_three_level_steady(double omega, const MediumSpec& m) {
    return steady<FullThreeLevelState>(omega, m);
}

FullFourLevelState full_four_level_steady(double omega, const MediumSpec& m) {
    return steady<FullFourLevelState>(omega, m);
}

}  // namespace slowlight
