#include "slowlight/convergence.hpp"

#include <cmath>
#include <stdexcept>

#include "slowlight/analysis.hpp"
#include "slowlight/propagation.hpp"

namespace slowlight {
namespace {

constexpr double kFormalOrder = 2.0;

bool at_noise(double diff, double scale) { return std::abs(diff) <= 1e-13 * std::max(1e-300, std::abs(scale)); }

bool misbehaves(const std::vector<double>& q) {
    for (std::size_t i = 0; i + 2 < q.size(); ++i) {
        const double d0 = q[i + 1] - q[i];
        const double d1 = q[i + 2] - q[i + 1];
        if (at_noise(d0, q[i]) || at_noise(d1, q[i])) continue;
        if (std::abs(d1) >= std::abs(d0) || (d0 > 0) != (d1 > 0)) return true;
    }
    return false;
}

}  // namespace

std::optional<double> observed_order(double coarse, double mid, double fine) {
    const double d0 = coarse - mid;
    const double d1 = mid - fine;
    if (at_noise(d0, mid) || at_noise(d1, mid)) return std::nullopt;
    return std::log2(std::abs(d0) / std::abs(d1));
}

double richardson(double mid, double fine, double order) {
    return fine + (fine - mid) / (std::pow(2.0, order) - 1.0);
}

ConvergenceReport convergence_study(const SimulationConfig& base, int refinements) {
    if (refinements < 1) throw std::invalid_argument("convergence study needs at least one refinement");
    ConvergenceReport report;
    std::vector<double> delays, energies;
    for (int level = 0; level <= refinements; ++level) {
        SimulationConfig cfg = base;
        cfg.n_z = base.n_z << level;
        cfg.grid = base.grid.refined(level);
        cfg.record_slices = 0;
        const ValidatedConfig vc = validate_config(cfg);
        const PropagationResult r = propagate(vc);
        const Observables obs = observe(r, cfg);
        report.levels.push_back({cfg.n_z, cfg.grid.n, vc.time_step(), vc.depth_step(), obs.delay_s, obs.t_energy});
        delays.push_back(obs.delay_s);
        energies.push_back(obs.t_energy);
    }
    const std::size_t k = delays.size();
    if (k >= 3) {
        report.delay_order = observed_order(delays[k - 3], delays[k - 2], delays[k - 1]);
        report.energy_order = observed_order(energies[k - 3], energies[k - 2], energies[k - 1]);
    }
    // Extrapolate with the observed order only when it is plausible.
    auto usable = [](std::optional<double> p) { return p && *p >= 1.0 && *p <= 4.0 ? *p : kFormalOrder; };
    report.delay_extrapolated = richardson(delays[k - 2], delays[k - 1], usable(report.delay_order));
    report.energy_extrapolated = richardson(energies[k - 2], energies[k - 1], usable(report.energy_order));
    report.non_monotone = misbehaves(delays) || misbehaves(energies);
    return report;
}

}  // namespace slowlight
