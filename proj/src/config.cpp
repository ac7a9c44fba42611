#include "slowlight/config.hpp"

#include <cmath>
#include <sstream>

namespace slowlight {
namespace {

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_medium(const MediumSpec& m, std::vector<ConfigIssue>& out) {
    if (!positive(m.gamma2)) out.push_back({"medium.gamma2", "must be finite and > 0"});
    if (!positive(m.alpha0)) out.push_back({"medium.alpha0", "must be finite and > 0"});
    if (!positive(m.sat_factor)) out.push_back({"medium.sat_factor", "must be finite and > 0"});
    if (m.model == MediumModel::FourLevelReverse && !(std::isfinite(m.alpha_ratio) && m.alpha_ratio > 1.0))
        out.push_back({"medium.alpha_ratio", "four_level requires alpha_ratio > 1"});
}

void check_source(const SourceSpec& source, const TimeGrid& grid, double gamma2, bool grid_ok,
                  std::vector<ConfigIssue>& out) {
    if (const auto* g = std::get_if<GaussianSource>(&source)) {
        if (!(std::isfinite(g->omega0) && g->omega0 >= 0.0))
            out.push_back({"source.omega0", "must be finite and >= 0"});
        if (!positive(g->sigma)) {
            out.push_back({"source.sigma", "must be > 0"});
        } else if (grid_ok && grid.span() < kGaussianSupportSigmas * g->sigma) {
            out.push_back({"grid", "grid too short: span " + num(grid.span()) +
                                       " s < 12 sigma = " + num(kGaussianSupportSigmas * g->sigma) + " s"});
        }
        return;
    }
    const auto& s = std::get<ModulatedSource>(source);
    if (!positive(s.i0)) out.push_back({"source.i0", "must be > 0"});
    if (!(s.m >= 0.0 && s.m < 1.0))
        out.push_back({"source.m", "modulation index must satisfy 0 <= m < 1"});
    if (!positive(s.delta)) {
        out.push_back({"source.delta", "must be > 0"});
    } else if (grid_ok && positive(gamma2)) {
        const double need = modulated_required_span(s, gamma2);
        if (grid.span() < need)
            out.push_back({"grid", "grid too short: span " + num(grid.span()) +
                                       " s < 8 modulation periods + transient = " + num(need) + " s"});
    }
}

}  // namespace

int default_depth_steps(const MediumSpec& medium, double length_m) {
    const double depth = medium.max_absorption() * length_m;
    const double steps = std::ceil(depth / kDefaultDepthStep - 1e-9);
    if (!std::isfinite(steps) || steps < kMinDepthSteps) return kMinDepthSteps;
    return static_cast<int>(steps);
}

std::vector<ConfigIssue> check_config(const SimulationConfig& cfg) {
    std::vector<ConfigIssue> out;
    check_medium(cfg.medium, out);

    if (!positive(cfg.length_m)) out.push_back({"propagation.length_m", "must be finite and > 0"});
    if (cfg.n_z < kMinDepthSteps) out.push_back({"propagation.n_z", "n_z >= 8 required"});
    if (cfg.record_slices < 0 || (cfg.n_z >= kMinDepthSteps && cfg.record_slices > cfg.n_z))
        out.push_back({"propagation.record_slices", "must satisfy 0 <= record_slices <= n_z"});

    const TimeGrid& g = cfg.grid;
    bool grid_ok = true;
    if (!positive(g.dt)) {
        out.push_back({"grid.dt", "must be finite and > 0"});
        grid_ok = false;
    }
    if (g.n < kMinSamples) {
        out.push_back({"grid.n", "n >= 16 required"});
        grid_ok = false;
    }
    if (grid_ok && !(std::isfinite(g.t_start) && std::isfinite(g.t_end()))) {
        out.push_back({"grid", "grid span must be finite"});
        grid_ok = false;
    }

    check_source(cfg.source, g, cfg.medium.gamma2, grid_ok, out);

    if (grid_ok && positive(cfg.medium.gamma2)) {
        const double step = g.dimensionless_step(cfg.medium.gamma2);
        if (step > kMaxTimeStep)
            out.push_back({"grid.dt", "grid too coarse: 2*gamma2*dt = " + num(step) + " > 0.1"});
    }
    if (positive(cfg.length_m) && cfg.n_z >= kMinDepthSteps && positive(cfg.medium.alpha0)) {
        const double step = cfg.medium.max_absorption() * cfg.length_m / cfg.n_z;
        if (step > kMaxDepthStep)
            out.push_back({"propagation.n_z", "grid too coarse: alpha*dz = " + num(step) + " > 0.2"});
    }
    return out;
}

ValidatedConfig::ValidatedConfig(SimulationConfig cfg) : cfg_(std::move(cfg)) {
    time_step_ = cfg_.grid.dimensionless_step(cfg_.medium.gamma2);
    depth_step_ = cfg_.length_m / cfg_.n_z;
    if (cfg_.medium.gamma1) check_full_model(cfg_.medium, &warnings_);
}

ValidatedConfig validate_config(const SimulationConfig& cfg) {
    auto issues = check_config(cfg);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return ValidatedConfig(cfg);
}

std::vector<ConfigIssue> check_full_model(const MediumSpec& m, std::vector<std::string>* warnings) {
    std::vector<ConfigIssue> out;
    if (!m.gamma1 || !positive(*m.gamma1)) {
        out.push_back({"medium.gamma1", "full model requires gamma1 > 0"});
    } else if (positive(m.gamma2)) {
        const double ratio = *m.gamma1 / m.gamma2;
        if (ratio < 1e3) {
            out.push_back({"medium.gamma1", "full model requires gamma1/gamma2 >= 1e3, got " + num(ratio)});
        } else if (ratio < 1e5 && warnings) {
            warnings->push_back("gamma1/gamma2 = " + num(ratio) +
                                " < 1e5: adiabatic elimination is only approximate");
        }
    }
    if (m.model == MediumModel::FourLevelReverse && (!m.gamma3 || !positive(*m.gamma3)))
        out.push_back({"medium.gamma3", "full four-level model requires gamma3 > 0"});
    if (m.model == MediumModel::TwoLevelBloch)
        out.push_back({"medium.model", "no full density-matrix model exists for two_level"});
    return out;
}

}  // namespace slowlight
