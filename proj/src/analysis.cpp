#include "slowlight/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "slowlight/errors.hpp"

namespace slowlight {
namespace {

void require_same_grid(const Envelope& a, const Envelope& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("envelopes must share a grid");
}

std::size_t argmax(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

struct SinusoidFit {
    double c0, c1, c2;  // I ~ c0 + c1 cos + c2 sin
    double residual;
};

SinusoidFit fit_sinusoid(const Envelope& env, double delta, double discard_s) {
    const TimeGrid& g = env.grid();
    const double period = 2.0 * std::numbers::pi / delta;
    const auto first = static_cast<std::size_t>(std::ceil(discard_s / g.dt - 1e-9));
    if (first >= g.n) throw AnalysisError("discard window covers the whole grid");
    const double window = g.dt * static_cast<double>(g.n - 1 - first);
    const int periods = static_cast<int>(std::floor(window / period + 1e-9));
    if (periods < kMinFitPeriods)
        throw AnalysisError("modulation fit needs >= 4 whole periods after the discard window, have " +
                            std::to_string(periods));
    const auto last = first + static_cast<std::size_t>(std::floor(periods * period / g.dt + 1e-9));

    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (std::size_t i = first; i <= last; ++i) {
        const double phase = delta * g.dt * static_cast<double>(i);
        const Eigen::Vector3d basis(1.0, std::cos(phase), std::sin(phase));
        const double intensity = env[i] * env[i];
        normal += basis * basis.transpose();
        rhs += basis * intensity;
    }
    const Eigen::Vector3d c = normal.ldlt().solve(rhs);

    double sq = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double phase = delta * g.dt * static_cast<double>(i);
        const double model = c[0] + c[1] * std::cos(phase) + c[2] * std::sin(phase);
        const double r = env[i] * env[i] - model;
        sq += r * r;
    }
    return {c[0], c[1], c[2], std::sqrt(sq / static_cast<double>(last - first + 1))};
}

ModulationFit accept(const SinusoidFit& f, double theta, double delta) {
    const double amplitude = std::hypot(f.c1, f.c2);
    if (!(f.c0 > 0.0) || !(amplitude > 0.0))
        throw AnalysisError("output carries no modulation to fit");
    if (f.residual > kModulationResidualGate * amplitude)
        throw AnalysisError("residual too large: output is not a single-harmonic modulation (rms " +
                            std::to_string(f.residual) + " vs modulation amplitude " +
                            std::to_string(amplitude) + ")");
    return {theta, theta / delta, f.residual, f.c0, amplitude / f.c0};
}

double wrap(double phase) {
    phase = std::remainder(phase, 2.0 * std::numbers::pi);
    return phase;
}

}  // namespace

double peak_time(const Envelope& env) {
    const auto& a = env.amp();
    const std::size_t i = argmax(a);
    if (i == 0 || i + 1 >= a.size()) throw AnalysisError("no interior peak: envelope is monotone on the grid");
    const double top = a[i];
    // Two equal maxima are a peak between samples; three or more are a plateau.
    if (a[i + 1] == top && i + 2 < a.size() && a[i + 2] == top) throw AnalysisError("plateau at the envelope maximum");
    const double curvature = a[i - 1] - 2.0 * top + a[i + 1];
    double offset = 0.0;
    if (curvature < 0.0) offset = 0.5 * (a[i - 1] - a[i + 1]) / curvature;
    return env.grid().time(i) + offset * env.grid().dt;
}

double peak_delay(const Envelope& output, const Envelope& reference) {
    require_same_grid(output, reference);
    return peak_time(output) - peak_time(reference);
}

double centroid_delay(const Envelope& output, const Envelope& reference) {
    require_same_grid(output, reference);
    auto centroid = [](const Envelope& e) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double w = e[i] * e[i];
            num += w * e.grid().time(i);
            den += w;
        }
        if (!(den > 0.0)) throw AnalysisError("centroid of a zero envelope");
        return num / den;
    };
    return centroid(output) - centroid(reference);
}

GroupVelocity group_velocity(double delay_s, double length_m) {
    const double transit = length_m / kSpeedOfLight + delay_s;
    if (std::abs(transit) < 1e-15) throw AnalysisError("group velocity singular: delay = -L/c");
    return {length_m / transit, delay_s < 0.0};
}

Transmissions transmissions(const Envelope& output, const Envelope& input) {
    require_same_grid(output, input);
    const double e_in = input.energy();
    const double p_in = *std::max_element(input.amp().begin(), input.amp().end());
    if (!(e_in > 0.0) || !(p_in > 0.0)) throw AnalysisError("zero input: transmission undefined");
    const double p_out = *std::max_element(output.amp().begin(), output.amp().end());
    return {output.energy() / e_in, (p_out / p_in) * (p_out / p_in)};
}

double fwhm(const Envelope& env) {
    const auto& a = env.amp();
    const std::size_t peak = argmax(a);
    const double half = 0.5 * a[peak];
    if (!(half > 0.0)) throw AnalysisError("crossing not found: zero envelope");
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double frac = (a[inside] - half) / (a[inside] - a[outside]);
        const double ti = env.grid().time(inside);
        return ti + frac * (env.grid().time(outside) - ti);
    };
    std::size_t lo = peak;
    while (lo > 0 && a[lo - 1] > half) --lo;
    if (lo == 0) throw AnalysisError("crossing not found: pulse clipped at grid start");
    std::size_t hi = peak;
    while (hi + 1 < a.size() && a[hi + 1] > half) ++hi;
    if (hi + 1 >= a.size()) throw AnalysisError("crossing not found: pulse clipped at grid end");
    return crossing(hi, hi + 1) - crossing(lo, lo - 1);
}

double width_ratio(const Envelope& output, const Envelope& input) {
    require_same_grid(output, input);
    return fwhm(output) / fwhm(input);
}

ModulationFit modulation_phase(const Envelope& output, const ModulatedSource& spec, double discard_s) {
    const SinusoidFit f = fit_sinusoid(output, spec.delta, discard_s);
    return accept(f, std::atan2(f.c2, f.c1), spec.delta);
}

ModulationFit modulation_phase(const Envelope& output, const Envelope& reference, double delta,
                               double discard_s) {
    require_same_grid(output, reference);
    const SinusoidFit f = fit_sinusoid(output, delta, discard_s);
    const SinusoidFit r = fit_sinusoid(reference, delta, discard_s);
    const double theta = wrap(std::atan2(f.c2, f.c1) - std::atan2(r.c2, r.c1));
    return accept(f, theta, delta);
}

double transient_window(const MediumSpec& medium) { return kTransientWindow / (2.0 * medium.gamma2); }

Observables observe(const PropagationResult& result, const SimulationConfig& cfg) {
    Observables obs;
    const Transmissions t = transmissions(result.output, result.input);
    obs.t_energy = t.energy;
    obs.t_peak = t.peak;
    if (const auto* mod = std::get_if<ModulatedSource>(&cfg.source)) {
        const ModulationFit fit = modulation_phase(result.output, *mod, transient_window(cfg.medium));
        obs.delay_s = fit.delay_s;
        obs.theta = fit.theta;
        obs.width_ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
        obs.delay_s = peak_delay(result.output, result.input);
        obs.width_ratio = width_ratio(result.output, result.input);
        obs.centroid_delay = centroid_delay(result.output, result.input);
    }
    const GroupVelocity v = group_velocity(obs.delay_s, cfg.length_m);
    obs.v_g = v.v_g;
    obs.superluminal = v.superluminal;
    return obs;
}

}  // namespace slowlight
