#include "slowlight/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include "slowlight/emit.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {
namespace fs = std::filesystem;

namespace {

// Runs job(k) for k in [0, n) on a pool of threads. Every job runs even if
// another fails, so the reported failure is the lowest index, independent of
// scheduling.
template <class Job>
void parallel_for(std::size_t n, unsigned workers, Job&& job) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                job(k);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
}

std::string indexed(const Scenario& sc, const std::string& kind, std::size_t k, const std::string& ext) {
    return sc.name + "_" + kind + (sc.sweep ? "_" + std::to_string(k) : "") + ext;
}

std::string label(const Scenario& sc, std::size_t k) {
    char buf[64];
    const char* name = sc.sweep ? to_string(sc.sweep->parameter)
                                : (std::holds_alternative<GaussianSource>(sc.config.source) ? "peak_amplitude" : "i0");
    std::snprintf(buf, sizeof buf, "%s = %.4g", name, sc.parameter(k));
    return buf;
}

Envelope normalized(const Envelope& e, double by) {
    std::vector<double> a = e.amp();
    if (by > 0.0)
        for (double& x : a) x /= by;
    return Envelope(e.grid(), std::move(a));
}

}  // namespace

PropagationResult run_point(const Scenario& scenario, const SimulationConfig& cfg) {
    const ValidatedConfig vc = validate_config(cfg);
    if (scenario.fidelity == Fidelity::Full) return propagate_full(vc, {scenario.scheme});
    return propagate(vc);
}

std::vector<PointOutcome> run_scenario(const Scenario& scenario, unsigned workers, int refine) {
    if (refine < 0) throw ConfigError("refine", "must be >= 0");
    if (refine > 0 && scenario.fidelity == Fidelity::Full)
        throw ConfigError("refine", "convergence studies run the reduced model only");
    const auto configs = scenario.points();
    std::vector<std::optional<PointOutcome>> slots(configs.size());
    parallel_for(configs.size(), workers, [&](std::size_t k) {
        PropagationResult r = run_point(scenario, configs[k]);
        Observables obs = observe(r, configs[k]);
        std::optional<ConvergenceReport> conv;
        if (refine > 0) conv = convergence_study(configs[k], refine);
        slots[k] = PointOutcome{scenario.parameter(k), configs[k], std::move(r), obs, std::move(conv)};
    });
    std::vector<PointOutcome> out;
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<fs::path> emit_scenario(const Scenario& scenario, const std::vector<PointOutcome>& points,
                                    const EmitOptions& options) {
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + options.out_dir.string() + ": " + ec.message());
    std::vector<fs::path> written;
    const bool populations = scenario.wants(Artifact::Populations);

    for (std::size_t k = 0; k < points.size(); ++k) {
        if (scenario.wants(Artifact::Envelopes) || populations) {
            written.push_back(options.out_dir / indexed(scenario, "envelopes", k, ".csv"));
            write_envelopes(written.back(), points[k].result, populations);
        }
        if (scenario.wants(Artifact::Slices)) {
            written.push_back(options.out_dir / indexed(scenario, "slices", k, ".csv"));
            write_slices(written.back(), points[k].result);
        }
    }
    if (scenario.wants(Artifact::Observables)) {
        std::vector<ObservableRow> rows;
        for (const auto& p : points) rows.push_back({p.param, p.observables});
        written.push_back(options.out_dir / (scenario.name + "_observables.csv"));
        write_observables(written.back(), rows);
    }
    if (!points.empty() && points.front().convergence) {
        std::vector<ConvergenceRow> rows;
        for (const auto& p : points) rows.push_back({p.param, *p.convergence});
        const fs::path levels = options.out_dir / (scenario.name + "_convergence.csv");
        const fs::path summary = options.out_dir / (scenario.name + "_convergence_summary.csv");
        write_convergence(levels, summary, rows);
        written.push_back(levels);
        written.push_back(summary);
    }
    if (options.plots && !points.empty()) {
        // Every curve is scaled by its own input peak, so one dashed vacuum
        // reference serves the whole sweep.
        std::vector<Envelope> curves;
        const auto peak = [](const Envelope& e) { return *std::max_element(e.amp().begin(), e.amp().end()); };
        curves.push_back(normalized(points.front().result.input, peak(points.front().result.input)));
        for (const auto& p : points) curves.push_back(normalized(p.result.output, peak(p.result.input)));
        std::vector<PlotCurve> plot{{"vacuum reference", &curves[0]}};
        for (std::size_t k = 0; k < points.size(); ++k) plot.push_back({label(scenario, k), &curves[k + 1]});
        written.push_back(options.out_dir / (scenario.name + "_envelopes.svg"));
        write_svg(written.back(), scenario.name + " (amplitude / input peak)", plot);
    }
    return written;
}

Calibration calibrate_alpha0(double target, const Scenario& scenario) {
    if (!(target > 0.0 && target < 1.0))
        throw ConfigError("target", "must lie in (0, 1); t_energy = 1 is only reached at alpha0 = 0");
    const SimulationConfig base = scenario.config;
    const double L = base.length_m;
    int evaluations = 0;
    auto transmission = [&](double depth) {
        SimulationConfig cfg = base;
        cfg.medium.alpha0 = depth / L;
        cfg.n_z = default_depth_steps(cfg.medium, L);
        const PropagationResult r = run_point(scenario, cfg);
        ++evaluations;
        return transmissions(r.output, r.input).energy;
    };
    auto close = [&](double t) { return std::abs(t / target - 1.0) <= kCalibrationTolerance; };

    constexpr double kMaxDepth = 200.0;
    double lo = 0.0, hi = 1.0;
    double t_hi = transmission(hi);
    while (t_hi > target && !close(t_hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxDepth) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "not bracketable: t_energy = %.4g still above the target at alpha0 L = %g",
                          t_hi, lo);
            throw ConfigError("target", buf);
        }
        t_hi = transmission(hi);
    }
    if (close(t_hi)) return {hi / L, hi, t_hi, evaluations};

    // Bisect in log depth once lo > 0; t_energy falls monotonically with alpha0.
    for (int it = 0; it < 100; ++it) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        const double t = transmission(mid);
        if (close(t)) return {mid / L, mid, t, evaluations};
        (t > target ? lo : hi) = mid;
    }
    throw NumericalError("calibration did not converge; t_energy is not monotone in alpha0 on this grid");
}

fs::path output_directory(const std::optional<std::string>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return fs::current_path();
}

}  // namespace slowlight
