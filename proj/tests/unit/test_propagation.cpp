#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "../oracles.hpp"
#include "fixtures.hpp"
#include "slowlight/analysis.hpp"
#include "slowlight/convergence.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/media.hpp"
#include "slowlight/propagation.hpp"

using namespace slowlight;

namespace {

constexpr double kNoGuard = std::numeric_limits<double>::infinity();

MediumSpec reduced(MediumModel model) {
    MediumSpec m;
    m.model = model;
    m.gamma2 = 0.5;  // T = tau
    m.alpha0 = 1.0;
    m.alpha_ratio = 4.0;
    return m;
}

/// Random smooth non-negative envelope: a few random Fourier modes, squared.
std::vector<double> random_envelope(std::mt19937_64& rng, std::size_t n, double dT) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double c[4], f[4], p[4];
    for (int k = 0; k < 4; ++k) {
        c[k] = u(rng) * 1.5;
        f[k] = u(rng) * 2.0;
        p[k] = u(rng) * 6.3;
    }
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k) v += c[k] * std::sin(f[k] * dT * i + p[k]);
        a[i] = std::abs(v);
    }
    return a;
}

SimulationConfig cw_config(double intensity, double depth, int n_z) {
    SimulationConfig cfg;
    cfg.medium = reduced(MediumModel::ThreeLevelSaturable);
    cfg.medium.alpha0 = depth;
    cfg.length_m = 1.0;
    cfg.n_z = n_z;
    cfg.grid = {0.0, 0.05, 2000};
    cfg.source = ModulatedSource{intensity, 0.0, 1.0};
    return cfg;
}

}  // namespace

TEST_CASE("population history: zero field keeps the dark state") {
    const TimeGrid g{0.0, 0.05, 200};
    for (auto model : {MediumModel::ThreeLevelSaturable, MediumModel::FourLevelReverse}) {
        const auto rho = solve_population_history(reduced(model), Envelope(g, std::vector<double>(200, 0.0)), 1.0);
        for (double r : rho) CHECK(r == 1.0);
    }
    const auto rho = solve_population_history(reduced(MediumModel::TwoLevelBloch),
                                              Envelope(g, std::vector<double>(200, 0.0)), 0.0);
    for (double r : rho) CHECK(r == 0.0);
}

TEST_CASE("population history under constant drive matches the closed form") {
    const TimeGrid g{0.0, 0.001, 5001};
    const auto rho = solve_population_history(reduced(MediumModel::ThreeLevelSaturable),
                                              Envelope(g, std::vector<double>(g.n, 1.0)), 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        worst = std::max(worst, std::abs(rho[i] - oracles::saturable_closed_form(1.0, 1.0, 2.0, g.time(i))));
    CHECK(worst < 1e-6);
}

TEST_CASE("population history is second order in the time step") {
    auto error_at = [](double dT) {
        const auto n = static_cast<std::size_t>(std::round(2.0 / dT)) + 1;
        const TimeGrid g{0.0, dT, n};
        const auto rho = solve_population_history(reduced(MediumModel::ThreeLevelSaturable),
                                                  Envelope(g, std::vector<double>(n, 1.0)), 1.0, kNoGuard);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(rho[i] - oracles::saturable_closed_form(1.0, 1.0, 2.0, g.time(i))));
        return worst;
    };
    const double order = std::log2(error_at(0.01) / error_at(0.005));
    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("populations stay in [0, 1] whenever a history is accepted") {
    // Heun is explicit, so boundedness is only promised on grids that pass the
    // step-accuracy guard; too-coarse runs must be rejected instead.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> gain(0.0, 4.0);
    for (auto model : {MediumModel::ThreeLevelSaturable, MediumModel::TwoLevelBloch, MediumModel::FourLevelReverse}) {
        int accepted = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const double dT = 0.01;
            std::vector<double> a = random_envelope(rng, 1000, dT);
            const double k = gain(rng);
            for (double& x : a) x *= k;
            try {
                const auto rho = solve_population_history(reduced(model), Envelope({0.0, dT, 1000}, a),
                                                          dark_population(model));
                ++accepted;
                for (double r : rho) {
                    CHECK(r >= -1e-6);
                    CHECK(r <= 1.0 + 1e-6);
                }
            } catch (const NumericalError&) {
            }
        }
        CHECK(accepted >= 10);
    }
}

TEST_CASE("population history flags an under-resolved grid") {
    std::vector<double> a(100, 0.0);
    for (std::size_t i = 50; i < 100; ++i) a[i] = 3.0;  // abrupt switch-on
    try {
        (void)solve_population_history(reduced(MediumModel::ThreeLevelSaturable), Envelope({0.0, 0.1, 100}, a), 1.0);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        REQUIRE(e.tau_index());
        CHECK(*e.tau_index() == 50);
        CHECK(std::string(e.what()).find("step accuracy") != std::string::npos);
    }
}

TEST_CASE("linear regime follows Beer-Lambert pointwise") {
    const SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1e-3, 3.0);
    const PropagationResult r = propagate(validate_config(cfg));
    CHECK(r.output.grid() == r.input.grid());
    CHECK(r.steps_taken == static_cast<std::size_t>(cfg.n_z));
    const double factor = std::exp(-1.5);
    for (std::size_t i = 0; i < r.input.size(); ++i) {
        if (r.input[i] < 1e-9) continue;
        CHECK(r.output[i] / r.input[i] == doctest::Approx(factor).epsilon(1e-3));
    }
}

TEST_CASE("CW beam obeys the transcendental saturable transmission law") {
    for (double intensity : {0.5, 2.0}) {
        const PropagationResult r = propagate(validate_config(cw_config(intensity, 3.0, 60)));
        const double expected = oracles::cw_saturable_output(intensity, 2.0, 3.0);
        const double got = r.output[r.output.size() / 2] * r.output[r.output.size() / 2];
        CHECK(got == doctest::Approx(expected).epsilon(1e-3));
        // CW stays CW: the pre-equilibrated medium has no transient.
        CHECK(r.output[0] == doctest::Approx(r.output[r.output.size() - 1]).epsilon(1e-12));
    }
}

TEST_CASE("ruby pulse is delayed, attenuated and reshaped") {
    const SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1.0, 8.0);
    const PropagationResult r = propagate(validate_config(cfg));
    const double delay = peak_delay(r.output, r.input);
    CHECK(delay > 1e-3);
    CHECK(delay < 10e-3);
    CHECK(transmissions(r.output, r.input).energy < 0.01);
    CHECK(width_ratio(r.output, r.input) != doctest::Approx(1.0).epsilon(0.01));
    REQUIRE(r.populations_out);
    CHECK(r.populations_out->size() == cfg.grid.n);
}

TEST_CASE("energy is non-increasing in z for every medium") {
    for (auto model : {MediumModel::ThreeLevelSaturable, MediumModel::TwoLevelBloch, MediumModel::FourLevelReverse}) {
        SimulationConfig cfg = fixtures::gaussian_config(model, 1.0, 2.0, 0.02);
        cfg.record_slices = 6;
        const PropagationResult r = propagate(validate_config(cfg));
        REQUIRE(r.slices.size() == 6);
        double prev = r.input.energy();
        double z_prev = 0.0;
        for (const Slice& s : r.slices) {
            CHECK(s.z > z_prev);
            CHECK(s.envelope.energy() <= prev);
            prev = s.envelope.energy();
            z_prev = s.z;
        }
        CHECK(r.output.energy() <= prev);
    }
}

TEST_CASE("slices can cover every step") {
    SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1.0, 1.0);
    cfg.record_slices = cfg.n_z;
    const PropagationResult r = propagate(validate_config(cfg));
    REQUIRE(r.slices.size() == static_cast<std::size_t>(cfg.n_z));
    CHECK(r.slices.back().z == doctest::Approx(cfg.length_m));
}

TEST_CASE("retarded-frame causality") {
    const SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1.0, 4.0);
    const ValidatedConfig vc = validate_config(cfg);
    const PropagationResult base = propagate(vc);

    // Rebuild the same run with a bump on the input tail after the peak.
    const std::size_t cut = cfg.grid.n * 3 / 4;
    std::vector<double> bumped = base.input.amp();
    for (std::size_t i = cut; i < bumped.size(); ++i) bumped[i] += 0.05 * std::exp(-std::pow((i - cut - 200.0) / 60.0, 2));

    // propagate() always regenerates the source, so march the bumped input by
    // hand through the same reduced equations at the same resolution.
    const MediumSpec& m = vc.medium();
    auto march = [&](std::vector<double> a) {
        const double dz = vc.depth_step();
        std::vector<double> f0(a.size()), f1(a.size()), p(a.size());
        auto rates = [&](const std::vector<double>& x, std::vector<double>& out) {
            const auto rho = solve_population_history(m, Envelope(cfg.grid, x), 1.0);
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = field_rate(x[i], rho[i], m);
        };
        for (int k = 0; k < cfg.n_z; ++k) {
            rates(a, f0);
            auto flush = [](double x) { return x < kUnderflowFloor ? 0.0 : x; };
            for (std::size_t i = 0; i < a.size(); ++i) p[i] = flush(a[i] + dz * f0[i]);
            rates(p, f1);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = flush(a[i] + 0.5 * dz * (f0[i] + f1[i]));
        }
        return a;
    };
    const auto out_base = march(base.input.amp());
    const auto out_bumped = march(bumped);
    for (std::size_t i = 0; i < cut; ++i) CHECK(out_base[i] == out_bumped[i]);
    CHECK(out_base[cut + 200] != out_bumped[cut + 200]);
    // The hand march is the library march.
    for (std::size_t i = 0; i < out_base.size(); i += 97) CHECK(out_base[i] == doctest::Approx(base.output[i]).epsilon(1e-12));
}

TEST_CASE("vanishing medium length is the identity map") {
    SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1.0, 3.0);
    cfg.length_m = 1e-15;
    cfg.n_z = 8;
    const PropagationResult r = propagate(validate_config(cfg));
    for (std::size_t i = 0; i < r.input.size(); ++i) CHECK(std::abs(r.output[i] - r.input[i]) <= 1e-12);
}

TEST_CASE("two-level populations are reported as rho_gg") {
    const SimulationConfig cfg = fixtures::gaussian_config(MediumModel::TwoLevelBloch, 1.0, 1.0, 0.02);
    const PropagationResult r = propagate(validate_config(cfg));
    REQUIRE(r.populations_out);
    CHECK(r.populations_out->front() == 1.0);
    const double lowest = *std::min_element(r.populations_out->begin(), r.populations_out->end());
    CHECK(lowest >= 0.5);
    CHECK(lowest < 0.9);
}

// --- full density-matrix propagation -------------------------------------------

namespace {

SimulationConfig full_config(MediumModel model, double omega0, double ratio, double dT = 0.05) {
    SimulationConfig cfg = fixtures::gaussian_config(model, omega0, model == MediumModel::FourLevelReverse ? 1.0 : 3.0, dT);
    cfg.medium.gamma1 = ratio * cfg.medium.gamma2;
    cfg.medium.gamma3 = ratio * cfg.medium.gamma2;
    return cfg;
}

}  // namespace

TEST_CASE("full model without field leaves the envelope untouched") {
    const SimulationConfig cfg = full_config(MediumModel::ThreeLevelSaturable, 0.0, 1e5);
    const PropagationResult r = propagate_full(validate_config(cfg));
    for (std::size_t i = 0; i < r.input.size(); ++i) CHECK(r.output[i] == r.input[i]);
}

TEST_CASE("full three-level propagation agrees with the reduced model") {
    const SimulationConfig cfg = full_config(MediumModel::ThreeLevelSaturable, 0.5, 1e5);
    const ValidatedConfig vc = validate_config(cfg);
    const PropagationResult full = propagate_full(vc);
    const PropagationResult red = propagate(vc);
    const double peak = *std::max_element(red.output.amp().begin(), red.output.amp().end());
    double worst = 0.0;
    for (std::size_t i = 0; i < full.output.size(); ++i)
        worst = std::max(worst, std::abs(full.output[i] - red.output[i]));
    CHECK(worst < 0.01 * peak);
    CHECK(peak_delay(full.output, full.input) ==
          doctest::Approx(peak_delay(red.output, red.input)).epsilon(0.02));
    REQUIRE(full.full_diagnostics);
    CHECK(full.full_diagnostics->max_trace_error < 1e-6);
    CHECK(full.full_diagnostics->min_population > -1e-6);
    CHECK(full.full_diagnostics->max_population < 1.0 + 1e-6);
}

TEST_CASE("full four-level propagation agrees with the reduced model") {
    const SimulationConfig cfg = full_config(MediumModel::FourLevelReverse, 1.0, 1e5);
    const ValidatedConfig vc = validate_config(cfg);
    const PropagationResult full = propagate_full(vc);
    const PropagationResult red = propagate(vc);
    const double peak = *std::max_element(red.output.amp().begin(), red.output.amp().end());
    double worst = 0.0;
    for (std::size_t i = 0; i < full.output.size(); ++i)
        worst = std::max(worst, std::abs(full.output[i] - red.output[i]));
    CHECK(worst < 0.01 * peak);
    CHECK(peak_delay(full.output, full.input) < 0.0);
}

TEST_CASE("explicit full-model scheme refuses stiff grids") {
    const SimulationConfig cfg = full_config(MediumModel::ThreeLevelSaturable, 0.5, 1e5);
    CHECK_THROWS_AS(propagate_full(validate_config(cfg), {StiffScheme::Explicit}), NumericalError);
}

TEST_CASE("explicit and implicit full-model schemes agree on a resolved grid") {
    // gamma1/gamma2 = 1e3: dt gamma1 = 500 dT, so dT = 5e-4 keeps the explicit step stable.
    SimulationConfig cfg = full_config(MediumModel::ThreeLevelSaturable, 0.5, 1e3, 5e-4);
    cfg.grid = fixtures::symmetric_grid(3.0 * 4.45e-3 * 2.0, cfg.medium.gamma2, 5e-4);
    cfg.source = GaussianSource{0.5, 4.45e-3};
    const ValidatedConfig vc = validate_config(cfg);
    CHECK(vc.warnings().size() == 1);
    CHECK(stiffness_number(vc) == doctest::Approx(0.25));
    const PropagationResult ex = propagate_full(vc, {StiffScheme::Explicit});
    const PropagationResult im = propagate_full(vc, {StiffScheme::Implicit});
    for (std::size_t i = 0; i < ex.output.size(); i += 50)
        CHECK(ex.output[i] == doctest::Approx(im.output[i]).epsilon(1e-5));
}

TEST_CASE("full model needs gamma1") {
    const SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 0.5, 3.0);
    CHECK_THROWS_AS(propagate_full(validate_config(cfg)), ConfigError);
}

// --- convergence study -----------------------------------------------------------

TEST_CASE("linear regime converges at second order") {
    SimulationConfig cfg = fixtures::gaussian_config(MediumModel::ThreeLevelSaturable, 1e-3, 3.0, 0.1);
    cfg.n_z = 16;
    const ConvergenceReport rep = convergence_study(cfg, 2);
    REQUIRE(rep.levels.size() == 3);
    REQUIRE(rep.energy_order);
    CHECK(*rep.energy_order >= 1.7);
    CHECK(*rep.energy_order <= 2.3);
    CHECK_FALSE(rep.non_monotone);
    CHECK(rep.energy_extrapolated == doctest::Approx(std::exp(-3.0)).epsilon(1e-4));
    CHECK(rep.levels[2].n_z == 64);
    CHECK(rep.levels[2].n_t == 4 * (cfg.grid.n - 1) + 1);
}

TEST_CASE("observed order and Richardson helpers") {
    // q(h) = 1 + h^2
    CHECK(*observed_order(1.0 + 1.0, 1.0 + 0.25, 1.0 + 0.0625) == doctest::Approx(2.0));
    CHECK(richardson(1.0 + 0.25, 1.0 + 0.0625, 2.0) == doctest::Approx(1.0));
    CHECK_FALSE(observed_order(1.0, 1.0, 1.0));
}
