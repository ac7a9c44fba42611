#include "slowlight/presets.hpp"

namespace slowlight {
namespace {

// Ruby: 1/(2 gamma2) = 4.45 ms, L = 7.25 cm. alpha0 below is a calibration
// output (t_energy = 1e-3 at peak amplitude 1), not a measured constant.
#define RUBY_MEDIUM                                                        \
    "[medium]\n"                                                           \
    "model = three_level\n"                                                \
    "gamma2 = 112.35955056179776\n"                                        \
    "; calibrated: slowlight calibrate --target 1e-3 ruby_fig2_base\n"     \
    "alpha0 = 115.543\n"                                                    \
    "\n"                                                                   \
    "[propagation]\n"                                                      \
    "length_m = 0.0725\n"

#define RUBY_PULSE_GRID                                                    \
    "\n[grid]\n"                                                           \
    "; +/- 6 sigma, 2 gamma2 dt = 0.02\n"                                  \
    "t_start = -0.120061\n"                                                \
    "dt = 8.9e-5\n"                                                        \
    "n = 2699\n"

#define RUBY_MODULATED(I0)                                                 \
    "[scenario]\n"                                                         \
    "outputs = observables\n\n" RUBY_MEDIUM                                \
    "\n[grid]\n"                                                           \
    "; 8 periods of the slowest modulation plus the turn-on transient\n"   \
    "t_start = 0\n"                                                        \
    "dt = 4.45e-5\n"                                                       \
    "n = 26200\n"                                                          \
    "\n[source]\n"                                                         \
    "type = modulated\n"                                                   \
    "i0 = " I0 "\n"                                                        \
    "m = 0.05\n"                                                           \
    "delta = 224.71910112359552\n"                                         \
    "\n[sweep]\n"                                                          \
    "; delta / (2 gamma2) = 0.2, 0.5, 1, 2, 5\n"                           \
    "parameter = delta\n"                                                  \
    "values = 44.943820224719104, 112.35955056179776, 224.71910112359552, " \
    "449.43820224719104, 1123.5955056179776\n"

const std::vector<Preset> kPresets = {
    {"ruby_fig2_base", "Ruby, Gaussian sigma = 20 ms, single run at peak amplitude 1 (calibration base)",
     RUBY_MEDIUM RUBY_PULSE_GRID
     "\n[source]\n"
     "type = gaussian\n"
     "omega0 = 1\n"
     "sigma = 0.02\n"},

    {"ruby_fig2", "Ruby, Gaussian sigma = 20 ms at three input amplitudes, envelopes vs vacuum reference",
     "[scenario]\n"
     "outputs = envelopes, observables\n\n" RUBY_MEDIUM RUBY_PULSE_GRID
     "\n[source]\n"
     "type = gaussian\n"
     "omega0 = 1\n"
     "sigma = 0.02\n"
     "\n[sweep]\n"
     "parameter = peak_amplitude\n"
     "values = 0.5, 1, 2\n"},

    {"ruby_fig3", "Ruby three-level model: transmission and group velocity over an amplitude ladder",
     "[scenario]\n"
     "outputs = observables\n\n" RUBY_MEDIUM
     "\n[grid]\n"
     "; 2 gamma2 dt = 0.005 keeps the step guard quiet at amplitude 4\n"
     "t_start = -0.1200165\n"
     "dt = 2.225e-5\n"
     "n = 10789\n"
     "\n[source]\n"
     "type = gaussian\n"
     "omega0 = 1\n"
     "sigma = 0.02\n"
     "\n[sweep]\n"
     "parameter = peak_amplitude\n"
     "values = 0.25, 0.5, 1, 2, 4\n"},

    {"ruby_fig3_two_level", "Same ladder and optical depth through a two-level absorber",
     "[scenario]\n"
     "outputs = observables\n\n"
     "[medium]\n"
     "model = two_level\n"
     "gamma2 = 112.35955056179776\n"
     "; same alpha0 as the three-level ruby presets\n"
     "alpha0 = 115.543\n"
     "\n[propagation]\n"
     "length_m = 0.0725\n"
     "\n[grid]\n"
     "t_start = -0.1200165\n"
     "dt = 2.225e-5\n"
     "n = 10789\n"
     "\n[source]\n"
     "type = gaussian\n"
     "omega0 = 1\n"
     "sigma = 0.02\n"
     "\n[sweep]\n"
     "parameter = peak_amplitude\n"
     "values = 0.25, 0.5, 1, 2, 4\n"},

    {"ruby_fig4_low", "Ruby, modulated beam (m = 0.05, I0 = 1): delay against modulation frequency",
     RUBY_MODULATED("1")},

    {"ruby_fig4_high", "Ruby, modulated beam (m = 0.05, I0 = 3): delay against modulation frequency",
     RUBY_MODULATED("3")},

    {"alexandrite_fig6", "Alexandrite four-level model, sigma = 500 us, 1/(2 gamma2) = 250 us: pulse advancement",
     "[scenario]\n"
     "outputs = envelopes, observables\n"
     "\n[medium]\n"
     "model = four_level\n"
     "gamma2 = 2000\n"
     "; calibrated: t_energy = 0.1 at peak amplitude 1 (not a measured value)\n"
     "alpha0 = 18.2791\n"
     "alpha_ratio = 4\n"
     "\n[propagation]\n"
     "length_m = 0.0725\n"
     "\n[grid]\n"
     "; +/- 6 sigma, 2 gamma2 dt = 0.01\n"
     "t_start = -0.003\n"
     "dt = 2.5e-6\n"
     "n = 2401\n"
     "\n[source]\n"
     "type = gaussian\n"
     "omega0 = 1\n"
     "sigma = 0.0005\n"
     "\n[sweep]\n"
     "parameter = peak_amplitude\n"
     "values = 0.5, 1, 2\n"},
};

#undef RUBY_MODULATED
#undef RUBY_PULSE_GRID
#undef RUBY_MEDIUM

}  // namespace

const std::vector<Preset>& presets() { return kPresets; }

std::optional<std::string> preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p.text;
    return std::nullopt;
}

}  // namespace slowlight
