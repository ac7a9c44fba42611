#include <cstdio>
#include <ostream>

#include <CLI11.hpp>

#include "slowlight/errors.hpp"
#include "slowlight/presets.hpp"
#include "slowlight/runner.hpp"

namespace slowlight {
namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void print_summary(std::ostream& out, const Scenario& sc, const std::vector<PointOutcome>& points) {
    out << sc.name << ": " << points.size() << (points.size() == 1 ? " run" : " runs") << "\n";
    for (const auto& p : points) {
        out << "  param " << fmt("%-10.4g", p.param) << " delay " << fmt("%.6g", p.observables.delay_s * 1e3) << " ms"
            << "  v_g " << fmt("%.6g", p.observables.v_g) << " m/s"
            << "  t_energy " << fmt("%.6g", p.observables.t_energy);
        if (p.convergence && p.convergence->delay_order) out << "  delay order " << fmt("%.3g", *p.convergence->delay_order);
        if (p.convergence && p.convergence->non_monotone) out << "  (refinement non-monotone)";
        out << "\n";
    }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pulse and modulated-beam propagation through saturable and reverse-saturable absorbers."};
    app.name("slowlight");
    app.require_subcommand(1);

    std::string scenario_arg, out_dir;
    unsigned workers = 0;
    int refine = 0;
    bool plots = false;
    auto* run = app.add_subcommand("run", "Run a scenario file or bundled preset");
    run->add_option("scenario", scenario_arg, "Scenario file, or a preset name")->required();
    auto* out_opt = run->add_option("--out", out_dir, std::string("Output directory (default: $") + kOutputDirEnv + " or .)");
    run->add_option("--workers", workers, "Worker threads for sweeps (default: machine parallelism)");
    run->add_option("--refine", refine, "Extra grid halvings for a convergence report")->check(CLI::Range(0, 4));
    run->add_flag("--plots", plots, "Also write SVG envelope overlays");

    double target = 0.0;
    std::string calibrate_arg;
    auto* cal = app.add_subcommand("calibrate", "Find alpha0 giving a target energy transmission");
    cal->add_option("--target", target, "Target t_energy in (0, 1)")->required();
    cal->add_option("scenario", calibrate_arg, "Scenario file, or a preset name")->required();

    std::string preset_name;
    auto* pre = app.add_subcommand("presets", "Bundled scenarios");
    pre->require_subcommand(1);
    auto* list = pre->add_subcommand("list", "List presets");
    auto* show = pre->add_subcommand("show", "Print a preset's scenario file");
    show->add_option("name", preset_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            const Scenario sc = load_scenario(scenario_arg);
            const auto points = run_scenario(sc, workers, refine);
            const auto files = emit_scenario(
                sc, points, {output_directory(*out_opt ? std::optional(out_dir) : std::nullopt), plots});
            print_summary(out, sc, points);
            for (const auto& f : files) out << "  wrote " << f.string() << "\n";
        } else if (*cal) {
            const Scenario sc = load_scenario(calibrate_arg);
            if (sc.sweep) err << "note: sweep ignored; calibrating the base configuration\n";
            const Calibration c = calibrate_alpha0(target, sc);
            out << "alpha0 = " << fmt("%.6g", c.alpha0) << " 1/m\n"
                << "alpha0 L = " << fmt("%.6g", c.depth) << "\n"
                << "t_energy = " << fmt("%.6g", c.t_energy) << " (target " << fmt("%.6g", target) << ", "
                << c.evaluations << " runs)\n";
        } else if (*list) {
            for (const auto& p : presets()) out << p.name << "  " << p.summary << "\n";
        } else if (*show) {
            const auto text = preset_text(preset_name);
            if (!text) throw ConfigError("preset", "unknown preset: " + preset_name);
            out << *text;
        }
    } catch (const ConfigError& e) {
        err << "config error:\n";
        for (const auto& i : e.issues()) err << "  " << i.field << ": " << i.message << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const AnalysisError& e) {
        err << "analysis failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace slowlight
