// emit.hpp - result files: CSV tables and SVG envelope overlays.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/convergence.hpp"
#include "slowlight/propagation.hpp"

namespace slowlight {

/// tau_s, amp_in, amp_out[, rho_gg]; one row per sample, 17 significant digits.
void write_envelopes(const std::filesystem::path& path, const PropagationResult& result, bool with_populations);

struct ObservableRow {
    double param;
    Observables obs;
};

/// param, delay_s, v_g_mps, t_energy, t_peak, width_ratio, theta_rad; one row per sweep point.
void write_observables(const std::filesystem::path& path, const std::vector<ObservableRow>& rows);

/// tau_s, z_0 (input), then one column per recorded slice, headed by its depth.
void write_slices(const std::filesystem::path& path, const PropagationResult& result);

struct ConvergenceRow {
    double param;
    ConvergenceReport report;
};

/// One row per refinement level, and a summary table with orders and extrapolations.
void write_convergence(const std::filesystem::path& levels_path, const std::filesystem::path& summary_path,
                       const std::vector<ConvergenceRow>& rows);

struct PlotCurve {
    std::string label;
    const Envelope* envelope;
};

/// Overlay of envelopes against time in milliseconds; the first curve is drawn dashed.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<PlotCurve>& curves);

/// Envelope table read back, for round-trip checks and downstream tooling.
struct EnvelopeTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

EnvelopeTable read_table(const std::filesystem::path& path);

}  // namespace slowlight
