#include "slowlight/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace slowlight {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::filesystem::path& path) {
    File f(std::fopen(path.c_str(), "w"));
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

void finish(File& f, const std::filesystem::path& path) {
    if (std::ferror(f.get()) || std::fclose(f.release()) != 0)
        throw std::runtime_error("write failed: " + path.string());
}

void put(std::FILE* f, double v, bool first = false) {
    if (!first) std::fputc(',', f);
    if (std::isnan(v))
        std::fputs("nan", f);
    else
        std::fprintf(f, "%.17g", v);
}

const double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void write_envelopes(const std::filesystem::path& path, const PropagationResult& result, bool with_populations) {
    File f = open_for_write(path);
    const bool rho = with_populations && result.populations_out;
    std::fputs(rho ? "tau_s,amp_in,amp_out,rho_gg\n" : "tau_s,amp_in,amp_out\n", f.get());
    const TimeGrid& g = result.input.grid();
    for (std::size_t i = 0; i < g.n; ++i) {
        put(f.get(), g.time(i), true);
        put(f.get(), result.input[i]);
        put(f.get(), result.output[i]);
        if (rho) put(f.get(), (*result.populations_out)[i]);
        std::fputc('\n', f.get());
    }
    finish(f, path);
}

void write_observables(const std::filesystem::path& path, const std::vector<ObservableRow>& rows) {
    File f = open_for_write(path);
    std::fputs("param,delay_s,v_g_mps,t_energy,t_peak,width_ratio,theta_rad\n", f.get());
    for (const auto& r : rows) {
        put(f.get(), r.param, true);
        put(f.get(), r.obs.delay_s);
        put(f.get(), r.obs.v_g);
        put(f.get(), r.obs.t_energy);
        put(f.get(), r.obs.t_peak);
        put(f.get(), r.obs.width_ratio);
        put(f.get(), r.obs.theta.value_or(kNaN));
        std::fputc('\n', f.get());
    }
    finish(f, path);
}

void write_slices(const std::filesystem::path& path, const PropagationResult& result) {
    File f = open_for_write(path);
    std::fputs("tau_s,z_0", f.get());
    for (const Slice& s : result.slices) std::fprintf(f.get(), ",z_%.9g", s.z);
    std::fputc('\n', f.get());
    const TimeGrid& g = result.input.grid();
    for (std::size_t i = 0; i < g.n; ++i) {
        put(f.get(), g.time(i), true);
        put(f.get(), result.input[i]);
        for (const Slice& s : result.slices) put(f.get(), s.envelope[i]);
        std::fputc('\n', f.get());
    }
    finish(f, path);
}

void write_convergence(const std::filesystem::path& levels_path, const std::filesystem::path& summary_path,
                       const std::vector<ConvergenceRow>& rows) {
    File f = open_for_write(levels_path);
    std::fputs("param,level,n_z,n_t,time_step,depth_step_m,delay_s,t_energy\n", f.get());
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < r.report.levels.size(); ++k) {
            const auto& l = r.report.levels[k];
            put(f.get(), r.param, true);
            std::fprintf(f.get(), ",%zu,%d,%zu", k, l.n_z, l.n_t);
            put(f.get(), l.time_step);
            put(f.get(), l.depth_step);
            put(f.get(), l.delay_s);
            put(f.get(), l.t_energy);
            std::fputc('\n', f.get());
        }
    }
    finish(f, levels_path);

    File s = open_for_write(summary_path);
    std::fputs("param,delay_order,energy_order,delay_extrapolated_s,energy_extrapolated,non_monotone\n", s.get());
    for (const auto& r : rows) {
        put(s.get(), r.param, true);
        put(s.get(), r.report.delay_order.value_or(kNaN));
        put(s.get(), r.report.energy_order.value_or(kNaN));
        put(s.get(), r.report.delay_extrapolated);
        put(s.get(), r.report.energy_extrapolated);
        std::fprintf(s.get(), ",%d\n", r.report.non_monotone ? 1 : 0);
    }
    finish(s, summary_path);
}

void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<PlotCurve>& curves) {
    constexpr double W = 800, H = 500, left = 70, right = 20, top = 40, bottom = 50;
    if (curves.empty()) throw std::invalid_argument("nothing to plot");
    const TimeGrid& g = curves.front().envelope->grid();
    double ymax = 0.0;
    for (const auto& c : curves) ymax = std::max(ymax, *std::max_element(c.envelope->amp().begin(), c.envelope->amp().end()));
    if (!(ymax > 0.0)) ymax = 1.0;
    const double t0 = g.t_start * 1e3, t1 = g.t_end() * 1e3;
    auto px = [&](double t_ms) { return left + (t_ms - t0) / (t1 - t0) * (W - left - right); };
    auto py = [&](double y) { return H - bottom - y / (1.05 * ymax) * (H - top - bottom); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\"" << H - top - bottom
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double t = t0 + (t1 - t0) * k / 5.0;
        const double y = 1.05 * ymax * k / 5.0;
        os << "<text x=\"" << px(t) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">" << t << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">tau (ms)</text>\n";
    os << "<text transform=\"translate(18," << H / 2 << ") rotate(-90)\" text-anchor=\"middle\">normalized amplitude</text>\n";

    static const char* colors[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const std::size_t stride = std::max<std::size_t>(1, g.n / 2000);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const Envelope& e = *curves[c].envelope;
        const char* color = colors[c % 7];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
           << (c == 0 ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
        for (std::size_t i = 0; i < e.size(); i += stride) os << px(e.grid().time(i) * 1e3) << ',' << py(e[i]) << ' ';
        os << "\"/>\n";
        const double ly = top + 18 + 16 * c;
        os << "<line x1=\"" << W - right - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - right - 125 << "\" y2=\"" << ly - 4
           << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << (c == 0 ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        os << "<text x=\"" << W - right - 120 << "\" y=\"" << ly << "\">" << curves[c].label << "</text>\n";
    }
    os << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << os.str();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

EnvelopeTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    EnvelopeTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty table: " + path.string());
    std::stringstream hs(line);
    for (std::string name; std::getline(hs, name, ',');) t.header.push_back(name);
    t.columns.resize(t.header.size());
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::size_t c = 0;
        for (std::string cell; std::getline(ls, cell, ','); ++c) {
            if (c >= t.columns.size()) throw std::runtime_error("ragged row in " + path.string());
            t.columns[c].push_back(cell == "nan" ? kNaN : std::stod(cell));
        }
        if (c != t.columns.size()) throw std::runtime_error("ragged row in " + path.string());
    }
    return t;
}

}  // namespace slowlight
