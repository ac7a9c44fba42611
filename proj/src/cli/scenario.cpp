#include "slowlight/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "slowlight/errors.hpp"
#include "slowlight/presets.hpp"

namespace slowlight {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"scenario", {"name", "outputs"}},
    {"medium", {"model", "gamma2", "alpha0", "alpha_ratio", "sat_factor", "gamma1", "gamma3"}},
    {"propagation", {"length_m", "n_z", "record_slices", "fidelity", "scheme"}},
    {"grid", {"t_start", "dt", "n"}},
    {"source", {"type", "omega0", "sigma", "i0", "m", "delta"}},
    {"sweep", {"parameter", "values"}},
};

const std::vector<std::string> kRequiredSections = {"medium", "propagation", "grid", "source"};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

class Reader {
public:
    explicit Reader(const pt::ptree& root) {
        for (const auto& [name, node] : root) {
            if (!node.data().empty()) {
                issue(name, "key outside any section");
                continue;
            }
            const auto schema = kSchema.find(name);
            if (schema == kSchema.end()) {
                issue("[" + name + "]", "unknown section");
                continue;
            }
            for (const auto& [key, value] : node) {
                if (!schema->second.count(key)) issue(name + "." + key, "unknown key");
            }
            sections_[name] = &node;
        }
        for (const auto& s : kRequiredSections)
            if (!sections_.count(s)) missing_.push_back(s);
    }

    bool has(const std::string& section) const { return sections_.count(section) > 0; }

    std::optional<std::string> text(const std::string& section, const std::string& key, bool required) {
        const auto it = sections_.find(section);
        if (it == sections_.end()) return std::nullopt;
        const auto child = it->second->get_child_optional(key);
        if (!child) {
            if (required) missing_.push_back(section + "." + key);
            return std::nullopt;
        }
        seen_.insert(section + "." + key);
        return trim(child->data());
    }

    std::optional<double> number(const std::string& section, const std::string& key, bool required) {
        const auto raw = text(section, key, required);
        if (!raw) return std::nullopt;
        const auto v = parse_double(*raw);
        if (!v) issue(section + "." + key, "not a number: '" + *raw + "'");
        return v;
    }

    std::optional<long long> integer(const std::string& section, const std::string& key, bool required) {
        const auto raw = text(section, key, required);
        if (!raw) return std::nullopt;
        long long v = 0;
        const char* end = raw->data() + raw->size();
        const auto [ptr, ec] = std::from_chars(raw->data(), end, v);
        if (ec != std::errc() || ptr != end) {
            issue(section + "." + key, "not an integer: '" + *raw + "'");
            return std::nullopt;
        }
        return v;
    }

    // Keys that are valid in general but not for this configuration.
    void reject(const std::string& section, const std::string& key, const std::string& why) {
        const auto it = sections_.find(section);
        if (it != sections_.end() && it->second->get_child_optional(key)) issue(section + "." + key, why);
    }

    void issue(std::string field, std::string message) { issues_.push_back({std::move(field), std::move(message)}); }

    std::vector<ConfigIssue> finish() {
        std::vector<ConfigIssue> all;
        if (!missing_.empty()) {
            std::string names;
            for (const auto& m : missing_) names += (names.empty() ? "" : ", ") + m;
            all.push_back({"missing", names});
        }
        all.insert(all.end(), issues_.begin(), issues_.end());
        return all;
    }

private:
    std::map<std::string, const pt::ptree*> sections_;
    std::vector<std::string> missing_;
    std::vector<ConfigIssue> issues_;
    std::set<std::string> seen_;
};

std::optional<MediumModel> parse_model(const std::string& s) {
    if (s == "three_level") return MediumModel::ThreeLevelSaturable;
    if (s == "two_level") return MediumModel::TwoLevelBloch;
    if (s == "four_level") return MediumModel::FourLevelReverse;
    return std::nullopt;
}

std::optional<Artifact> parse_artifact(const std::string& s) {
    if (s == "envelopes") return Artifact::Envelopes;
    if (s == "observables") return Artifact::Observables;
    if (s == "slices") return Artifact::Slices;
    if (s == "populations") return Artifact::Populations;
    return std::nullopt;
}

std::optional<SweepParameter> parse_sweep_parameter(const std::string& s) {
    if (s == "peak_amplitude") return SweepParameter::PeakAmplitude;
    if (s == "i0") return SweepParameter::I0;
    if (s == "delta") return SweepParameter::Delta;
    return std::nullopt;
}

void read_medium(Reader& r, MediumSpec& m) {
    if (const auto model = r.text("medium", "model", true)) {
        if (const auto parsed = parse_model(*model))
            m.model = *parsed;
        else
            r.issue("medium.model", "expected three_level, two_level or four_level, got '" + *model + "'");
    }
    if (const auto v = r.number("medium", "gamma2", true)) m.gamma2 = *v;
    if (const auto v = r.number("medium", "alpha0", true)) m.alpha0 = *v;
    const bool four = m.model == MediumModel::FourLevelReverse;
    if (const auto v = r.number("medium", "alpha_ratio", four)) m.alpha_ratio = *v;
    if (!four) r.reject("medium", "alpha_ratio", "only used by four_level media");
    if (const auto v = r.number("medium", "sat_factor", false)) m.sat_factor = *v;
    if (const auto v = r.number("medium", "gamma1", false)) m.gamma1 = *v;
    if (const auto v = r.number("medium", "gamma3", false)) m.gamma3 = *v;
}

void read_source(Reader& r, SourceSpec& source) {
    const auto type = r.text("source", "type", true);
    if (!type) return;
    if (*type == "gaussian") {
        GaussianSource g;
        if (const auto v = r.number("source", "omega0", true)) g.omega0 = *v;
        if (const auto v = r.number("source", "sigma", true)) g.sigma = *v;
        for (const char* k : {"i0", "m", "delta"}) r.reject("source", k, "not a gaussian source key");
        source = g;
    } else if (*type == "modulated") {
        ModulatedSource mod;
        if (const auto v = r.number("source", "i0", true)) mod.i0 = *v;
        if (const auto v = r.number("source", "m", true)) mod.m = *v;
        if (const auto v = r.number("source", "delta", true)) mod.delta = *v;
        for (const char* k : {"omega0", "sigma"}) r.reject("source", k, "not a modulated source key");
        source = mod;
    } else {
        r.issue("source.type", "expected gaussian or modulated, got '" + *type + "'");
    }
}

Scenario build(const pt::ptree& root, const std::string& default_name) {
    Reader r(root);
    Scenario sc;
    sc.name = default_name;
    SimulationConfig& cfg = sc.config;

    if (const auto v = r.text("scenario", "name", false)) {
        if (v->empty() || v->find_first_of("/\\ ") != std::string::npos)
            r.issue("scenario.name", "must be non-empty without spaces or path separators");
        else
            sc.name = *v;
    }
    if (const auto v = r.text("scenario", "outputs", false)) {
        sc.outputs.clear();
        for (const auto& item : split_list(*v)) {
            if (const auto a = parse_artifact(item))
                sc.outputs.push_back(*a);
            else
                r.issue("scenario.outputs", "unknown output '" + item + "'");
        }
    }

    read_medium(r, cfg.medium);

    if (const auto v = r.number("propagation", "length_m", true)) cfg.length_m = *v;
    if (const auto v = r.integer("propagation", "n_z", false)) {
        cfg.n_z = static_cast<int>(*v);
        sc.auto_depth_steps = false;
    }
    if (const auto v = r.integer("propagation", "record_slices", false)) cfg.record_slices = static_cast<int>(*v);
    if (const auto v = r.text("propagation", "fidelity", false)) {
        if (*v == "reduced")
            sc.fidelity = Fidelity::Reduced;
        else if (*v == "full")
            sc.fidelity = Fidelity::Full;
        else
            r.issue("propagation.fidelity", "expected reduced or full, got '" + *v + "'");
    }
    if (const auto v = r.text("propagation", "scheme", false)) {
        if (*v == "implicit")
            sc.scheme = StiffScheme::Implicit;
        else if (*v == "explicit")
            sc.scheme = StiffScheme::Explicit;
        else
            r.issue("propagation.scheme", "expected implicit or explicit, got '" + *v + "'");
    }

    if (const auto v = r.number("grid", "t_start", true)) cfg.grid.t_start = *v;
    if (const auto v = r.number("grid", "dt", true)) cfg.grid.dt = *v;
    if (const auto v = r.integer("grid", "n", true)) {
        if (*v < 0)
            r.issue("grid.n", "must be positive");
        else
            cfg.grid.n = static_cast<std::size_t>(*v);
    }

    read_source(r, cfg.source);

    if (r.has("sweep")) {
        Sweep sw{SweepParameter::PeakAmplitude, {}};
        bool ok = true;
        if (const auto p = r.text("sweep", "parameter", true)) {
            if (const auto parsed = parse_sweep_parameter(*p))
                sw.parameter = *parsed;
            else {
                r.issue("sweep.parameter", "expected peak_amplitude, i0 or delta, got '" + *p + "'");
                ok = false;
            }
        } else {
            ok = false;
        }
        if (const auto v = r.text("sweep", "values", true)) {
            for (const auto& item : split_list(*v)) {
                if (const auto d = parse_double(item))
                    sw.values.push_back(*d);
                else {
                    r.issue("sweep.values", "not a number: '" + item + "'");
                    ok = false;
                }
            }
            if (sw.values.empty()) r.issue("sweep.values", "empty list");
            for (std::size_t i = 1; i < sw.values.size(); ++i)
                if (!(sw.values[i] > sw.values[i - 1])) {
                    r.issue("sweep.values", "must be strictly increasing");
                    break;
                }
        } else {
            ok = false;
        }
        const bool gaussian = std::holds_alternative<GaussianSource>(cfg.source);
        if (ok && (sw.parameter == SweepParameter::PeakAmplitude) != gaussian)
            r.issue("sweep.parameter", std::string(to_string(sw.parameter)) + " does not apply to a " +
                                           (gaussian ? "gaussian" : "modulated") + " source");
        sc.sweep = sw;
    }

    std::vector<ConfigIssue> issues = r.finish();
    if (!issues.empty()) throw ConfigError(issues);

    if (sc.auto_depth_steps) cfg.n_z = default_depth_steps(cfg.medium, cfg.length_m);
    if (sc.wants(Artifact::Slices) && cfg.record_slices == 0)
        issues.push_back({"propagation.record_slices", "slices output requested but record_slices = 0"});
    if (sc.fidelity == Fidelity::Full) {
        for (auto& i : check_full_model(cfg.medium)) issues.push_back(i);
    } else if (r.has("propagation") && sc.scheme == StiffScheme::Explicit) {
        issues.push_back({"propagation.scheme", "only meaningful with fidelity = full"});
    }

    const auto pts = sc.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        for (auto& i : check_config(pts[k])) {
            if (sc.sweep) {
                std::ostringstream os;
                os << i.message << " (at " << to_string(sc.sweep->parameter) << " = " << sc.sweep->values[k] << ")";
                i.message = os.str();
            }
            issues.push_back(i);
        }
    }
    if (!issues.empty()) throw ConfigError(issues);
    return sc;
}

}  // namespace

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::PeakAmplitude: return "peak_amplitude";
        case SweepParameter::I0: return "i0";
        case SweepParameter::Delta: return "delta";
    }
    return "?";
}

bool Scenario::wants(Artifact a) const { return std::find(outputs.begin(), outputs.end(), a) != outputs.end(); }

std::vector<SimulationConfig> Scenario::points() const {
    if (!sweep) return {config};
    std::vector<SimulationConfig> out;
    for (double v : sweep->values) out.push_back(apply_sweep_value(config, sweep->parameter, v));
    return out;
}

double Scenario::parameter(std::size_t k) const {
    if (sweep) return sweep->values.at(k);
    if (const auto* g = std::get_if<GaussianSource>(&config.source)) return g->omega0;
    return std::get<ModulatedSource>(config.source).i0;
}

SimulationConfig apply_sweep_value(SimulationConfig cfg, SweepParameter p, double value) {
    switch (p) {
        case SweepParameter::PeakAmplitude: std::get<GaussianSource>(cfg.source).omega0 = value; break;
        case SweepParameter::I0: std::get<ModulatedSource>(cfg.source).i0 = value; break;
        case SweepParameter::Delta: std::get<ModulatedSource>(cfg.source).delta = value; break;
    }
    return cfg;
}

Scenario parse_scenario(std::istream& in, const std::string& default_name) {
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()), e.message());
    }
    return build(root, default_name);
}

Scenario parse_scenario_text(const std::string& text, const std::string& default_name) {
    std::istringstream in(text);
    return parse_scenario(in, default_name);
}

Scenario load_scenario(const std::string& path_or_preset) {
    namespace fs = std::filesystem;
    if (!fs::exists(path_or_preset)) {
        if (const auto text = preset_text(path_or_preset)) return parse_scenario_text(*text, path_or_preset);
        throw ConfigError("scenario", "no such file or preset: " + path_or_preset);
    }
    std::ifstream in(path_or_preset);
    if (!in) throw ConfigError("scenario", "cannot read " + path_or_preset);
    return parse_scenario(in, fs::path(path_or_preset).stem().string());
}

}  // namespace slowlight
