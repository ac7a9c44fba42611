#include "slowlight/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>

#include "detail/full_model.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/media.hpp"

namespace slowlight {
namespace {

// Heun step with an explicit-midpoint companion for the error estimate.
// Throws on the first step whose estimate exceeds tol.
void reduced_history(MediumModel model, double s, std::span<const double> amp, double dT,
                     double rho0, double tol, std::span<double> rho) {
    rho[0] = rho0;
    for (std::size_t i = 0; i + 1 < amp.size(); ++i) {
        const double r = rho[i];
        const double a0 = amp[i];
        const double a1 = amp[i + 1];
        const double k1 = population_rate(model, r, a0, s);
        const double k2 = population_rate(model, r + dT * k1, a1, s);
        const double heun = r + 0.5 * dT * (k1 + k2);
        const double km = population_rate(model, r + 0.5 * dT * k1, 0.5 * (a0 + a1), s);
        const double midpoint = r + dT * km;
        const double estimate = std::abs(heun - midpoint);
        if (estimate > tol) {
            std::ostringstream os;
            os << "step accuracy: local truncation estimate " << estimate << " exceeds " << tol
               << "; refine the time grid";
            throw NumericalError(os.str(), std::nullopt, i + 1);
        }
        rho[i + 1] = heun;
    }
}

void flush_and_check(std::vector<double>& a, double z) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i])) throw NumericalError("non-finite envelope", z, i);
        if (a[i] < kUnderflowFloor) a[i] = 0.0;
    }
}

double l2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<int> slice_steps(int n_z, int count) {
    std::vector<int> steps;
    for (int j = 1; j <= count; ++j) steps.push_back((j * n_z + count) / (count + 1));
    return steps;
}

// Second-order (Heun) march in z. `rates(a, out)` fills d(amp)/dz for the
// envelope a; it may throw NumericalError carrying a tau index.
template <class Rates>
PropagationResult march(const ValidatedConfig& vc, Rates&& rates) {
    const auto& cfg = vc.config();
    Envelope input = make_envelope(cfg.source, cfg.grid);
    const double dz = vc.depth_step();
    const std::size_t n = cfg.grid.n;

    std::vector<double> a = input.amp();
    std::vector<double> f0(n), f1(n), pred(n);
    const auto record = slice_steps(cfg.n_z, cfg.record_slices);

    PropagationResult result{input, input, {}, std::nullopt, 0, 0.0, std::nullopt};
    auto with_z = [](const NumericalError& e, double z) {
        return NumericalError(e.what(), z, e.tau_index());
    };

    for (int k = 0; k < cfg.n_z; ++k) {
        const double z = k * dz;
        try {
            rates(a, f0);
            for (std::size_t i = 0; i < n; ++i) pred[i] = a[i] + dz * f0[i];
            flush_and_check(pred, z + dz);
            rates(pred, f1);
        } catch (const NumericalError& e) {
            if (e.z()) throw;
            throw with_z(e, z);
        }
        double diff2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = a[i] + 0.5 * dz * (f0[i] + f1[i]);
            diff2 += (next - pred[i]) * (next - pred[i]);
            a[i] = next;
        }
        flush_and_check(a, z + dz);
        const double norm = l2(a);
        if (norm > 0.0)
            result.convergence_estimate = std::max(result.convergence_estimate, std::sqrt(diff2) / norm);
        ++result.steps_taken;
        if (std::find(record.begin(), record.end(), k + 1) != record.end())
            result.slices.push_back({(k + 1) * dz, Envelope(cfg.grid, a)});
    }
    result.output = Envelope(cfg.grid, std::move(a));
    return result;
}

// --- full density-matrix histories -----------------------------------------

template <class State>
class FullHistory {
    using Layout = detail::FullLayout<State>;
    using Vector = typename Layout::Vector;
    static constexpr int N = Layout::size;

public:
    FullHistory(const ValidatedConfig& vc, StiffScheme scheme)
        : medium_(vc.medium()),
          source_(vc.config().source),
          family_(vc.medium()),
          scale_(full_rabi_scale(vc.medium())),
          dt_(vc.grid().dt),
          scheme_(scheme) {}

    const FullModelDiagnostics& diagnostics() const { return diag_; }

    // d(amp)/dz and, optionally, rho_gg at every sample.
    void operator()(std::span<const double> amp, std::span<double> rates,
                    std::vector<double>* rho_gg = nullptr) {
        Vector x = Layout::pack(initial(amp[0]));
        emit(x, 0, rates, rho_gg);
        for (std::size_t i = 0; i + 1 < amp.size(); ++i) {
            x = scheme_ == StiffScheme::Implicit ? radau_step(x, amp[i], amp[i + 1])
                                                 : heun_step(x, amp[i], amp[i + 1]);
            emit(x, i + 1, rates, rho_gg);
        }
    }

private:
    State initial(double leading_amp) const {
        if (std::holds_alternative<GaussianSource>(source_)) return State{};
        if constexpr (std::is_same_v<State, FullThreeLevelState>)
            return full_three_level_steady(leading_amp * scale_, medium_);
        else
            return full_four_level_steady(leading_amp * scale_, medium_);
    }

    void emit(const Vector& x, std::size_t i, std::span<double> rates, std::vector<double>* rho_gg) {
        const State s = Layout::unpack(x);
        if (!std::isfinite(x.sum())) throw NumericalError("non-finite density matrix", std::nullopt, i);
        rates[i] = full_field_rate(s, medium_) / scale_;
        if (rho_gg) (*rho_gg)[i] = s.rho_gg;
        track(s);
    }

    void track(const State& s) {
        diag_.max_trace_error = std::max(diag_.max_trace_error, std::abs(s.trace() - 1.0));
        auto see = [&](double p) {
            diag_.min_population = std::min(diag_.min_population, p);
            diag_.max_population = std::max(diag_.max_population, p);
        };
        see(s.rho_gg);
        see(s.rho_11);
        see(s.rho_22);
        if constexpr (std::is_same_v<State, FullFourLevelState>) see(s.rho_33);
    }

    Vector heun_step(const Vector& x, double a0, double a1) const {
        const auto g0 = family_.at(a0 * scale_);
        const auto g1 = family_.at(a1 * scale_);
        const Vector k1 = g0.M * x + g0.b;
        const Vector k2 = g1.M * (x + dt_ * k1) + g1.b;
        return x + 0.5 * dt_ * (k1 + k2);
    }

    // Two-stage Radau IIA (c = 1/3, 1); the last stage is the step result.
    Vector radau_step(const Vector& x, double a0, double a1) const {
        constexpr double a11 = 5.0 / 12.0, a12 = -1.0 / 12.0, a21 = 3.0 / 4.0, a22 = 1.0 / 4.0;
        const auto g1 = family_.at(((2.0 / 3.0) * a0 + (1.0 / 3.0) * a1) * scale_);
        const auto g2 = family_.at(a1 * scale_);
        const double h = dt_;
        using Block = Eigen::Matrix<double, 2 * N, 2 * N>;
        using Rhs = Eigen::Matrix<double, 2 * N, 1>;
        const auto eye = Eigen::Matrix<double, N, N>::Identity();
        Block K;
        K.template topLeftCorner<N, N>() = eye - h * a11 * g1.M;
        K.template topRightCorner<N, N>() = -h * a12 * g2.M;
        K.template bottomLeftCorner<N, N>() = -h * a21 * g1.M;
        K.template bottomRightCorner<N, N>() = eye - h * a22 * g2.M;
        Rhs rhs;
        rhs.template head<N>() = x + h * (a11 * g1.b + a12 * g2.b);
        rhs.template tail<N>() = x + h * (a21 * g1.b + a22 * g2.b);
        const Rhs stages = K.partialPivLu().solve(rhs);
        return stages.template tail<N>();
    }

    MediumSpec medium_;
    SourceSpec source_;
    detail::DriveFamily<State> family_;
    double scale_;
    double dt_;
    StiffScheme scheme_;
    FullModelDiagnostics diag_;
};

template <class State>
PropagationResult propagate_full_impl(const ValidatedConfig& vc, FullModelOptions options) {
    FullHistory<State> history(vc, options.scheme);
    auto rates = [&](const std::vector<double>& a, std::vector<double>& out) { history(a, out); };
    PropagationResult result = march(vc, rates);
    std::vector<double> scratch(vc.grid().n), rho(vc.grid().n);
    history(result.output.amp(), scratch, &rho);
    result.populations_out = std::move(rho);
    result.full_diagnostics = history.diagnostics();
    return result;
}

}  // namespace

std::vector<double> solve_population_history(const MediumSpec& medium, const Envelope& envelope,
                                             double rho_init, double tolerance) {
    if (!(rho_init >= 0.0 && rho_init <= 1.0))
        throw std::invalid_argument("rho_init must lie in [0, 1]");
    std::vector<double> rho(envelope.size());
    reduced_history(medium.model, medium.sat_factor, envelope.amp(),
                    envelope.grid().dimensionless_step(medium.gamma2), rho_init, tolerance, rho);
    return rho;
}

double initial_population(const MediumSpec& medium, const SourceSpec& source, double leading_amp) {
    if (std::holds_alternative<GaussianSource>(source)) return dark_population(medium.model);
    return steady_population(medium.model, leading_amp, medium.sat_factor);
}

PropagationResult propagate(const ValidatedConfig& vc) {
    const MediumSpec& medium = vc.medium();
    const SourceSpec& source = vc.config().source;
    const double dT = vc.time_step();
    std::vector<double> rho(vc.grid().n);

    auto rates = [&](const std::vector<double>& a, std::vector<double>& out) {
        reduced_history(medium.model, medium.sat_factor, a, dT, initial_population(medium, source, a[0]),
                        kLocalErrorTolerance, rho);
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = field_rate(a[i], rho[i], medium);
    };
    PropagationResult result = march(vc, rates);

    const auto& out = result.output.amp();
    reduced_history(medium.model, medium.sat_factor, out, dT, initial_population(medium, source, out[0]),
                    kLocalErrorTolerance, rho);
    for (double& r : rho) r = ground_population(medium.model, r);
    result.populations_out = std::move(rho);
    return result;
}

double stiffness_number(const ValidatedConfig& vc) {
    const MediumSpec& m = vc.medium();
    double fastest = m.gamma1.value_or(0.0);
    if (m.model == MediumModel::FourLevelReverse) fastest = std::max(fastest, m.gamma3.value_or(0.0));
    return vc.grid().dt * fastest;
}

PropagationResult propagate_full(const ValidatedConfig& vc, FullModelOptions options) {
    const auto issues = check_full_model(vc.medium());
    if (!issues.empty()) throw ConfigError(issues);
    if (options.scheme == StiffScheme::Explicit) {
        const double stiff = stiffness_number(vc);
        if (stiff > kExplicitStiffnessLimit) {
            std::ostringstream os;
            os << "stiffness: dt*gamma1 = " << stiff << " > " << kExplicitStiffnessLimit
               << " under the explicit scheme; refine the grid or use the implicit scheme";
            throw NumericalError(os.str());
        }
    }
    if (vc.medium().model == MediumModel::FourLevelReverse)
        return propagate_full_impl<FullFourLevelState>(vc, options);
    return propagate_full_impl<FullThreeLevelState>(vc, options);
}

}  // namespace slowlight
