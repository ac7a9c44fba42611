// core.hpp - domain types shared by every module: the retarded-time grid,
// the normalized field envelope and the medium description.
//
// Unit conventions
//   tau   retarded time t - z/c, seconds
//   T     dimensionless time 2*gamma2*tau (population relaxation units)
//   amp   normalized Rabi amplitude (saturation units), real and >= 0
//   z     physical depth in meters; alpha0*z is the optical depth

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace slowlight {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Uniform sampling of retarded time. Value type; equality is exact.
struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.0;
    std::size_t n = 0;

    double time(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
    double t_end() const { return time(n - 1); }
    double span() const { return dt * static_cast<double>(n - 1); }
    double midpoint() const { return t_start + 0.5 * span(); }

    /// Nearest sample index to tau (clamped to the grid).
    std::size_t index_of(double tau) const;

    // T = 2*gamma2*tau and back.
    static double to_dimensionless(double tau, double gamma2) { return 2.0 * gamma2 * tau; }
    static double to_physical(double T, double gamma2) { return T / (2.0 * gamma2); }
    double dimensionless_step(double gamma2) const { return 2.0 * gamma2 * dt; }

    /// Same span with dt halved `levels` times; coarse samples stay on the fine grid.
    TimeGrid refined(int levels) const;

    bool operator==(const TimeGrid&) const = default;
};

/// Normalized Rabi amplitude sampled on a TimeGrid at fixed depth.
class Envelope {
public:
    Envelope(TimeGrid grid, std::vector<double> amp);

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& amp() const noexcept { return amp_; }
    double operator[](std::size_t i) const { return amp_[i]; }
    std::size_t size() const noexcept { return amp_.size(); }

    /// Trapezoidal integral of amp^2 over tau (seconds).
    double energy() const;

private:
    TimeGrid grid_;
    std::vector<double> amp_;
};

enum class MediumModel { ThreeLevelSaturable, TwoLevelBloch, FourLevelReverse };

std::string_view to_string(MediumModel model);

struct MediumSpec {
    MediumModel model = MediumModel::ThreeLevelSaturable;
    double gamma2 = 0.0;       // rad/s; population return, T1 = 1/(2 gamma2)
    double alpha0 = 0.0;       // 1/m, small-signal absorption
    double alpha_ratio = 0.0;  // excited-state / ground-state absorption, four-level only
    double sat_factor = 2.0;   // s in d(rho)/dT = (1 - rho) - s amp^2 rho
    std::optional<double> gamma1;  // rad/s, full density-matrix models only
    std::optional<double> gamma3;  // rad/s, full four-level model only

    /// Largest absorption coefficient the field can see (alpha0 or alpha~0).
    double max_absorption() const;

    bool operator==(const MediumSpec&) const = default;
};

}  // namespace slowlight
