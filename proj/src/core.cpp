#include "slowlight/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slowlight {

std::size_t TimeGrid::index_of(double tau) const {
    const double k = std::round((tau - t_start) / dt);
    if (!(k > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(k), n - 1);
}

TimeGrid TimeGrid::refined(int levels) const {
    TimeGrid g = *this;
    for (int l = 0; l < levels; ++l) {
        g.dt *= 0.5;
        g.n = 2 * (g.n - 1) + 1;
    }
    return g;
}

Envelope::Envelope(TimeGrid grid, std::vector<double> amp)
    : grid_(grid), amp_(std::move(amp)) {
    if (amp_.size() != grid_.n)
        throw std::invalid_argument("envelope length does not match grid");
    for (double a : amp_) {
        if (!std::isfinite(a) || a < 0.0)
            throw std::invalid_argument("envelope amplitudes must be finite and non-negative");
    }
}

double Envelope::energy() const {
    if (amp_.size() < 2) return 0.0;
    double sum = 0.5 * (amp_.front() * amp_.front() + amp_.back() * amp_.back());
    for (std::size_t i = 1; i + 1 < amp_.size(); ++i) sum += amp_[i] * amp_[i];
    return sum * grid_.dt;
}

std::string_view to_string(MediumModel model) {
    switch (model) {
        case MediumModel::ThreeLevelSaturable: return "three_level";
        case MediumModel::TwoLevelBloch: return "two_level";
        case MediumModel::FourLevelReverse: return "four_level";
    }
    return "unknown";
}

double MediumSpec::max_absorption() const {
    if (model == MediumModel::FourLevelReverse) return alpha0 * std::max(1.0, alpha_ratio);
    return alpha0;
}

}  // namespace slowlight
