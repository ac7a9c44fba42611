// Real-vector layout of the full density-matrix states and their affine
// generators x' = M(omega) x + b(omega), built from the rate functions so the
// equations of motion are written exactly once (media.cpp).

#pragma once

#include <Eigen/Dense>

#include "slowlight/media.hpp"

namespace slowlight::detail {

template <class State>
struct FullLayout;

template <>
struct FullLayout<FullThreeLevelState> {
    static constexpr int size = 4;  // rho_gg, rho_22, Re rho_1g, Im rho_1g
    using Vector = Eigen::Matrix<double, size, 1>;

    static Vector pack(const FullThreeLevelState& s) {
        return Vector(s.rho_gg, s.rho_22, s.rho_1g.real(), s.rho_1g.imag());
    }
    static FullThreeLevelState unpack(const Vector& x) {
        FullThreeLevelState s;
        s.rho_gg = x[0];
        s.rho_22 = x[1];
        s.rho_11 = 1.0 - x[0] - x[1];
        s.rho_1g = {x[2], x[3]};
        return s;
    }
    // Derivatives: rho_11 is not an independent coordinate.
    static Vector pack_rate(const FullThreeLevelState& d) { return pack(d); }
    static FullThreeLevelState rates(const FullThreeLevelState& s, double omega, const MediumSpec& m) {
        return full_three_level_rates(s, omega, m);
    }
};

template <>
struct FullLayout<FullFourLevelState> {
    static constexpr int size = 7;  // rho_gg, rho_22, rho_33, rho_1g, rho_32 (re, im)
    using Vector = Eigen::Matrix<double, size, 1>;

    static Vector pack(const FullFourLevelState& s) {
        Vector x;
        x << s.rho_gg, s.rho_22, s.rho_33, s.rho_1g.real(), s.rho_1g.imag(), s.rho_32.real(),
            s.rho_32.imag();
        return x;
    }
    static FullFourLevelState unpack(const Vector& x) {
        FullFourLevelState s;
        s.rho_gg = x[0];
        s.rho_22 = x[1];
        s.rho_33 = x[2];
        s.rho_11 = 1.0 - x[0] - x[1] - x[2];
        s.rho_1g = {x[3], x[4]};
        s.rho_32 = {x[5], x[6]};
        return s;
    }
    static Vector pack_rate(const FullFourLevelState& d) { return pack(d); }
    static FullFourLevelState rates(const FullFourLevelState& s, double omega, const MediumSpec& m) {
        return full_four_level_rates(s, omega, m);
    }
};

/// x' = M x + b at fixed drive.
template <class State>
struct AffineGenerator {
    using Layout = FullLayout<State>;
    using Vector = typename Layout::Vector;
    using Matrix = Eigen::Matrix<double, Layout::size, Layout::size>;

    Matrix M;
    Vector b;

    static AffineGenerator at(double omega, const MediumSpec& medium) {
        AffineGenerator g;
        g.b = Layout::pack_rate(Layout::rates(Layout::unpack(Vector::Zero()), omega, medium));
        for (int j = 0; j < Layout::size; ++j) {
            const Vector e = Vector::Unit(j);
            g.M.col(j) = Layout::pack_rate(Layout::rates(Layout::unpack(e), omega, medium)) - g.b;
        }
        return g;
    }
};

/// The generator is affine in omega; precompute the two pieces once.
template <class State>
struct DriveFamily {
    using Gen = AffineGenerator<State>;
    Gen base;   // omega = 0
    Gen slope;  // d/d omega

    DriveFamily(const MediumSpec& medium) {
        base = Gen::at(0.0, medium);
        const Gen one = Gen::at(1.0, medium);
        slope.M = one.M - base.M;
        slope.b = one.b - base.b;
    }

    Gen at(double omega) const {
        Gen g;
        g.M = base.M + omega * slope.M;
        g.b = base.b + omega * slope.b;
        return g;
    }
};

}  // namespace slowlight::detail
