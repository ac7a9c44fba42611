// oracles.hpp - independent reference solutions used only by the tests.
// Nothing here calls into the solver; each oracle is a closed form, a
// bisection, or a brute-force integrator written from the model equations.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

/// Energy transmission of a weak pulse: exp(-alpha0 L).
inline double beer_lambert_energy(double depth) { return std::exp(-depth); }

/// Output intensity of a CW beam through a saturable absorber:
/// dI/dz = -alpha0 I / (1 + s I)  =>  ln(I_out/I_in) + s (I_out - I_in) = -alpha0 L.
inline double cw_saturable_output(double i_in, double s, double depth) {
    auto g = [&](double i) { return std::log(i / i_in) + s * (i - i_in) + depth; };
    // I_in e^{-depth} <= I_out <= I_in brackets the root.
    double lo = i_in * std::exp(-depth), hi = i_in;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Constant drive on d(rho)/dT = (1 - rho) - s w^2 rho, exact solution.
inline double saturable_closed_form(double rho0, double w, double s, double T) {
    const double rate = 1.0 + s * w * w;
    const double eq = 1.0 / rate;
    return eq + (rho0 - eq) * std::exp(-rate * T);
}

/// Classical RK4 for a scalar autonomous ODE.
inline double rk4(const std::function<double(double)>& f, double y, double t_end, int steps) {
    const double h = t_end / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(y);
        const double k2 = f(y + 0.5 * h * k1);
        const double k3 = f(y + 0.5 * h * k2);
        const double k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return y;
}

// --- three-level Lindblad master equation ---------------------------------------
// Basis order |g>, |e1>, |e2>. H = -Omega (|e1><g| + |g><e1|), jump operators
// sqrt(2 G1)|e2><e1| and sqrt(2 G2)|g><e2|. Every matrix element is evolved
// independently, so Hermiticity is a result, not an assumption.

using Mat3 = std::array<std::array<std::complex<double>, 3>, 3>;

inline Mat3 lindblad_rhs(const Mat3& r, double omega, double g1, double g2) {
    constexpr std::complex<double> I{0.0, 1.0};
    Mat3 H{};
    H[1][0] = H[0][1] = -omega;
    Mat3 d{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::complex<double> c = 0.0;
            for (int k = 0; k < 3; ++k) c += H[a][k] * r[k][b] - r[a][k] * H[k][b];
            d[a][b] = -I * c;
        }
    // L1 = sqrt(2 g1)|2><1| : feeds r22, damps row/column 1 at g1.
    // L2 = sqrt(2 g2)|0><2| : feeds r00, damps row/column 2 at g2.
    const std::array<double, 3> half_loss{0.0, g1, g2};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) d[a][b] -= (half_loss[a] + half_loss[b]) * r[a][b];
    d[2][2] += 2.0 * g1 * r[1][1];
    d[0][0] += 2.0 * g2 * r[2][2];
    return d;
}

inline Mat3 lindblad_step(const Mat3& r, double omega, double g1, double g2, double h) {
    auto axpy = [](const Mat3& x, const Mat3& k, double s) {
        Mat3 y = x;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) y[a][b] += s * k[a][b];
        return y;
    };
    const Mat3 k1 = lindblad_rhs(r, omega, g1, g2);
    const Mat3 k2 = lindblad_rhs(axpy(r, k1, 0.5 * h), omega, g1, g2);
    const Mat3 k3 = lindblad_rhs(axpy(r, k2, 0.5 * h), omega, g1, g2);
    const Mat3 k4 = lindblad_rhs(axpy(r, k3, h), omega, g1, g2);
    Mat3 out = r;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out[a][b] += h / 6.0 * (k1[a][b] + 2.0 * k2[a][b] + 2.0 * k3[a][b] + k4[a][b]);
    return out;
}

}  // namespace oracles
