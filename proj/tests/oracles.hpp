// Shared test oracles, independent of the implementation paths they check.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "oment/model.hpp"

namespace oracle {

// Routh-Hurwitz conditions on the characteristic cubic of the drift matrix,
// lambda^3 + c2 l^2 + c1 l + c0. Derived by hand from the 3x3 determinant;
// shares no code with the Eigen-based spectrum.
inline bool routh_hurwitz_stable(const oment::SystemParams& p) {
    const double c2 = 0.5 * (p.gamma + p.kappa1 + p.kappa2);
    const double c1 = 0.25 * (p.gamma * p.kappa1 + p.gamma * p.kappa2 + p.kappa1 * p.kappa2) +
                      p.g1 * p.g1 - p.g2 * p.g2;
    const double c0 = 0.125 * p.gamma * p.kappa1 * p.kappa2 +
                      0.5 * (p.g1 * p.g1 * p.kappa2 - p.g2 * p.g2 * p.kappa1);
    return c2 > 0.0 && c0 > 0.0 && c2 * c1 > c0;
}

// Real-cubic roots (the drift matrix characteristic polynomial has real
// coefficients) via the trigonometric/Cardano branch split.
inline std::array<std::complex<double>, 3> drift_eigenvalues_cubic(
    const oment::SystemParams& p) {
    const double a2 = 0.5 * (p.gamma + p.kappa1 + p.kappa2);
    const double a1 = 0.25 * (p.gamma * p.kappa1 + p.gamma * p.kappa2 + p.kappa1 * p.kappa2) +
                      p.g1 * p.g1 - p.g2 * p.g2;
    const double a0 = 0.125 * p.gamma * p.kappa1 * p.kappa2 +
                      0.5 * (p.g1 * p.g1 * p.kappa2 - p.g2 * p.g2 * p.kappa1);
    // depressed cubic t^3 + pt + q, lambda = t - a2/3
    const double sh = a2 / 3.0;
    const double pc = a1 - a2 * a2 / 3.0;
    const double qc = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const double disc = qc * qc / 4.0 + pc * pc * pc / 27.0;
    std::array<std::complex<double>, 3> roots;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-qc / 2.0 + sq);
        const double v = std::cbrt(-qc / 2.0 - sq);
        roots[0] = u + v - sh;
        const std::complex<double> im(0.0, std::sqrt(3.0) / 2.0 * (u - v));
        roots[1] = std::complex<double>(-(u + v) / 2.0 - sh, 0.0) + im;
        roots[2] = std::complex<double>(-(u + v) / 2.0 - sh, 0.0) - im;
    } else {
        const double r = std::sqrt(-pc * pc * pc / 27.0);
        const double phi = std::acos(-qc / (2.0 * r));
        const double mag = 2.0 * std::cbrt(r);
        for (int k = 0; k < 3; ++k)
            roots[static_cast<std::size_t>(k)] =
                mag * std::cos((phi + 2.0 * M_PI * k) / 3.0) - sh;
    }
    return roots;
}

// Composite-trapezoid reference for band integrals; graded grid packs half
// the points into the width-gamma structure around Omega = 0 when present.
inline std::complex<double> trapezoid(const std::function<std::complex<double>(double)>& f,
                                      double lo, double hi, int n) {
    std::complex<double> acc = 0.5 * (f(lo) + f(hi));
    const double h = (hi - lo) / (n - 1);
    for (int i = 1; i + 1 < n; ++i) acc += f(lo + h * i);
    return acc * h;
}

}  // namespace oracle
