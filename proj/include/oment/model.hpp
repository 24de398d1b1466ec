#pragma once

#include <array>

#include "oment/linalg.hpp"

namespace oment {

/// Physical rates and couplings of the three-mode system: one mechanical
/// resonator (damping gamma) coupled to a cooling cavity (kappa1, G1) and a
/// parametrically driven cavity (kappa2, G2), plus bath thermal populations.
///
/// Rates are in arbitrary but mutually consistent frequency units; every
/// downstream quantity is scale invariant under a common rescaling.
struct SystemParams {
    double gamma;   ///< mechanical damping rate, > 0
    double kappa1;  ///< cavity-1 damping rate, > 0
    double kappa2;  ///< cavity-2 damping rate, > 0
    double g1;      ///< beam-splitter coupling, >= 0
    double g2;      ///< parametric coupling, >= 0
    double nm = 0.0;  ///< mechanical bath population, >= 0
    double n1 = 0.0;  ///< cavity-1 bath population, >= 0
    double n2 = 0.0;  ///< cavity-2 bath population, >= 0

    /// Throws InvalidParams if any rate is non-positive, any coupling or
    /// bath population negative, or any value non-finite.
    void validate() const;

    double cooperativity1() const { return 4.0 * g1 * g1 / (gamma * kappa1); }
    double cooperativity2() const { return 4.0 * g2 * g2 / (gamma * kappa2); }

    bool zero_temperature() const { return nm == 0.0 && n1 == 0.0 && n2 == 0.0; }
};

/// Linear generator of the Langevin dynamics dv/dt = a v - diag(noise) v_in.
///
/// Mode ordering is fixed throughout the library as (b, d1, d2^dag): the
/// third slot is a creation operator, which is what carries the parametric
/// structure (and flips the sign of the metric's third entry).
struct DriftMatrix {
    Mat3 a;
    std::array<double, 3> noise;  ///< sqrt(gamma), sqrt(kappa1), sqrt(kappa2)
};

/// Assembles the drift matrix from validated parameters.
DriftMatrix build_drift_matrix(const SystemParams& p);

/// Asymptotic stability criterion: G1^2/G2^2 > max(k1/k2, k2/k1) for
/// unequal kappas; always stable for equal kappas when G2 <= G1. Derived
/// under strong cooperativity with kappa_i >> gamma; outside that regime it
/// can disagree with the spectrum (is_stable_eigen is authoritative).
/// Kappas compare equal within 1e-12 * max(kappa1, kappa2).
bool is_stable_closed_form(const SystemParams& p);

/// Spectrum of the drift matrix with a stability verdict.
struct StabilitySpectrum {
    std::array<cplx, 3> eigenvalues;
    double max_real;  ///< largest eigenvalue real part
    bool stable;      ///< max_real < -margin, margin = 1e-12 * max rate
    bool marginal;    ///< |max_real| <= margin; reported unstable
};

StabilitySpectrum stability_spectrum(const SystemParams& p);

/// True iff every drift-matrix eigenvalue has strictly negative real part.
/// Marginal spectra count as unstable.
bool is_stable_eigen(const SystemParams& p);

}  // namespace oment
