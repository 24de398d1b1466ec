#pragma once

#include <memory>

#include "oment/model.hpp"
#include "oment/quadrature.hpp"
#include "oment/scattering.hpp"

namespace oment {

/// Rectangular filter defining the two output temporal modes. Mode 1 selects
/// the band [center - bandwidth/2, center + bandwidth/2]; mode 2 the mirror
/// band centered at -center. Only the relative delay tau1 - tau2 enters the
/// cross correlator; tau2 = 0 by convention.
struct FilterSpec {
    double center;
    double bandwidth;  ///< > 0
    double tau1 = 0.0;
    double tau2 = 0.0;

    double tau() const { return tau1 - tau2; }
    void validate() const;
};

/// Band-integrated second moments of the two filtered output modes.
struct Correlators {
    double nn1;  ///< <D1^dag D1> >= 0
    double nn2;  ///< <D2^dag D2> >= 0
    cplx m;      ///< <D1 D2>, delay phase included
};

/// Correlators plus the two auxiliary band integrals that make the
/// log-negativity of near-saturated states computable in double precision:
///
///   gram    = (1/sigma^2) [ Int|f|^2 Int|g|^2 - |Int f g*|^2 ]  >= 0,
///             evaluated as the everywhere-positive double integral
///             (1/2) IntInt |f(x)g(y) - f(y)g(x)|^2 dx dy / sigma^2
///   pop_gap = nn2 - nn1 = (1/sigma) Int |s13|^2  >= 0
///
/// with f = e^{-i Omega tau} s12(Omega), g = s22(Omega) (creation-port
/// column). Both identities are exact at zero bath temperature, where
/// (2 nn1 + 1)(2 nn2 + 1) - 4|m|^2 = 4 gram + 2 pop_gap + 1 without any
/// cancellation. exact_zero_t marks their validity.
struct BandMoments {
    Correlators corr;
    double gram = 0.0;
    double pop_gap = 0.0;
    bool exact_zero_t = false;
};

/// Integrates the spectral densities over the filter band. Throws
/// InstabilityError on an unstable system, QuadratureError on non-convergence.
/// Bandwidths below 1e-6 * gamma degenerate to the midpoint spectral values.
Correlators band_correlators(const SystemParams& p, const FilterSpec& filt);

/// band_correlators plus the auxiliary integrals (see BandMoments).
BandMoments band_moments(const SystemParams& p, const FilterSpec& filt);

/// Caching band-integration engine for repeated evaluations over the same
/// band, e.g. scanning the delay at fixed filter. Scattering amplitudes are
/// evaluated once per frequency node and shared between the plain integrals,
/// the delay re-weighting, and the 2D gram quadrature.
class BandEvaluator {
public:
    BandEvaluator(const SystemParams& p, const FilterSpec& filt);
    ~BandEvaluator();
    BandEvaluator(BandEvaluator&&) noexcept;
    BandEvaluator& operator=(BandEvaluator&&) noexcept;

    /// Moments at the filter's own delay.
    const BandMoments& moments() const;

    /// Cross correlator at an arbitrary delay on the frozen adaptive grid of
    /// the tau = 0 run. Grid bias is identical across tau values, which keeps
    /// |m(tau)| comparisons meaningful at optimizer resolution.
    cplx cross_correlator(double tau) const;

    /// Full moments re-evaluated at an arbitrary delay (fresh gram integral).
    BandMoments moments_at(double tau) const;

    const SystemParams& params() const;
    const FilterSpec& filter() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace oment
