#pragma once

#include <array>

#include "oment/correlators.hpp"

namespace oment {

/// Equivalent two-mode squeezed thermal state: the filtered output pair is
/// fully characterized by two thermal populations and one squeezing
/// parameter. a_sum keeps A = nn1 + nn2 + 1 for the identity
/// (nbar1 + nbar2 + 1) cosh(2 r12) = A.
struct TmstParams {
    double nbar1;
    double nbar2;
    double r12;
    double a_sum;
};

enum class EnMethod { closed_form, covariance, band_exact };

struct EntanglementResult {
    double en;        ///< logarithmic negativity, >= 0 (clamped at separability)
    double nu_tilde;  ///< smallest partial-transpose symplectic eigenvalue
    EnMethod method;
};

/// 4x4 covariance matrix over quadratures (X1, P1, X2, P2) with
/// X = (D + D^dag)/sqrt(2), P = (D - D^dag)/(i sqrt(2)); vacuum variance 1/2.
struct CovarianceMatrix {
    std::array<double, 16> v{};

    double& at(int i, int j) { return v[static_cast<std::size_t>(4 * i + j)]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(4 * i + j)]; }

    static CovarianceMatrix from_correlators(const Correlators& c);

    /// Smallest symplectic eigenvalue (no partial transpose); physical
    /// states satisfy >= 1/2.
    double symplectic_min() const;
};

/// Inversion of the squeezed-thermal parametrization:
///   nbar_1,2 = (nn_1,2 - nn_2,1 - 1 + sqrt(A^2 - 4|m|^2)) / 2
///   r12      = arctanh(2|m| / A) / 2
/// Throws UnphysicalInput when 2|m| >= A or a population lands below
/// -1e-12 (values in [-1e-12, 0) clamp to zero).
TmstParams tmst_from_correlators(const Correlators& c);

/// Same parameters assembled from the cancellation-free band integrals;
/// exact at zero temperature for arbitrarily large populations.
TmstParams tmst_from_moments(const BandMoments& bm);

/// E_n = max(0, -ln(n_R - sqrt(n_R^2 - (1+2 nbar1)(1+2 nbar2)))) with
/// n_R = (nbar1 + nbar2 + 1) cosh(2 r12).
EntanglementResult log_negativity_closed(const TmstParams& t);

/// Standard Gaussian partial-transpose route through the covariance matrix.
EntanglementResult log_negativity_covariance(const Correlators& c);

/// Closed form evaluated through the positive band integrals:
///   2 nu~ = (4 gram + 2 pop_gap + 1) / (S + Q),
///   S = nn1 + nn2 + 1,  Q = sqrt(pop_gap^2 + 4 |m|^2).
/// Algebraically identical to the other two routes but free of the
/// near-saturation cancellation, which is worth ~ln(4 nn) nats of range.
/// Requires exact_zero_t; falls back to the closed form otherwise.
EntanglementResult log_negativity_band(const BandMoments& bm);

/// Convenience: band integration followed by the stable evaluation.
EntanglementResult log_negativity_band(const SystemParams& p, const FilterSpec& filt);

}  // namespace oment
