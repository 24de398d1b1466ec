#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oment/correlators.hpp"
#include "oment/model.hpp"

namespace oment {

/// Validity regimes of the closed-form entanglement approximations, in the
/// equal-kappa equal-G configuration with gamma much smaller than everything.
enum class Regime {
    resonant_plateau,   ///< 0 <= omega <= sigma/2, sigma << kappa
    small_band_weak,    ///< sigma/2 < omega < kappa/2, G < kappa
    small_band_strong,  ///< sigma/2 < omega < kappa/2, G > kappa
    large_band_strong,  ///< sigma = kappa, G > kappa, kappa/2 <= omega <= 7 kappa
};

/// Closed-form value plus regime bookkeeping. Violated validity conditions
/// produce warnings, never errors: the formulas evaluate everywhere.
struct ApproxValue {
    double value;
    bool in_regime;
    std::vector<std::string> warnings;
};

/// E_n ~ pi gamma / (2 sigma); flat in omega and G on the plateau.
ApproxValue en_resonant_plateau(const SystemParams& p, const FilterSpec& filt);

/// E_n ~ -ln[(20 G^4 s^2 + 3 k^2 w^4) / (3 w^2 (64 G^4 + sqrt(2) k^2 w^2))]
ApproxValue en_small_band_weak(const SystemParams& p, const FilterSpec& filt);

/// E_n ~ -(1/2) ln[(G^8 s^4 + G^4 s^2 w^4 k^2 + 2 w^10 k^2) / (144 G^8 w^4)]
ApproxValue en_small_band_strong(const SystemParams& p, const FilterSpec& filt);

/// E_n ~ ln[sqrt(2) (3 G^4 k^2 (w^2 + 3k^2/4) + G^2 k^2 w^4 + w^8)
///                 / (3 G^4 k^4 + 2 G^2 w^2 k^4 + w^8)]
ApproxValue en_large_band_strong(const SystemParams& p, const FilterSpec& filt);

/// Optimal filter center frequency for the given regime, as printed:
///   small_band_weak:   6^{1/4} G sqrt(sigma/kappa)
///   small_band_strong: (G^8 sigma^4 / (3 kappa^2))^{1/5}
///   large_band_strong: sqrt(G kappa)
///   resonant_plateau:  flat; returns the interval midpoint sigma/4 with a
///                      flatness warning.
/// The small_band_strong form lands outside its own validity window for
/// strong coupling; the conflict is surfaced through a warning (the
/// stationary point of the printed E_n expression is the 1/10th root).
ApproxValue omega_opt(const SystemParams& p, const FilterSpec& filt, Regime regime);

/// Optimal delay between the two output modes (large-bandwidth regime):
///   3 G^2 k (w^2 - k^2/8) / (G^4 k^2 + w^6)   for w >= k/2
///   pi k / (2 (2 + pi) G^2)                   for 0 <= w < k/2
/// Negative omega uses |omega| (spectra are even), flagged.
ApproxValue tau_opt(const SystemParams& p, double omega);

/// Regime matching for sweep annotation: the regime whose validity window
/// contains the configuration, if any.
std::optional<Regime> match_regime(const SystemParams& p, const FilterSpec& filt);

/// Approximation value by regime tag.
ApproxValue en_approx(const SystemParams& p, const FilterSpec& filt, Regime regime);

const char* regime_name(Regime r);

}  // namespace oment
