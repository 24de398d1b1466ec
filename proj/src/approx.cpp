#include "oment/approx.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

namespace {

// The formulas are stated for kappa1 = kappa2, G1 = G2; asymmetric inputs
// evaluate with the cavity-1 values and get flagged.
struct EqualParams {
    double gamma, kappa, g;
    std::vector<std::string> warnings;
};

EqualParams reduce(const SystemParams& p) {
    p.validate();
    EqualParams e{p.gamma, p.kappa1, p.g1, {}};
    if (std::abs(p.kappa1 - p.kappa2) > 1e-9 * std::max(p.kappa1, p.kappa2))
        e.warnings.push_back("approximation derived for kappa1 = kappa2; using kappa1");
    if (std::abs(p.g1 - p.g2) > 1e-9 * std::max(p.g1, p.g2))
        e.warnings.push_back("approximation derived for G1 = G2; using G1");
    return e;
}

void warn(ApproxValue& v, const std::string& msg) {
    v.in_regime = false;
    v.warnings.push_back(msg);
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::resonant_plateau: return "resonant-plateau";
        case Regime::small_band_weak: return "small-band-weak";
        case Regime::small_band_strong: return "small-band-strong";
        case Regime::large_band_strong: return "large-band-strong";
    }
    throw InvalidParams("unknown regime");
}

ApproxValue en_resonant_plateau(const SystemParams& p, const FilterSpec& filt) {
    EqualParams e = reduce(p);
    ApproxValue v{std::numbers::pi * e.gamma / (2.0 * filt.bandwidth), true,
                  std::move(e.warnings)};
    const double w = filt.center;
    if (!(0.0 <= w && w <= 0.5 * filt.bandwidth))
        warn(v, "outside plateau window 0 <= omega <= sigma/2");
    if (!(filt.bandwidth <= e.kappa / 10.0))
        warn(v, "plateau form assumes sigma << kappa (sigma <= kappa/10)");
    return v;
}

ApproxValue en_small_band_weak(const SystemParams& p, const FilterSpec& filt) {
    EqualParams e = reduce(p);
    const double g = e.g, k = e.kappa, s = filt.bandwidth, w = filt.center;
    const double g4 = g * g * g * g;
    const double num = 20.0 * g4 * s * s + 3.0 * k * k * w * w * w * w;
    const double den = 3.0 * w * w * (64.0 * g4 + std::numbers::sqrt2 * k * k * w * w);
    ApproxValue v{-std::log(num / den), true, std::move(e.warnings)};
    if (!(0.5 * s < w && w < 0.5 * k)) warn(v, "outside window sigma/2 < omega < kappa/2");
    if (!(g < k)) warn(v, "weak-coupling form assumes G < kappa");
    if (!(s <= k / 10.0)) warn(v, "small-bandwidth form assumes sigma << kappa");
    return v;
}

ApproxValue en_small_band_strong(const SystemParams& p, const FilterSpec& filt) {
    EqualParams e = reduce(p);
    const double g = e.g, k = e.kappa, s = filt.bandwidth, w = filt.center;
    const double g4 = g * g * g * g, g8 = g4 * g4;
    const double w4 = w * w * w * w;
    const double num = g8 * s * s * s * s + g4 * s * s * w4 * k * k +
                       2.0 * std::pow(w, 10) * k * k;
    const double den = 144.0 * g8 * w4;
    ApproxValue v{-0.5 * std::log(num / den), true, std::move(e.warnings)};
    if (!(0.5 * s < w && w < 0.5 * k)) warn(v, "outside window sigma/2 < omega < kappa/2");
    if (!(g > k)) warn(v, "strong-coupling form assumes G > kappa");
    if (!(s <= k / 10.0)) warn(v, "small-bandwidth form assumes sigma << kappa");
    return v;
}

ApproxValue en_large_band_strong(const SystemParams& p, const FilterSpec& filt) {
    EqualParams e = reduce(p);
    const double g = e.g, k = e.kappa, w = filt.center;
    const double g2 = g * g, g4 = g2 * g2, k2 = k * k;
    const double w2 = w * w, w4 = w2 * w2, w8 = w4 * w4;
    const double num = 3.0 * g4 * k2 * (w2 + 0.75 * k2) + g2 * k2 * w4 + w8;
    const double den = 3.0 * g4 * k2 * k2 + 2.0 * g2 * w2 * k2 * k2 + w8;
    ApproxValue v{std::log(std::numbers::sqrt2 * num / den), true, std::move(e.warnings)};
    if (!(std::abs(filt.bandwidth - k) <= 1e-6 * k))
        warn(v, "large-bandwidth form assumes sigma = kappa");
    if (!(g > k)) warn(v, "strong-coupling form assumes G > kappa");
    if (!(0.5 * k <= w && w <= 7.0 * k)) warn(v, "outside window kappa/2 <= omega <= 7 kappa");
    return v;
}

ApproxValue omega_opt(const SystemParams& p, const FilterSpec& filt, Regime regime) {
    EqualParams e = reduce(p);
    const double g = e.g, k = e.kappa, s = filt.bandwidth;
    ApproxValue v{0.0, true, std::move(e.warnings)};
    switch (regime) {
        case Regime::resonant_plateau:
            v.value = 0.25 * s;
            v.warnings.push_back("plateau entanglement is flat in omega; midpoint returned");
            break;
        case Regime::small_band_weak:
            v.value = std::pow(6.0, 0.25) * g * std::sqrt(s / k);
            if (!(g < k)) warn(v, "weak-coupling optimum assumes G < kappa");
            break;
        case Regime::small_band_strong: {
            const double g8 = std::pow(g, 8);
            v.value = std::pow(g8 * s * s * s * s / (3.0 * k * k), 0.2);
            if (!(g > k)) warn(v, "strong-coupling optimum assumes G > kappa");
            if (v.value >= 0.5 * k)
                warn(v,
                     "printed optimum falls outside its validity window omega < kappa/2; "
                     "the stationary point of the printed E_n is the 1/10th root");
            break;
        }
        case Regime::large_band_strong:
            v.value = std::sqrt(g * k);
            if (!(g > k)) warn(v, "strong-coupling optimum assumes G > kappa");
            break;
        default:
            throw InvalidParams("unknown regime");
    }
    return v;
}

ApproxValue tau_opt(const SystemParams& p, double omega) {
    EqualParams e = reduce(p);
    ApproxValue v{0.0, true, std::move(e.warnings)};
    double w = omega;
    if (w < 0.0) {
        w = -w;
        v.warnings.push_back("negative omega mapped to |omega| (spectra are even)");
    }
    const double g2 = e.g * e.g, k = e.kappa;
    if (w >= 0.5 * k) {
        v.value = 3.0 * g2 * k * (w * w - k * k / 8.0) / (g2 * g2 * k * k + std::pow(w, 6));
    } else {
        v.value = std::numbers::pi * k / (2.0 * (2.0 + std::numbers::pi) * g2);
    }
    return v;
}

std::optional<Regime> match_regime(const SystemParams& p, const FilterSpec& filt) {
    if (std::abs(p.kappa1 - p.kappa2) > 1e-9 * std::max(p.kappa1, p.kappa2) ||
        std::abs(p.g1 - p.g2) > 1e-9 * std::max(p.g1, p.g2))
        return std::nullopt;
    const double k = p.kappa1, g = p.g1, s = filt.bandwidth, w = filt.center;
    if (std::abs(s - k) <= 1e-6 * k && g > k && 0.5 * k <= w && w <= 7.0 * k)
        return Regime::large_band_strong;
    if (s <= k / 10.0) {
        if (0.0 <= w && w <= 0.5 * s) return Regime::resonant_plateau;
        if (0.5 * s < w && w < 0.5 * k) return g < k ? Regime::small_band_weak
                                                     : Regime::small_band_strong;
    }
    return std::nullopt;
}

ApproxValue en_approx(const SystemParams& p, const FilterSpec& filt, Regime regime) {
    switch (regime) {
        case Regime::resonant_plateau: return en_resonant_plateau(p, filt);
        case Regime::small_band_weak: return en_small_band_weak(p, filt);
        case Regime::small_band_strong: return en_small_band_strong(p, filt);
        case Regime::large_band_strong: return en_large_band_strong(p, filt);
    }
    throw InvalidParams("unknown regime");
}

}  // namespace oment
