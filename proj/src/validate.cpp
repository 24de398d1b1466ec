#include "oment/validate.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "oment/entanglement.hpp"
#include "oment/errors.hpp"
#include "oment/model.hpp"
#include "oment/scattering.hpp"

namespace oment {

bool ValidationReport::all_passed() const {
    for (const auto& g : groups)
        if (!g.passed) return false;
    return true;
}

double DrawRng::uniform() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double DrawRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double DrawRng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

namespace {

// Random stable parameter set with moderate cooperativity: metric residuals
// scale like eps * |s|^2 and |s| ~ C near resonance, so the 1e-10 absolute
// tolerance needs C capped around 1e3.
SystemParams draw_stable_params(DrawRng& rng) {
    for (int tries = 0; tries < 200; ++tries) {
        SystemParams p{};
        p.gamma = rng.log_uniform(1e-2, 1.0);
        p.kappa1 = rng.log_uniform(1e1, 1e3);
        p.kappa2 = rng.log_uniform(1e1, 1e3);
        p.g1 = rng.log_uniform(1e-1, 2e1);
        p.g2 = rng.log_uniform(1e-1, 2e1);
        if (std::max(p.cooperativity1(), p.cooperativity2()) > 1e3) continue;
        if (!is_stable_eigen(p)) continue;
        return p;
    }
    throw NumericsError("could not draw a stable parameter set");
}

ValidationGroup check_metric_preservation(DrawRng rng) {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const SystemParams p = draw_stable_params(rng);
        const double mag = rng.log_uniform(1e-3 * p.gamma, 1e2 * std::max(p.kappa1, p.kappa2));
        const double omega = rng.uniform() < 0.5 ? -mag : mag;
        const Mat3 s = scattering_matrix(p, omega).s;
        const double eta[3] = {1.0, 1.0, -1.0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx acc = 0.0;
                for (int l = 0; l < 3; ++l) acc += s(i, l) * eta[l] * std::conj(s(j, l));
                if (i == j) acc -= eta[i];
                worst = std::max(worst, std::abs(acc));
            }
    }
    std::ostringstream os;
    os << "max |s eta s^dag - eta| = " << worst << " over 1000 draws";
    return {"metric-preservation", worst <= 1e-10, os.str()};
}

// Physical triple: |m| = u sqrt(nn_min (nn_max + 1)), u < 1. Populations stay
// below 1e3 and u below 1 - 1e-4: deeper saturation at large nn pushes the
// triple-based routes past double precision (the band-exact route covers it).
Correlators draw_triple(DrawRng& rng) {
    Correlators c;
    c.nn1 = rng.log_uniform(1e-3, 1e3);
    c.nn2 = rng.log_uniform(1e-3, 1e3);
    const double u = 1.0 - rng.log_uniform(1e-4, 1.0);
    const double bound = std::min(c.nn1 * (c.nn2 + 1.0), c.nn2 * (c.nn1 + 1.0));
    const double phase = rng.uniform(0.0, 6.283185307179586);
    c.m = std::polar(u * std::sqrt(bound), phase);
    return c;
}

ValidationGroup check_route_equivalence(DrawRng rng) {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Correlators c = draw_triple(rng);
        const double en_closed = log_negativity_closed(tmst_from_correlators(c)).en;
        const double en_cov = log_negativity_covariance(c).en;
        const double simplified =
            std::max(0.0, -std::log(c.nn1 + c.nn2 + 1.0 -
                                    std::hypot(c.nn1 - c.nn2, 2.0 * std::abs(c.m))));
        worst = std::max({worst, std::abs(en_closed - en_cov),
                          std::abs(en_closed - simplified)});
    }
    std::ostringstream os;
    os << "max route difference = " << worst << " over 1000 triples";
    return {"route-equivalence", worst < 1e-9, os.str()};
}

// Equal-kappa equal-G zero-temperature cross density against its explicit
// rational closed form on a log grid.
ValidationGroup check_cross_spectrum_closed_form() {
    const SystemParams p{1.0, 1e5, 1e5, 1e6, 1e6, 0.0, 0.0, 0.0};
    const double g = p.gamma, k = p.kappa1, G = p.g1;
    double worst = 0.0;
    const double lo = 1e-2 * g, hi = 1e2 * k;
    for (int i = 0; i < 200; ++i) {
        const double w = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 199.0);
        const cplx m = spectral_point(p, w).m;
        const double k2w = k * k + 4.0 * w * w;
        const cplx closed = -8.0 * G * G * k * (8.0 * G * G * k + cplx(g, 2.0 * w) * k2w) /
                            ((g * g + 4.0 * w * w) * k2w * k2w);
        worst = std::max(worst, std::abs(m - closed) / std::abs(closed));
    }
    std::ostringstream os;
    os << "max relative deviation = " << worst << " on 200-point log grid";
    return {"cross-spectrum-closed-form", worst <= 1e-8, os.str()};
}

// e^{-i Omega tau} leaves |<D1 D2>| unchanged to first order once the band
// is narrow: sigma |tau| <= 1e-2 keeps the relative change under 1e-3.
ValidationGroup check_delay_invariance() {
    const SystemParams p{1.0, 1e5, 1e5, 1e4, 1e4, 0.0, 0.0, 0.0};
    const FilterSpec base{2000.0, 10.0, 0.0, 0.0};
    const BandEvaluator ev(p, base);
    const double m0 = std::abs(ev.cross_correlator(0.0));
    double worst = 0.0;
    for (double tau : {1e-3, -1e-3, 5e-4, -2.5e-4}) {
        const double mt = std::abs(ev.cross_correlator(tau));
        worst = std::max(worst, std::abs(mt - m0) / m0);
    }
    std::ostringstream os;
    os << "max relative |m| change = " << worst << " for sigma|tau| <= 1e-2";
    return {"delay-invariance", worst < 1e-3, os.str()};
}

// The closed-form stability criterion is asymptotic; the agreement grid
// stays in its derivation regime (gamma <= 1e-3 kappa, C >= 1e2, couplings
// at least 10x the linewidths) and 10% away from the decision boundary,
// where the exact Routh-Hurwitz conditions carry gamma- and kappa-sized
// corrections the formula drops.
ValidationGroup check_stability_agreement(DrawRng rng) {
    int checked = 0, mismatches = 0;
    while (checked < 1000) {
        SystemParams p{};
        p.kappa1 = rng.log_uniform(1e2, 1e4);
        p.kappa2 = rng.uniform() < 0.5 ? p.kappa1 : rng.log_uniform(1e2, 1e4);
        const double kmax = std::max(p.kappa1, p.kappa2);
        p.gamma = rng.log_uniform(1e-6 * kmax, 1e-3 * std::min(p.kappa1, p.kappa2));
        p.g1 = rng.log_uniform(10.0 * kmax, 1e3 * kmax);
        p.g2 = rng.log_uniform(10.0 * kmax, 1e3 * kmax);
        if (std::min(p.cooperativity1(), p.cooperativity2()) < 1e2) continue;
        const double ratio = std::max(p.kappa1 / p.kappa2, p.kappa2 / p.kappa1);
        const double decision = (p.g1 * p.g1) / (p.g2 * p.g2);
        if (std::abs(std::log(decision / ratio)) < std::log(1.1)) continue;
        ++checked;
        if (is_stable_closed_form(p) != is_stable_eigen(p)) ++mismatches;
    }
    std::ostringstream os;
    os << mismatches << " mismatches on 1000 in-regime points";
    return {"stability-agreement", mismatches == 0, os.str()};
}

}  // namespace

ValidationReport run_validation(std::uint64_t seed) {
    ValidationReport r;
    auto guarded = [&](const char* name, auto&& fn) {
        try {
            r.groups.push_back(fn());
        } catch (const Error& e) {
            r.groups.push_back({name, false, std::string("aborted: ") + e.what()});
        }
    };
    guarded("metric-preservation", [&] { return check_metric_preservation(DrawRng(seed)); });
    guarded("route-equivalence", [&] { return check_route_equivalence(DrawRng(seed + 1)); });
    guarded("cross-spectrum-closed-form", [] { return check_cross_spectrum_closed_form(); });
    guarded("delay-invariance", [] { return check_delay_invariance(); });
    guarded("stability-agreement",
            [&] { return check_stability_agreement(DrawRng(seed + 2)); });
    return r;
}

}  // namespace oment
