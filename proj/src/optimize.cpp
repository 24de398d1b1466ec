#include "oment/optimize.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "oment/approx.hpp"
#include "oment/errors.hpp"

namespace oment {

namespace {

constexpr int kCoarsePoints = 64;
constexpr double kFlatThreshold = 1e-3;

struct ScalarMax {
    double x;
    double fx;
    int evaluations;
    double bracket_lo, bracket_hi;
    bool flat;
};

// coarse scan plus golden-section refinement of a scalar objective
ScalarMax scan_and_golden(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    if (!(lo < hi)) throw InvalidParams("bracket too small: requires lo < hi");

    int evals = 0;
    auto eval = [&](double x) {
        ++evals;
        return f(x);
    };

    std::vector<double> xs(kCoarsePoints), vs(kCoarsePoints);
    double vmax = -std::numeric_limits<double>::infinity(), vmin = -vmax;
    int best = 0;
    for (int i = 0; i < kCoarsePoints; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (kCoarsePoints - 1);
        const double v = eval(xs[static_cast<std::size_t>(i)]);
        vs[static_cast<std::size_t>(i)] = v;
        if (v > vmax) {
            vmax = v;
            best = i;
        }
        vmin = std::min(vmin, v);
    }

    if (vmax - vmin <= kFlatThreshold * std::max(std::abs(vmax), 1e-300)) {
        return {xs[static_cast<std::size_t>(best)], vmax, evals, lo, hi, true};
    }

    double a = xs[static_cast<std::size_t>(std::max(0, best - 1))];
    double b = xs[static_cast<std::size_t>(std::min(kCoarsePoints - 1, best + 1))];
    double bx = xs[static_cast<std::size_t>(best)], bv = vmax;

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = eval(c), fd = eval(d);
    auto note_best = [&](double x, double v) {
        if (v > bv) {
            bv = v;
            bx = x;
        }
    };
    note_best(c, fc);
    note_best(d, fd);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    while (std::abs(b - a) > tol * std::max(scale, 1e-300)) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
            note_best(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
            note_best(d, fd);
        }
    }
    return {bx, bv, evals, a, b, false};
}

int error_code_of(const Error& e) {
    if (dynamic_cast<const InstabilityError*>(&e)) return 2;
    if (dynamic_cast<const NumericsError*>(&e)) return 3;
    return 9;
}

// tau optimization over a prepared band; returns argmax of |m(tau)|
ScalarMax maximize_abs_m(const BandEvaluator& ev, double lo, double hi, double tol,
                         double seed) {
    ScalarMax sm = scan_and_golden(
        [&](double t) { return std::abs(ev.cross_correlator(t)); }, lo, hi, tol);
    if (seed >= lo && seed <= hi) {
        const double at_seed = std::abs(ev.cross_correlator(seed));
        ++sm.evaluations;
        if (at_seed > sm.fx) {
            sm.fx = at_seed;
            sm.x = seed;
        }
    }
    return sm;
}

}  // namespace

std::pair<double, double> default_tau_bracket(const SystemParams& p, double omega) {
    const double seed = tau_opt(p, omega).value;
    return {-seed, 10.0 * seed};
}

OptimumReport maximize_en_over_omega(const SystemParams& p, const FilterSpec& filt_template,
                                     double lo, double hi, double tol,
                                     std::optional<double> analytic_seed) {
    if (!(tol >= 1e-6)) throw InvalidParams("omega tolerance must be >= 1e-6 (relative)");
    auto en_at = [&](double w) {
        FilterSpec f = filt_template;
        f.center = w;
        try {
            return log_negativity_band(p, f).en;
        } catch (const QuadratureError& e) {
            std::ostringstream os;
            os << e.what() << " (objective at omega = " << w << ")";
            throw QuadratureError(os.str(), e.achieved_error, e.required_tol);
        }
    };

    ScalarMax sm = scan_and_golden(en_at, lo, hi, tol);
    OptimumReport r;
    r.analytic_seed = std::numeric_limits<double>::quiet_NaN();
    r.seed_value = std::numeric_limits<double>::quiet_NaN();
    if (analytic_seed && *analytic_seed >= lo && *analytic_seed <= hi) {
        r.analytic_seed = *analytic_seed;
        r.seed_value = en_at(*analytic_seed);
        ++sm.evaluations;
        if (r.seed_value > sm.fx) {
            sm.fx = r.seed_value;
            sm.x = *analytic_seed;
        }
    }
    r.argmax = sm.x;
    r.value = sm.fx;
    r.evaluations = sm.evaluations;
    r.bracket_lo = sm.bracket_lo;
    r.bracket_hi = sm.bracket_hi;
    r.flat = sm.flat;
    return r;
}

OptimumReport maximize_en_over_tau(const SystemParams& p, const FilterSpec& filt,
                                   double lo, double hi, double tol) {
    const BandEvaluator ev(p, filt);
    const double seed = tau_opt(p, filt.center).value;
    ScalarMax sm = maximize_abs_m(ev, lo, hi, tol, seed);

    OptimumReport r;
    r.analytic_seed = seed;
    r.seed_value = log_negativity_band(ev.moments_at(seed)).en;
    r.value = log_negativity_band(ev.moments_at(sm.x)).en;
    r.argmax = sm.x;
    // monotonicity of E_n in |m| guarantees the seed never wins when its
    // |m| lost; independent gram evaluations can still jitter below it
    if (r.value < r.seed_value) {
        r.argmax = seed;
        r.value = r.seed_value;
    }
    r.evaluations = sm.evaluations;
    r.bracket_lo = sm.bracket_lo;
    r.bracket_hi = sm.bracket_hi;
    r.flat = sm.flat;
    return r;
}

SweepResult sweep(const SystemParams& p, const FilterSpec& filt_template,
                  const AxisSpec& axis, bool optimize_tau) {
    if (axis.points < 2) throw InvalidParams("sweep requires at least 2 points");
    if (axis.log_scale && !(axis.from > 0.0 && axis.to > 0.0))
        throw InvalidParams("log-scale sweep requires positive endpoints");
    if (optimize_tau && axis.variable == SweepVariable::tau)
        throw InvalidParams("optimize_tau requires an omega sweep");

    SweepResult out;
    out.axis.reserve(static_cast<std::size_t>(axis.points));
    for (int i = 0; i < axis.points; ++i) {
        const double t = static_cast<double>(i) / (axis.points - 1);
        out.axis.push_back(axis.log_scale
                               ? std::exp(std::log(axis.from) +
                                          t * (std::log(axis.to) - std::log(axis.from)))
                               : axis.from + t * (axis.to - axis.from));
    }

    for (double x : out.axis) {
        SweepRow row;
        FilterSpec f = filt_template;
        if (axis.variable == SweepVariable::omega)
            f.center = x;
        else
            f.tau1 = x;
        row.omega = f.center;
        row.tau = f.tau();
        try {
            const BandEvaluator ev(p, f);
            BandMoments bm = ev.moments();
            if (optimize_tau) {
                const auto [tlo, thi] = default_tau_bracket(p, f.center);
                const double seed = tau_opt(p, f.center).value;
                const ScalarMax sm = maximize_abs_m(ev, tlo, thi, 1e-5, seed);
                row.tau = sm.x;
                bm = ev.moments_at(sm.x);
            }
            row.nn1 = bm.corr.nn1;
            row.nn2 = bm.corr.nn2;
            row.abs_m = std::abs(bm.corr.m);
            const TmstParams t = tmst_from_moments(bm);
            row.nbar1 = t.nbar1;
            row.nbar2 = t.nbar2;
            row.r12 = t.r12;
            row.en_closed = log_negativity_band(bm).en;
            try {
                row.en_covariance = log_negativity_covariance(bm.corr).en;
            } catch (const UnphysicalInput&) {
                // saturated correlators can fail the covariance physicality
                // check at double precision; the stable route still stands
                row.error_code = 3;
            }
            if (auto regime = match_regime(p, f)) {
                row.en_approx = std::max(0.0, en_approx(p, f, *regime).value);
            }
        } catch (const Error& e) {
            row.error_code = error_code_of(e);
        }
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace oment
