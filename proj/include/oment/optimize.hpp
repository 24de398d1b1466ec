#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oment/correlators.hpp"
#include "oment/entanglement.hpp"

namespace oment {

struct OptimumReport {
    double argmax;
    double value;  ///< E_n at argmax
    int evaluations;
    double bracket_lo, bracket_hi;  ///< final refined interval
    double analytic_seed;
    double seed_value;  ///< E_n at the analytic seed (NaN when no seed)
    bool flat = false;  ///< objective range below resolution across the scan
};

/// Maximizes exact E_n over the filter center frequency on [lo, hi]:
/// a 64-point coarse scan (the objective is not unimodal near omega =
/// sigma/2) followed by golden-section refinement to relative tolerance tol
/// (>= 1e-6). A seed from the closed-form optimum is evaluated as a
/// candidate when it lies inside the bracket; the result never falls below
/// it.
OptimumReport maximize_en_over_omega(const SystemParams& p, const FilterSpec& filt_template,
                                     double lo, double hi, double tol,
                                     std::optional<double> analytic_seed = std::nullopt);

/// Maximizes |<D1 D2>| over the delay on [lo, hi] (equivalent to maximizing
/// E_n: the populations are delay independent and E_n is monotone in |m|).
/// The scan runs on the frozen quadrature grid of the band so that values at
/// different delays share their grid bias. Seeded at the closed-form delay.
OptimumReport maximize_en_over_tau(const SystemParams& p, const FilterSpec& filt,
                                   double lo, double hi, double tol);

/// Default delay bracket [-seed, 10 seed] around the closed-form optimum.
std::pair<double, double> default_tau_bracket(const SystemParams& p, double omega);

enum class SweepVariable { omega, tau };

struct AxisSpec {
    SweepVariable variable;
    double from;
    double to;
    int points;      ///< >= 2
    bool log_scale;  ///< log grids require 0 < from, to
};

/// One sweep record. E_n cells are empty on per-point failure, with the
/// error class recorded (2 instability, 3 numerics); the sweep continues.
struct SweepRow {
    double omega = 0.0;
    double tau = 0.0;
    double nn1 = 0.0, nn2 = 0.0, abs_m = 0.0;
    double nbar1 = 0.0, nbar2 = 0.0, r12 = 0.0;
    std::optional<double> en_closed;
    std::optional<double> en_covariance;
    std::optional<double> en_approx;  ///< set when a closed-form regime matches
    int error_code = 0;
};

struct SweepResult {
    std::vector<double> axis;
    std::vector<SweepRow> rows;  ///< aligned 1:1 with axis
};

/// Evaluates the full pipeline on each grid point. With optimize_tau (omega
/// sweeps only) each row's delay is the per-point optimum over the default
/// bracket.
SweepResult sweep(const SystemParams& p, const FilterSpec& filt_template,
                  const AxisSpec& axis, bool optimize_tau);

}  // namespace oment
