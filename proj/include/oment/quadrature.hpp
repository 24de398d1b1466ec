#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "oment/linalg.hpp"

namespace oment {

/// Nodes and weights of the final adaptive partition. Re-weighting the same
/// nodes (e.g. with a delay phase) gives integrals whose grid bias is
/// identical to the original run, which is what scalar optimizers over the
/// re-weighting parameter need.
struct FrozenGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

struct IntegrationResult {
    cplx value;
    double error_estimate;
    std::size_t panels;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    std::size_t max_panels = std::size_t{1} << 20;
};

/// Breakpoints seeding the adaptive partition of [lo, hi]: a geometric ladder
/// at distances feature_scale/10 * 10^k from the origin. The spectra carry a
/// Lorentzian of width ~gamma at Omega = 0 that uniform panels of a wide band
/// would never sample.
std::vector<double> band_breakpoints(double lo, double hi, double feature_scale);

/// Globally adaptive Gauss-Kronrod 15(7) integration of a complex integrand.
/// Termination: error estimate <= rel_tol * max(|I|, 0.1 * L1(I)); the L1
/// floor makes integrals that vanish by symmetry terminate at an absolute
/// accuracy of the same order. Throws QuadratureError when max_panels is
/// reached first, InvalidParams on a malformed request.
IntegrationResult integrate_adaptive(const std::function<cplx(double)>& f, double lo,
                                     double hi, double feature_scale,
                                     const QuadratureOptions& opt,
                                     FrozenGrid* grid = nullptr);

/// Band-integral entry point: adaptive result with estimated relative error
/// <= tol. Preconditions: lo < hi, tol in (0, 1e-2], feature_scale > 0.
cplx integrate_band(const std::function<cplx(double)>& f, double lo, double hi,
                    double feature_scale, double tol);

namespace detail {
/// Gauss-Kronrod 15(7) nodes/weights on [-1, 1] (positive half; node 7 is 0).
inline constexpr int gk_half = 8;
extern const double gk_nodes[gk_half];
extern const double gk_weights[gk_half];
extern const double gauss_weights[4];

/// All 15 Kronrod abscissae of [a, b] in ascending order.
void panel_nodes(double a, double b, double out[15]);
/// Kronrod weights scaled to [a, b], same ordering as panel_nodes.
void panel_weights(double a, double b, double out[15]);
/// Kronrod and embedded Gauss estimates from integrand values at panel_nodes.
void panel_sums(const cplx vals[15], double a, double b, cplx& kronrod, cplx& gauss);
}  // namespace detail

}  // namespace oment
