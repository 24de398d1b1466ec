#include "oment/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

namespace detail {

// Gauss-Kronrod 15(7) on [-1, 1], QUADPACK dqk15 values.
const double gk_nodes[gk_half] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
const double gk_weights[gk_half] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
const double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

void panel_nodes(double a, double b, double out[15]) {
    const double xm = 0.5 * (a + b), xr = 0.5 * (b - a);
    for (int k = 0; k < 7; ++k) {
        out[k] = xm - xr * gk_nodes[k];
        out[14 - k] = xm + xr * gk_nodes[k];
    }
    out[7] = xm;
}

void panel_weights(double a, double b, double out[15]) {
    const double xr = 0.5 * (b - a);
    for (int k = 0; k < 7; ++k) {
        out[k] = xr * gk_weights[k];
        out[14 - k] = xr * gk_weights[k];
    }
    out[7] = xr * gk_weights[7];
}

void panel_sums(const cplx vals[15], double a, double b, cplx& kronrod, cplx& gauss) {
    const double xr = 0.5 * (b - a);
    cplx k = gk_weights[7] * vals[7];
    for (int i = 0; i < 7; ++i) k += gk_weights[i] * (vals[i] + vals[14 - i]);
    // Gauss-7 nodes sit at the odd Kronrod positions
    cplx g = gauss_weights[3] * vals[7];
    for (int i = 0; i < 3; ++i) g += gauss_weights[i] * (vals[2 * i + 1] + vals[13 - 2 * i]);
    kronrod = xr * k;
    gauss = xr * g;
}

}  // namespace detail

std::vector<double> band_breakpoints(double lo, double hi, double feature_scale) {
    std::vector<double> pts{lo, hi};
    if (feature_scale > 0.0) {
        const double reach = std::max(std::abs(lo), std::abs(hi));
        for (double x = feature_scale / 10.0; x < reach; x *= 10.0) {
            if (lo < x && x < hi) pts.push_back(x);
            if (lo < -x && -x < hi) pts.push_back(-x);
        }
        if (lo < 0.0 && 0.0 < hi) pts.push_back(0.0);
    }
    // a handful of uniform points so the very first error estimates see
    // structure away from the origin as well
    for (int k = 1; k < 4; ++k) pts.push_back(lo + (hi - lo) * k / 4.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

struct Panel {
    double a, b;
    cplx val;
    double err;
};

// max-heap by error, panel position as deterministic tie break
bool heap_less(const Panel& x, const Panel& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
}

Panel eval_panel(const std::function<cplx(double)>& f, double a, double b) {
    double xs[15];
    cplx vals[15];
    detail::panel_nodes(a, b, xs);
    for (int i = 0; i < 15; ++i) vals[i] = f(xs[i]);
    cplx k, g;
    detail::panel_sums(vals, a, b, k, g);
    // |K - G| can collapse to exact zero on resolved panels; the roundoff
    // floor keeps sub-eps tolerance requests failing honestly instead
    const double err = std::max(std::abs(k - g),
                                std::numeric_limits<double>::epsilon() * std::abs(k));
    return Panel{a, b, k, err};
}

cplx kahan_sum(const std::vector<Panel>& panels) {
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    for (const Panel& p : panels) {
        double yr = p.val.real() - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = p.val.imag() - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    return {sr, si};
}

}  // namespace

IntegrationResult integrate_adaptive(const std::function<cplx(double)>& f, double lo,
                                     double hi, double feature_scale,
                                     const QuadratureOptions& opt, FrozenGrid* grid) {
    std::vector<Panel> heap;
    cplx total = 0.0;
    double total_err = 0.0, total_l1 = 0.0;

    const std::vector<double> pts = band_breakpoints(lo, hi, feature_scale);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = eval_panel(f, pts[i], pts[i + 1]);
        total += p.val;
        total_err += p.err;
        total_l1 += std::abs(p.val);
        heap.push_back(p);
    }
    std::make_heap(heap.begin(), heap.end(), heap_less);

    auto bound = [&] { return opt.rel_tol * std::max(std::abs(total), 0.1 * total_l1); };

    while (total_err > bound()) {
        if (heap.size() >= opt.max_panels) {
            std::ostringstream os;
            os << "quadrature did not converge on [" << lo << ", " << hi << "]: estimate "
               << total_err << " vs bound " << bound() << " with " << heap.size()
               << " panels";
            throw QuadratureError(os.str(), total_err, opt.rel_tol);
        }
        std::pop_heap(heap.begin(), heap.end(), heap_less);
        Panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval at floating-point resolution; accept as is
            total_err -= worst.err;
            worst.err = 0.0;
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), heap_less);
            continue;
        }
        total -= worst.val;
        total_err -= worst.err;
        total_l1 -= std::abs(worst.val);
        for (const Panel& child : {eval_panel(f, worst.a, mid), eval_panel(f, mid, worst.b)}) {
            total += child.val;
            total_err += child.err;
            total_l1 += std::abs(child.val);
            heap.push_back(child);
            std::push_heap(heap.begin(), heap.end(), heap_less);
        }
    }

    std::sort(heap.begin(), heap.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });

    if (grid) {
        grid->nodes.clear();
        grid->weights.clear();
        grid->nodes.reserve(heap.size() * 15);
        grid->weights.reserve(heap.size() * 15);
        double xs[15], ws[15];
        for (const Panel& p : heap) {
            detail::panel_nodes(p.a, p.b, xs);
            detail::panel_weights(p.a, p.b, ws);
            grid->nodes.insert(grid->nodes.end(), xs, xs + 15);
            grid->weights.insert(grid->weights.end(), ws, ws + 15);
        }
    }

    double err = 0.0;
    for (const Panel& p : heap) err += p.err;
    return IntegrationResult{kahan_sum(heap), err, heap.size()};
}

cplx integrate_band(const std::function<cplx(double)>& f, double lo, double hi,
                    double feature_scale, double tol) {
    if (!(lo < hi)) throw InvalidParams("integrate_band: requires lo < hi");
    if (!(tol > 0.0 && tol <= 1e-2))
        throw InvalidParams("integrate_band: tol must be in (0, 1e-2]");
    if (!(feature_scale > 0.0))
        throw InvalidParams("integrate_band: feature_scale must be > 0");
    QuadratureOptions opt;
    opt.rel_tol = tol;
    return integrate_adaptive(f, lo, hi, feature_scale, opt).value;
}

}  // namespace oment
