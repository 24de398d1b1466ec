#include "oment/correlators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "oment/entanglement.hpp"
#include "oment/errors.hpp"

namespace oment {

void FilterSpec::validate() const {
    if (!std::isfinite(center) || !std::isfinite(bandwidth) || !std::isfinite(tau1) ||
        !std::isfinite(tau2))
        throw InvalidParams("filter values must be finite");
    if (!(bandwidth > 0.0)) throw InvalidParams("filter bandwidth must be > 0");
}

namespace {

double band_rel_tol() {
    // test-only override; values that cannot be met surface as QuadratureError
    if (const char* s = std::getenv("OMENT_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && v > 0.0) return v;
    }
    return 1e-10;
}

constexpr double kGramRelTol = 1e-7;
constexpr std::size_t kMaxRects = std::size_t{1} << 17;

struct NodeAmps {
    cplx f;        // s(1,2)
    cplx g;        // s(2,2)
    double s13sq;  // |s(0,2)|^2
    double n2;     // |s(2,0)|^2 + |s(2,1)|^2 (positive form, no cancellation)
};

}  // namespace

struct BandEvaluator::Impl {
    SystemParams p;
    FilterSpec filt;
    double lo, hi, sigma;
    bool zero_t;
    bool degenerate;  // bandwidth below 1e-6 gamma: midpoint evaluation
    double tol;

    mutable std::unordered_map<std::uint64_t, NodeAmps> amp_cache;
    mutable std::unordered_map<std::uint64_t, SpectralPoint> spec_cache;

    BandMoments base;  // moments at the filter's own tau
    FrozenGrid m_grid;
    std::vector<cplx> m_grid_vals;  // m(Omega) at the frozen nodes (no phase)

    // ---- cached pointwise evaluations ------------------------------------
    const NodeAmps& amps(double w) const {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(w);
        auto it = amp_cache.find(key);
        if (it != amp_cache.end()) return it->second;
        const ScatteringMatrix sm = scattering_matrix(p, w);
        NodeAmps a{sm.s(1, 2), sm.s(2, 2), std::norm(sm.s(0, 2)),
                   std::norm(sm.s(2, 0)) + std::norm(sm.s(2, 1))};
        return amp_cache.emplace(key, a).first->second;
    }

    const SpectralPoint& spectral(double w) const {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(w);
        auto it = spec_cache.find(key);
        if (it != spec_cache.end()) return it->second;
        return spec_cache.emplace(key, spectral_point(p, w)).first->second;
    }

    cplx m_point(double w) const {
        if (zero_t) {
            const NodeAmps& a = amps(w);
            return a.f * std::conj(a.g);
        }
        return spectral(w).m;
    }

    cplx integrate(const std::function<cplx(double)>& f, FrozenGrid* grid = nullptr) const {
        QuadratureOptions opt;
        opt.rel_tol = tol;
        return integrate_adaptive(f, lo, hi, p.gamma, opt, grid).value;
    }

    // ---- 2D gram quadrature ----------------------------------------------
    struct AxisChunk {
        double a, b;
        double x[15];
        double wk[15];   // Kronrod weights scaled to [a, b]
        cplx f[15];      // s(1,2), no delay phase
        cplx g[15];      // s(2,2)
    };

    mutable std::vector<AxisChunk> chunks;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, int> chunk_index;

    int chunk(double a, double b) const {
        const auto key = std::make_pair(std::bit_cast<std::uint64_t>(a),
                                        std::bit_cast<std::uint64_t>(b));
        auto it = chunk_index.find(key);
        if (it != chunk_index.end()) return it->second;
        AxisChunk c;
        c.a = a;
        c.b = b;
        detail::panel_nodes(a, b, c.x);
        detail::panel_weights(a, b, c.wk);
        for (int i = 0; i < 15; ++i) {
            const NodeAmps& amp = amps(c.x[i]);
            c.f[i] = amp.f;
            c.g[i] = amp.g;
        }
        chunks.push_back(c);
        const int idx = static_cast<int>(chunks.size()) - 1;
        chunk_index.emplace(key, idx);
        return idx;
    }

    // (1/2) IntInt |f(x)g(y) - f(y)g(x)|^2 over the band square, f phased by tau.
    double gram_defect(double tau) const {
        struct Rect {
            int cx, cy;
            double val, err;
        };

        std::vector<std::array<cplx, 15>> phased;  // parallel to chunks
        auto phased_f = [&](int ci) -> const std::array<cplx, 15>& {
            if (static_cast<std::size_t>(ci) >= phased.size())
                phased.resize(chunks.size());
            std::array<cplx, 15>& pf = phased[static_cast<std::size_t>(ci)];
            if (pf[0] == cplx{} && chunks[static_cast<std::size_t>(ci)].f[0] != cplx{}) {
                const AxisChunk& c = chunks[static_cast<std::size_t>(ci)];
                for (int i = 0; i < 15; ++i)
                    pf[static_cast<std::size_t>(i)] =
                        std::polar(1.0, -c.x[i] * tau) * c.f[i];
            }
            return pf;
        };

        auto eval_rect = [&](int cx, int cy) {
            const AxisChunk& X = chunks[static_cast<std::size_t>(cx)];
            const AxisChunk& Y = chunks[static_cast<std::size_t>(cy)];
            const std::array<cplx, 15> fx = phased_f(cx);
            const std::array<cplx, 15> fy = phased_f(cy);
            double kk = 0.0, gg = 0.0;
            const double xrx = 0.5 * (X.b - X.a), xry = 0.5 * (Y.b - Y.a);
            for (int i = 0; i < 15; ++i) {
                double row_k = 0.0, row_g = 0.0;
                for (int j = 0; j < 15; ++j) {
                    const cplx h = fx[static_cast<std::size_t>(i)] * Y.g[j] -
                                   fy[static_cast<std::size_t>(j)] * X.g[i];
                    const double q = 0.5 * std::norm(h);
                    row_k += Y.wk[j] * q;
                    if ((i & 1) && (j & 1))
                        row_g += xry * detail::gauss_weights[(j < 7) ? j / 2 : (14 - j) / 2] * q;
                }
                kk += X.wk[i] * row_k;
                if (i & 1)
                    gg += xrx * detail::gauss_weights[(i < 7) ? i / 2 : (14 - i) / 2] * row_g;
            }
            return Rect{cx, cy, kk, std::abs(kk - gg)};
        };

        const std::vector<double> pts = band_breakpoints(lo, hi, p.gamma);
        std::vector<int> seeds;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) seeds.push_back(chunk(pts[i], pts[i + 1]));

        std::vector<Rect> heap;
        double total = 0.0, total_err = 0.0;
        for (int cx : seeds)
            for (int cy : seeds) {
                Rect r = eval_rect(cx, cy);
                total += r.val;
                total_err += r.err;
                heap.push_back(r);
            }
        auto worse = [&](const Rect& u, const Rect& v) {
            if (u.err != v.err) return u.err < v.err;
            if (chunks[static_cast<std::size_t>(u.cx)].a != chunks[static_cast<std::size_t>(v.cx)].a)
                return chunks[static_cast<std::size_t>(u.cx)].a >
                       chunks[static_cast<std::size_t>(v.cx)].a;
            return chunks[static_cast<std::size_t>(u.cy)].a > chunks[static_cast<std::size_t>(v.cy)].a;
        };
        std::make_heap(heap.begin(), heap.end(), worse);

        while (total_err > kGramRelTol * total && total > 0.0) {
            if (heap.size() >= kMaxRects) {
                std::ostringstream os;
                os << "2d quadrature did not converge: estimate " << total_err << " on value "
                   << total;
                throw QuadratureError(os.str(), total_err, kGramRelTol);
            }
            std::pop_heap(heap.begin(), heap.end(), worse);
            Rect worst = heap.back();
            heap.pop_back();
            total -= worst.val;
            total_err -= worst.err;

            // copy the split bounds out: chunk() may reallocate the store
            const double xa = chunks[static_cast<std::size_t>(worst.cx)].a;
            const double xb = chunks[static_cast<std::size_t>(worst.cx)].b;
            const double ya = chunks[static_cast<std::size_t>(worst.cy)].a;
            const double yb = chunks[static_cast<std::size_t>(worst.cy)].b;
            const bool split_x = (xb - xa) >= (yb - ya);
            const double sa = split_x ? xa : ya, sb = split_x ? xb : yb;
            const double mid = 0.5 * (sa + sb);
            if (!(sa < mid && mid < sb)) {
                worst.err = 0.0;
                total += worst.val;
                heap.push_back(worst);
                std::push_heap(heap.begin(), heap.end(), worse);
                continue;
            }
            const int c1 = chunk(sa, mid), c2 = chunk(mid, sb);
            for (int ci : {c1, c2}) {
                Rect r = split_x ? eval_rect(ci, worst.cy) : eval_rect(worst.cx, ci);
                total += r.val;
                total_err += r.err;
                heap.push_back(r);
                std::push_heap(heap.begin(), heap.end(), worse);
            }
        }

        std::sort(heap.begin(), heap.end(), [&](const Rect& u, const Rect& v) {
            const double ax = chunks[static_cast<std::size_t>(u.cx)].a,
                         bx = chunks[static_cast<std::size_t>(v.cx)].a;
            if (ax != bx) return ax < bx;
            return chunks[static_cast<std::size_t>(u.cy)].a <
                   chunks[static_cast<std::size_t>(v.cy)].a;
        });
        double sum = 0.0, comp = 0.0;
        for (const Rect& r : heap) {
            const double y = r.val - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

    // ---- assembly ----------------------------------------------------------
    BandMoments compute_moments(double tau, bool fresh_m_integral) const {
        BandMoments bm;
        bm.exact_zero_t = zero_t;

        if (degenerate) {
            if (zero_t) {
                const NodeAmps& a = amps(filt.center);
                bm.corr.nn1 = std::norm(a.f);
                bm.corr.nn2 = a.n2;
                bm.corr.m = std::polar(1.0, -filt.center * tau) * a.f * std::conj(a.g);
                bm.gram = 0.0;
                bm.pop_gap = a.s13sq;
            } else {
                const SpectralPoint& sp = spectral(filt.center);
                bm.corr.nn1 = sp.n1;
                bm.corr.nn2 = sp.n2;
                bm.corr.m = std::polar(1.0, -filt.center * tau) * sp.m;
            }
            return bm;
        }

        if (zero_t) {
            bm.corr.nn1 =
                integrate([&](double w) { return cplx(std::norm(amps(w).f), 0.0); }).real() /
                sigma;
            bm.corr.nn2 =
                integrate([&](double w) { return cplx(amps(w).n2, 0.0); }).real() / sigma;
            bm.pop_gap =
                integrate([&](double w) { return cplx(amps(w).s13sq, 0.0); }).real() / sigma;
            bm.gram = gram_defect(tau) / (sigma * sigma);
        } else {
            bm.corr.nn1 =
                integrate([&](double w) { return cplx(spectral(w).n1, 0.0); }).real() / sigma;
            bm.corr.nn2 =
                integrate([&](double w) { return cplx(spectral(w).n2, 0.0); }).real() / sigma;
        }

        if (fresh_m_integral || m_grid.nodes.empty()) {
            bm.corr.m = integrate([&](double w) {
                            return std::polar(1.0, -w * tau) * m_point(w);
                        }) /
                        sigma;
        } else {
            bm.corr.m = frozen_m(tau);
        }

        for (double* v : {&bm.corr.nn1, &bm.corr.nn2}) {
            if (*v < 0.0 && *v > -1e-14) *v = 0.0;
        }
        return bm;
    }

    cplx frozen_m(double tau) const {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < m_grid.nodes.size(); ++i)
            acc += m_grid.weights[i] * std::polar(1.0, -m_grid.nodes[i] * tau) *
                   m_grid_vals[i];
        return acc / sigma;
    }
};

BandEvaluator::BandEvaluator(const SystemParams& p, const FilterSpec& filt)
    : impl_(std::make_unique<Impl>()) {
    p.validate();
    filt.validate();
    if (!is_stable_eigen(p)) {
        std::ostringstream os;
        os << "system is unstable (drift spectrum reaches Re >= 0)";
        if (!is_stable_closed_form(p)) {
            os << "; closed-form criterion G1^2/G2^2 > max(k1/k2, k2/k1) is violated: "
               << "G1^2/G2^2 = " << (p.g2 > 0 ? p.g1 * p.g1 / (p.g2 * p.g2) : 0.0)
               << " vs max ratio "
               << std::max(p.kappa1 / p.kappa2, p.kappa2 / p.kappa1);
        }
        throw InstabilityError(os.str());
    }
    impl_->p = p;
    impl_->filt = filt;
    impl_->sigma = filt.bandwidth;
    impl_->lo = filt.center - 0.5 * filt.bandwidth;
    impl_->hi = filt.center + 0.5 * filt.bandwidth;
    impl_->zero_t = p.zero_temperature();
    impl_->degenerate = filt.bandwidth < 1e-6 * p.gamma;
    impl_->tol = band_rel_tol();

    if (!impl_->degenerate) {
        // frozen grid from the phaseless cross-correlator run
        FrozenGrid grid;
        QuadratureOptions opt;
        opt.rel_tol = impl_->tol;
        integrate_adaptive([&](double w) { return impl_->m_point(w); }, impl_->lo,
                           impl_->hi, p.gamma, opt, &grid);
        impl_->m_grid = std::move(grid);
        impl_->m_grid_vals.reserve(impl_->m_grid.nodes.size());
        for (double w : impl_->m_grid.nodes) impl_->m_grid_vals.push_back(impl_->m_point(w));
    }
    impl_->base = impl_->compute_moments(filt.tau(), /*fresh_m_integral=*/true);
}

BandEvaluator::~BandEvaluator() = default;
BandEvaluator::BandEvaluator(BandEvaluator&&) noexcept = default;
BandEvaluator& BandEvaluator::operator=(BandEvaluator&&) noexcept = default;

const BandMoments& BandEvaluator::moments() const { return impl_->base; }

cplx BandEvaluator::cross_correlator(double tau) const {
    if (impl_->degenerate)
        return std::polar(1.0, -impl_->filt.center * tau) * impl_->m_point(impl_->filt.center);
    return impl_->frozen_m(tau);
}

BandMoments BandEvaluator::moments_at(double tau) const {
    return impl_->compute_moments(tau, /*fresh_m_integral=*/true);
}

const SystemParams& BandEvaluator::params() const { return impl_->p; }
const FilterSpec& BandEvaluator::filter() const { return impl_->filt; }

Correlators band_correlators(const SystemParams& p, const FilterSpec& filt) {
    return BandEvaluator(p, filt).moments().corr;
}

BandMoments band_moments(const SystemParams& p, const FilterSpec& filt) {
    return BandEvaluator(p, filt).moments();
}

}  // namespace oment
