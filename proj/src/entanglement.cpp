#include "oment/entanglement.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

namespace {

double clamp_small_negative(double x, double tol) {
    return (x < 0.0 && x >= -tol) ? 0.0 : x;
}

// determinant of a 4x4 by cofactor expansion over 2x2 minors
double det4(const CovarianceMatrix& v) {
    auto m2 = [&](int r0, int r1, int c0, int c1) {
        return v.at(r0, c0) * v.at(r1, c1) - v.at(r0, c1) * v.at(r1, c0);
    };
    const double s0 = m2(0, 1, 0, 1), s1 = m2(0, 1, 0, 2), s2 = m2(0, 1, 0, 3);
    const double s3 = m2(0, 1, 1, 2), s4 = m2(0, 1, 1, 3), s5 = m2(0, 1, 2, 3);
    const double c5 = m2(2, 3, 2, 3), c4 = m2(2, 3, 1, 3), c3 = m2(2, 3, 1, 2);
    const double c2 = m2(2, 3, 0, 3), c1 = m2(2, 3, 0, 2), c0 = m2(2, 3, 0, 1);
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

}  // namespace

CovarianceMatrix CovarianceMatrix::from_correlators(const Correlators& c) {
    CovarianceMatrix v;
    const double a = c.nn1 + 0.5, b = c.nn2 + 0.5;
    const double re = c.m.real(), im = c.m.imag();
    v.at(0, 0) = v.at(1, 1) = a;
    v.at(2, 2) = v.at(3, 3) = b;
    v.at(0, 2) = v.at(2, 0) = re;
    v.at(0, 3) = v.at(3, 0) = im;
    v.at(1, 2) = v.at(2, 1) = im;
    v.at(1, 3) = v.at(3, 1) = -re;
    return v;
}

double CovarianceMatrix::symplectic_min() const {
    const double det_a = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    const double det_b = at(2, 2) * at(3, 3) - at(2, 3) * at(3, 2);
    const double det_c = at(0, 2) * at(1, 3) - at(0, 3) * at(1, 2);
    const double delta = det_a + det_b + 2.0 * det_c;
    double disc = delta * delta - 4.0 * det4(*this);
    disc = clamp_small_negative(disc, 1e-14 * delta * delta);
    if (disc < 0.0) return 0.0;  // numerically degenerate; caller's tolerance decides
    double arg = 0.5 * (delta - std::sqrt(disc));
    arg = clamp_small_negative(arg, 1e-14 * delta);
    return std::sqrt(std::max(arg, 0.0));
}

TmstParams tmst_from_correlators(const Correlators& c) {
    const double nn1 = clamp_small_negative(c.nn1, 1e-12);
    const double nn2 = clamp_small_negative(c.nn2, 1e-12);
    if (nn1 < 0.0 || nn2 < 0.0) throw UnphysicalInput("negative filtered population");
    const double am = std::abs(c.m);
    const double a_sum = nn1 + nn2 + 1.0;
    if (2.0 * am >= a_sum) {
        std::ostringstream os;
        os << "correlators violate 2|m| < A: |m| = " << am << ", A = " << a_sum;
        throw UnphysicalInput(os.str());
    }
    const double root = std::sqrt(a_sum * a_sum - 4.0 * am * am);
    TmstParams t;
    t.nbar1 = 0.5 * (nn1 - nn2 - 1.0 + root);
    t.nbar2 = 0.5 * (nn2 - nn1 - 1.0 + root);
    t.r12 = 0.5 * std::atanh(2.0 * am / a_sum);
    t.a_sum = a_sum;
    t.nbar1 = clamp_small_negative(t.nbar1, 1e-12);
    t.nbar2 = clamp_small_negative(t.nbar2, 1e-12);
    if (t.nbar1 < 0.0 || t.nbar2 < 0.0) {
        std::ostringstream os;
        os << "unphysical thermal population: nbar1 = " << t.nbar1
           << ", nbar2 = " << t.nbar2;
        throw UnphysicalInput(os.str());
    }
    return t;
}

TmstParams tmst_from_moments(const BandMoments& bm) {
    if (!bm.exact_zero_t) return tmst_from_correlators(bm.corr);
    // A^2 - 4|m|^2 = P + pop_gap^2 with P = 4 gram + 2 pop_gap + 1; every
    // addend is a positive integral, so the root survives saturation.
    const double p_pos = 4.0 * bm.gram + 2.0 * bm.pop_gap + 1.0;
    const double root = std::sqrt(p_pos + bm.pop_gap * bm.pop_gap);
    const double am = std::abs(bm.corr.m);
    const double a_sum = bm.corr.nn1 + bm.corr.nn2 + 1.0;
    TmstParams t;
    t.nbar1 = 0.5 * (-bm.pop_gap - 1.0 + root);
    t.nbar2 = 0.5 * (bm.pop_gap - 1.0 + root);
    // arctanh(2|m|/A)/2 through the stable form of 1 - 2|m|/A
    const double denom = (p_pos + bm.pop_gap * bm.pop_gap) / (a_sum + 2.0 * am);
    t.r12 = 0.25 * std::log((a_sum + 2.0 * am) / denom);
    t.a_sum = a_sum;
    t.nbar1 = clamp_small_negative(t.nbar1, 1e-12);
    t.nbar2 = clamp_small_negative(t.nbar2, 1e-12);
    return t;
}

EntanglementResult log_negativity_closed(const TmstParams& t) {
    const double n_r = (t.nbar1 + t.nbar2 + 1.0) * std::cosh(2.0 * t.r12);
    const double prod = (1.0 + 2.0 * t.nbar1) * (1.0 + 2.0 * t.nbar2);
    double disc = n_r * n_r - prod;
    disc = clamp_small_negative(disc, 1e-12 * std::max(n_r * n_r, prod));
    if (disc < 0.0) {
        std::ostringstream os;
        os << "n_R^2 < (1+2n1)(1+2n2) beyond tolerance: " << disc;
        throw UnphysicalInput(os.str());
    }
    double arg = n_r - std::sqrt(disc);
    if (arg < 1e-14 && arg > -1e-14) arg = 0.0;
    EntanglementResult r;
    r.nu_tilde = 0.5 * arg;
    r.en = arg > 0.0 ? std::max(0.0, -std::log(arg)) : std::numeric_limits<double>::infinity();
    r.method = EnMethod::closed_form;
    return r;
}

EntanglementResult log_negativity_covariance(const Correlators& c) {
    const CovarianceMatrix v = CovarianceMatrix::from_correlators(c);
    if (v.symplectic_min() < 0.5 - 1e-9) {
        std::ostringstream os;
        os << "unphysical covariance matrix: nu_min = " << v.symplectic_min();
        throw UnphysicalInput(os.str());
    }
    const double det_a = v.at(0, 0) * v.at(1, 1) - v.at(0, 1) * v.at(1, 0);
    const double det_b = v.at(2, 2) * v.at(3, 3) - v.at(2, 3) * v.at(3, 2);
    const double det_c = v.at(0, 2) * v.at(1, 3) - v.at(0, 3) * v.at(1, 2);
    const double delta_pt = det_a + det_b - 2.0 * det_c;
    double disc = delta_pt * delta_pt - 4.0 * det4(v);
    disc = clamp_small_negative(disc, 1e-14 * delta_pt * delta_pt);
    double arg = 0.5 * (delta_pt - std::sqrt(std::max(disc, 0.0)));
    arg = clamp_small_negative(arg, 1e-14 * delta_pt);
    EntanglementResult r;
    r.nu_tilde = std::sqrt(std::max(arg, 0.0));
    r.en = r.nu_tilde > 0.0 ? std::max(0.0, -std::log(2.0 * r.nu_tilde))
                            : std::numeric_limits<double>::infinity();
    r.method = EnMethod::covariance;
    return r;
}

EntanglementResult log_negativity_band(const BandMoments& bm) {
    if (!bm.exact_zero_t) {
        return log_negativity_closed(tmst_from_correlators(bm.corr));
    }
    const double p_pos = 4.0 * bm.gram + 2.0 * bm.pop_gap + 1.0;
    const double s = bm.corr.nn1 + bm.corr.nn2 + 1.0;
    const double q = std::hypot(bm.pop_gap, 2.0 * std::abs(bm.corr.m));
    const double two_nu = p_pos / (s + q);
    EntanglementResult r;
    r.nu_tilde = 0.5 * two_nu;
    r.en = std::max(0.0, -std::log(two_nu));
    r.method = EnMethod::band_exact;
    return r;
}

EntanglementResult log_negativity_band(const SystemParams& p, const FilterSpec& filt) {
    return log_negativity_band(band_moments(p, filt));
}

}  // namespace oment
