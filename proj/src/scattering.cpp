#include "oment/scattering.hpp"

#include <cmath>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

namespace {

Mat3 resolvent_times_noise(const SystemParams& p, double omega, const DriftMatrix& d) {
    // (A + i omega I)^{-1}, closed-form adjugate route
    Mat3 m = d.a;
    const cplx iw(0.0, omega);
    m(0, 0) += iw;
    m(1, 1) += iw;
    m(2, 2) += iw;

    const cplx dt = det(m);
    const double scale = std::max({p.gamma, p.kappa1, p.kappa2, std::abs(omega)});
    if (!(std::abs(dt) > 1e-280 * scale * scale * scale)) {
        std::ostringstream os;
        os << "det(A + i*omega*I) underflow at omega = " << omega;
        throw SingularMatrixError(os.str(), omega);
    }
    Mat3 inv = adjugate(m);
    for (auto& v : inv.a) v /= dt;
    return inv;
}

}  // namespace

ScatteringMatrix scattering_matrix(const SystemParams& p, double omega) {
    const DriftMatrix d = build_drift_matrix(p);
    const Mat3 inv = resolvent_times_noise(p, omega, d);
    ScatteringMatrix out;
    out.omega = omega;
    out.s = Mat3::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.s(i, j) += d.noise[static_cast<std::size_t>(i)] * inv(i, j) *
                           d.noise[static_cast<std::size_t>(j)];
    return out;
}

SpectralPoint spectral_point(const SystemParams& p, double omega) {
    const ScatteringMatrix sm = scattering_matrix(p, omega);
    const Mat3& s = sm.s;

    // Input correlator weights for the vector (b_in, d1_in, d2_in^dag); the
    // creation-operator slot swaps N2 and N2+1 relative to the others.
    const double c_minus[3] = {p.nm, p.n1, p.n2 + 1.0};      // <v~ v> ordering
    const double c_plus[3] = {p.nm + 1.0, p.n1 + 1.0, p.n2}; // <v v~> ordering

    SpectralPoint out;
    out.omega = omega;
    double n1 = 0.0, n2 = 0.0;
    cplx m = 0.0;
    for (int j = 0; j < 3; ++j) {
        n1 += std::norm(s(1, j)) * c_minus[j];
        n2 += std::norm(s(2, j)) * c_plus[j];
        m += s(1, j) * std::conj(s(2, j)) * c_plus[j];
    }
    // clamp quadrature-level negative noise on exact zeros
    out.n1 = (n1 < 0.0 && n1 > -1e-14) ? 0.0 : n1;
    out.n2 = (n2 < 0.0 && n2 > -1e-14) ? 0.0 : n2;
    out.m = m;
    return out;
}

namespace detail {

ZeroTempAmplitudes zero_temp_amplitudes(const SystemParams& p, double omega) {
    const ScatteringMatrix sm = scattering_matrix(p, omega);
    return {sm.s(1, 2), sm.s(2, 2), std::norm(sm.s(0, 2))};
}

}  // namespace detail

}  // namespace oment
