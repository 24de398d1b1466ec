#pragma once

#include "oment/linalg.hpp"
#include "oment/model.hpp"

namespace oment {

/// Frequency-resolved input-output scattering matrix at frequency omega
/// (rotating frame), mapping (b_in, d1_in, d2_in^dag) to the corresponding
/// output vector:
///
///     s(omega) = I + L (A + i omega I)^{-1} L
///
/// with the Fourier convention f(omega) = (2pi)^{-1/2} Int dt e^{i omega t} f(t),
/// i.e. d/dt -> -i omega. Preserves the Bogoliubov metric eta = diag(1, 1, -1):
/// s eta s^dag = eta.
struct ScatteringMatrix {
    double omega;
    Mat3 s;
};

ScatteringMatrix scattering_matrix(const SystemParams& p, double omega);

/// Stationary output spectral densities at one frequency. n1 and n2 are the
/// flux densities entering the filtered populations <D1^dag D1>, <D2^dag D2>;
/// m is the cross density entering <D1 D2> (the delay factor e^{-i omega tau}
/// is applied at band-integration time, not here).
struct SpectralPoint {
    double omega;
    double n1;  ///< >= 0
    double n2;  ///< >= 0
    cplx m;
};

SpectralPoint spectral_point(const SystemParams& p, double omega);

namespace detail {
/// Scattering amplitudes feeding the zero-temperature band integrals: the
/// creation-port column s(.,2) of the scattering matrix. The Bogoliubov
/// metric ties the zero-temperature densities to this single column:
/// n1 = |f|^2, n2 = |g|^2 - 1, n2 - n1 = s13sq, m = f * conj(g).
struct ZeroTempAmplitudes {
    cplx f;        ///< s(1,2): creation port -> d1 output
    cplx g;        ///< s(2,2): creation port -> d2^dag output
    double s13sq;  ///< |s(0,2)|^2: creation port -> mechanical output
};

ZeroTempAmplitudes zero_temp_amplitudes(const SystemParams& p, double omega);
}  // namespace detail

}  // namespace oment
