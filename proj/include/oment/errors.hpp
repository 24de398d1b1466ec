#pragma once

#include <stdexcept>
#include <string>

namespace oment {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid physical parameters or malformed configuration.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// The drift matrix has an eigenvalue with non-negative real part; no
/// stationary state exists.
class InstabilityError : public Error {
public:
    using Error::Error;
};

/// Numerical failure (singular matrix, quadrature breakdown).
class NumericsError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature hit its subdivision limit before reaching the
/// requested tolerance. Carries the error estimate that was achieved.
class QuadratureError : public NumericsError {
public:
    QuadratureError(const std::string& msg, double achieved, double required)
        : NumericsError(msg), achieved_error(achieved), required_tol(required) {}
    double achieved_error;
    double required_tol;
};

/// det(A + i Omega I) underflowed at the reported frequency.
class SingularMatrixError : public NumericsError {
public:
    SingularMatrixError(const std::string& msg, double omega_)
        : NumericsError(msg), omega(omega_) {}
    double omega;
};

/// Correlator values outside the physical domain (violated Cauchy-Schwarz
/// bound, negative populations beyond tolerance, ...).
class UnphysicalInput : public Error {
public:
    using Error::Error;
};

}  // namespace oment
