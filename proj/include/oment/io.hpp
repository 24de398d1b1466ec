#pragma once

#include <iosfwd>
#include <string>

#include "oment/optimize.hpp"
#include "oment/scattering.hpp"

namespace oment {

/// Decimal scientific notation with 17 significant digits: value-preserving
/// for round trips and byte-stable across runs.
std::string format_g17(double x);

/// Sweep CSV: UTF-8, comma separated, header row, LF endings. Failed E_n
/// cells carry "ERR:<code>"; an absent approximation leaves its cell empty.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

/// Spectra CSV with columns omega,n1,n2,re_m,im_m.
void write_spectra_csv(std::ostream& os, const std::vector<SpectralPoint>& points);

inline const char* kSweepHeader =
    "omega,tau,nn1,nn2,abs_m,nbar1,nbar2,r12,en_closed,en_covariance,en_approx";

}  // namespace oment
