#include "oment/io.hpp"

#include <cstdio>
#include <ostream>

namespace oment {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

void put_en_cell(std::ostream& os, const std::optional<double>& v, int error_code) {
    if (v)
        os << format_g17(*v);
    else if (error_code != 0)
        os << "ERR:" << error_code;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << kSweepHeader << "\n";
    for (const SweepRow& r : sweep.rows) {
        os << format_g17(r.omega) << ',' << format_g17(r.tau) << ',';
        if (r.en_closed) {
            os << format_g17(r.nn1) << ',' << format_g17(r.nn2) << ',' << format_g17(r.abs_m)
               << ',' << format_g17(r.nbar1) << ',' << format_g17(r.nbar2) << ','
               << format_g17(r.r12) << ',';
        } else {
            os << ",,,,,,";  // whole-point failure: data cells stay empty
        }
        put_en_cell(os, r.en_closed, r.error_code);
        os << ',';
        put_en_cell(os, r.en_covariance, r.error_code);
        os << ',';
        if (r.en_approx) os << format_g17(*r.en_approx);
        os << "\n";
    }
}

void write_spectra_csv(std::ostream& os, const std::vector<SpectralPoint>& points) {
    os << "omega,n1,n2,re_m,im_m\n";
    for (const SpectralPoint& p : points) {
        os << format_g17(p.omega) << ',' << format_g17(p.n1) << ',' << format_g17(p.n2)
           << ',' << format_g17(p.m.real()) << ',' << format_g17(p.m.imag()) << "\n";
    }
}

}  // namespace oment
