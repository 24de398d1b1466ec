#include "oment/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

void SystemParams::validate() const {
    const struct {
        const char* name;
        double value;
        bool strictly_positive;
    } checks[] = {
        {"gamma", gamma, true}, {"kappa1", kappa1, true}, {"kappa2", kappa2, true},
        {"g1", g1, false},      {"g2", g2, false},        {"nm", nm, false},
        {"n1", n1, false},      {"n2", n2, false},
    };
    for (const auto& c : checks) {
        if (!std::isfinite(c.value)) {
            std::ostringstream os;
            os << "parameter " << c.name << " is not finite";
            throw InvalidParams(os.str());
        }
        if (c.value < 0.0 || (c.strictly_positive && c.value == 0.0)) {
            std::ostringstream os;
            os << "parameter " << c.name << " = " << c.value << " must be "
               << (c.strictly_positive ? "> 0" : ">= 0");
            throw InvalidParams(os.str());
        }
    }
}

DriftMatrix build_drift_matrix(const SystemParams& p) {
    p.validate();
    const cplx i(0.0, 1.0);
    DriftMatrix d;
    d.a(0, 0) = -0.5 * p.gamma;
    d.a(1, 1) = -0.5 * p.kappa1;
    d.a(2, 2) = -0.5 * p.kappa2;
    d.a(0, 1) = -i * p.g1;
    d.a(1, 0) = -i * p.g1;
    d.a(0, 2) = -i * p.g2;
    d.a(2, 0) = i * p.g2;
    d.a(1, 2) = 0.0;
    d.a(2, 1) = 0.0;
    d.noise = {std::sqrt(p.gamma), std::sqrt(p.kappa1), std::sqrt(p.kappa2)};
    return d;
}

bool is_stable_closed_form(const SystemParams& p) {
    p.validate();
    const double kmax = std::max(p.kappa1, p.kappa2);
    if (std::abs(p.kappa1 - p.kappa2) <= 1e-12 * kmax) {
        return p.g2 <= p.g1;
    }
    if (p.g2 == 0.0) return true;
    const double ratio = std::max(p.kappa1 / p.kappa2, p.kappa2 / p.kappa1);
    return (p.g1 * p.g1) / (p.g2 * p.g2) > ratio;
}

StabilitySpectrum stability_spectrum(const SystemParams& p) {
    const DriftMatrix d = build_drift_matrix(p);
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = d.a(i, j);

    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(m, /*computeEigenvectors=*/false);
    StabilitySpectrum s;
    double max_real = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        s.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        max_real = std::max(max_real, solver.eigenvalues()(i).real());
    }
    const double margin = 1e-12 * std::max({p.gamma, p.kappa1, p.kappa2});
    s.max_real = max_real;
    s.marginal = std::abs(max_real) <= margin;
    s.stable = max_real < -margin;
    return s;
}

bool is_stable_eigen(const SystemParams& p) { return stability_spectrum(p).stable; }

}  // namespace oment
