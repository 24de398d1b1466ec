#include <doctest.h>

#include <cmath>

#include "oment/errors.hpp"
#include "oment/quadrature.hpp"

using namespace oment;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("constant integrand") {
    const cplx v = integrate_band([](double) { return cplx(1.0, 0.0); }, 0.0, 1.0, 1.0, 1e-10);
    CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("lorentzian against the arctangent") {
    const cplx v = integrate_band([](double w) { return cplx(1.0 / (1.0 + w * w), 0.0); },
                                  -5.0, 5.0, 1.0, 1e-12);
    CHECK(std::abs(v.real() - 2.0 * std::atan(5.0)) < 1e-12);
    CHECK(v.imag() == 0.0);
}

TEST_CASE("odd integrand integrates to zero") {
    const cplx v = integrate_band([](double w) { return cplx(w * std::exp(-w * w), 0.0); },
                                  -3.0, 3.0, 1.0, 1e-12);
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("narrow feature inside a wide band is resolved") {
    // width-1e-3 lorentzian at the origin of a [-1e3, 1e3] band; a uniform
    // start would need ~1e6 panels to even see it
    const double eps = 1e-3;
    const cplx v = integrate_band(
        [&](double w) { return cplx(eps / (w * w + eps * eps), 0.0); }, -1e3, 1e3, eps,
        1e-10);
    const double expect = 2.0 * std::atan(1e3 / eps);
    CHECK(std::abs(v.real() - expect) < 1e-9 * expect);
}

TEST_CASE("feature at the band edge is resolved") {
    const double eps = 1e-3;
    const cplx v = integrate_band(
        [&](double w) { return cplx(eps / (w * w + eps * eps), 0.0); }, 0.0, 1e3, eps, 1e-10);
    const double expect = std::atan(1e3 / eps);
    CHECK(std::abs(v.real() - expect) < 1e-9 * expect);
}

TEST_CASE("complex integrand with phase") {
    // int_0^1 e^{i w} dw = sin(1) + i (1 - cos(1))
    const cplx v = integrate_band([](double w) { return std::polar(1.0, w); }, 0.0, 1.0, 1.0,
                                  1e-12);
    CHECK(std::abs(v - cplx(std::sin(1.0), 1.0 - std::cos(1.0))) < 1e-13);
}

TEST_CASE("precondition violations") {
    auto one = [](double) { return cplx(1.0, 0.0); };
    CHECK_THROWS_AS(integrate_band(one, 1.0, 0.0, 1.0, 1e-10), InvalidParams);
    CHECK_THROWS_AS(integrate_band(one, 0.0, 1.0, 1.0, 0.0), InvalidParams);
    CHECK_THROWS_AS(integrate_band(one, 0.0, 1.0, 1.0, 0.5), InvalidParams);
    CHECK_THROWS_AS(integrate_band(one, 0.0, 1.0, -1.0, 1e-10), InvalidParams);
}

TEST_CASE("unreachable tolerance raises with the achieved estimate") {
    QuadratureOptions opt;
    opt.rel_tol = 1e-30;      // below double resolution
    opt.max_panels = 4096;    // keep the failure quick
    try {
        integrate_adaptive([](double w) { return cplx(std::cos(3.0 * w), 0.0); }, 0.0, 10.0,
                           1.0, opt);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_error > 0.0);
        CHECK(e.required_tol == 1e-30);
    }
}

TEST_CASE("frozen grid reproduces the adaptive value") {
    auto f = [](double w) { return cplx(1.0 / (1.0 + w * w), std::sin(w) / (4.0 + w * w)); };
    FrozenGrid grid;
    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    const IntegrationResult r = integrate_adaptive(f, -10.0, 10.0, 1.0, opt, &grid);
    cplx resum = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) resum += grid.weights[i] * f(grid.nodes[i]);
    CHECK(std::abs(resum - r.value) < 1e-12 * std::abs(r.value));
}

TEST_CASE("breakpoints ladder straddles the origin") {
    const auto pts = band_breakpoints(-50.0, 50.0, 1.0);
    CHECK(std::find(pts.begin(), pts.end(), 0.0) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), 0.1) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), -0.1) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), 10.0) != pts.end());
    CHECK(pts.front() == -50.0);
    CHECK(pts.back() == 50.0);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
}

TEST_SUITE_END();
