#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "splinequant/numerics.hpp"

using namespace splinequant;

namespace {

// Maclaurin series for erf, dependable to ~1e-15 for |u| <= 2.
double erf_series(double u) {
    const double two_over_sqrt_pi = 1.1283791670955126;
    double term = u;
    double sum = 0.0;
    for (int n = 0; n < 80; ++n) {
        sum += term / (2 * n + 1);
        term *= -u * u / (n + 1);
        if (std::abs(term) < 1e-18) break;
    }
    return two_over_sqrt_pi * sum;
}

}  // namespace

TEST_CASE("erf matches a series expansion on the core range") {
    for (double u = -2.0; u <= 2.0001; u += 0.125)
        CHECK(std::abs(splinequant::erf(u) - erf_series(u)) < 1e-14);
}

TEST_CASE("erf matches direct integration of its defining integral") {
    for (const double u : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
        const double integral = adaptive_quadrature(
            [](double t) { return std::exp(-t * t); }, 0.0, u, {1e-14, 60});
        CHECK(std::abs(splinequant::erf(u) - 1.1283791670955126 * integral) < 1e-13);
    }
}

TEST_CASE("erf basic identities") {
    CHECK(splinequant::erf(0.0) == 0.0);
    CHECK(std::abs(splinequant::erf(1.0) - 0.8427007929497149) < 1e-12);
    for (const double u : {0.3, 1.7, 2.9, 5.0}) {
        CHECK(splinequant::erf(-u) == -splinequant::erf(u));
        CHECK(std::abs(splinequant::erf(u) + splinequant::erfc(u) - 1.0) < 1e-14);
    }
    CHECK(std::abs(splinequant::erf(6.0) - 1.0) < 1e-14);
    CHECK_THROWS_AS(splinequant::erf(std::numeric_limits<double>::quiet_NaN()), domain_error);
    CHECK_THROWS_AS(splinequant::erfc(std::numeric_limits<double>::infinity()), domain_error);
}

TEST_CASE("gaussian density values and symmetry") {
    CHECK(std::abs(gaussian_pdf(0.0) - 0.3989422804014327) < 1e-15);
    CHECK(std::abs(gaussian_pdf(2.4746) - 0.018671422861755157) < 1e-15);
    CHECK(gaussian_pdf(1.25) == gaussian_pdf(-1.25));
    CHECK(std::abs(gaussian_pdf(0.0, {2.0}) - 0.19947114020071635) < 1e-15);
    CHECK_THROWS_AS(gaussian_pdf(0.0, {0.0}), domain_error);
    CHECK_THROWS_AS(gaussian_pdf(std::numeric_limits<double>::infinity()), domain_error);
}

TEST_CASE("unit-variance tail moments against direct integration") {
    for (const double a : {0.0, 0.5, 1.0, 2.0, 2.4746, 3.0, 4.0}) {
        for (const int k : {0, 1, 2}) {
            const double direct = adaptive_quadrature(
                [k](double t) {
                    double w = gaussian_pdf(t);
                    for (int i = 0; i < k; ++i) w *= t;
                    return w;
                },
                a, a + 14.0, {1e-14, 60});
            CHECK(std::abs(gaussian_tail_moment(k, a) - direct) < 1e-10);
        }
    }
    CHECK(gaussian_tail_moment(0, 0.0) == 0.5);
    CHECK(std::abs(gaussian_tail_moment(1, 0.0) - 0.3989422804014327) < 1e-15);
    CHECK(std::abs(gaussian_tail_moment(0, 2.4746) - 0.006669273665803443) < 1e-12);
    CHECK(std::abs(gaussian_tail_moment(1, 2.4746) - 0.018671422861755157) < 1e-12);
}

TEST_CASE("general-sigma tail moments satisfy the scaling identities") {
    const GaussianParams wide{2.0};
    const double a = 1.3;
    CHECK(std::abs(gaussian_tail_moment(0, a, wide) - gaussian_tail_moment(0, a / 2.0)) < 1e-10);
    CHECK(std::abs(gaussian_tail_moment(1, a, wide) - 2.0 * gaussian_tail_moment(1, a / 2.0)) <
          1e-10);
    CHECK(std::abs(gaussian_tail_moment(2, a, wide) - 4.0 * gaussian_tail_moment(2, a / 2.0)) <
          1e-10);
}

TEST_CASE("tail moment rejects bad orders and arguments") {
    CHECK_THROWS_AS(gaussian_tail_moment(3, 0.0), domain_error);
    CHECK_THROWS_AS(gaussian_tail_moment(-1, 0.0), domain_error);
    CHECK_THROWS_AS(gaussian_tail_moment(0, std::numeric_limits<double>::infinity()),
                    domain_error);
    CHECK_THROWS_AS(gaussian_tail_moment(0, 0.0, {-1.0}), domain_error);
}

TEST_CASE("quadrature is exact for low-degree polynomials") {
    CHECK(std::abs(adaptive_quadrature([](double) { return 1.0; }, 0.0, 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(adaptive_quadrature([](double t) { return t; }, 0.0, 1.0) - 0.5) < 1e-14);
    // Simpson panels integrate cubics exactly.
    const double cubic = adaptive_quadrature(
        [](double t) { return 3.0 * t * t - 2.0 * t * t * t; }, 0.0, 2.0);
    CHECK(std::abs(cubic - 0.0) < 1e-13);
}

TEST_CASE("quadrature reproduces the central Gaussian mass") {
    const double mass = adaptive_quadrature([](double t) { return gaussian_pdf(t); }, 0.0,
                                            2.4746, {1e-12, 60});
    CHECK(std::abs(mass - 0.49333072633419656) < 1e-10);
    CHECK(std::abs(mass - (0.5 - gaussian_tail_moment(0, 2.4746))) < 1e-12);
}

TEST_CASE("quadrature reports budget exhaustion with its best estimate") {
    const QuadratureSpec starved{1e-16, 2};
    try {
        adaptive_quadrature([](double t) { return std::exp(t); }, 0.0, 1.0, starved);
        FAIL("expected numeric_error");
    } catch (const numeric_error& e) {
        CHECK(std::abs(e.best_estimate - (std::exp(1.0) - 1.0)) < 1e-3);
        CHECK(e.achieved_tolerance > 1e-16);
    }
}

TEST_CASE("quadrature rejects bad intervals and non-finite integrands") {
    CHECK_THROWS_AS(adaptive_quadrature([](double) { return 1.0; }, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(adaptive_quadrature([](double) { return 1.0; }, 0.0, 0.0), domain_error);
    CHECK_THROWS_AS(adaptive_quadrature([](double t) { return 1.0 / t; }, 0.0, 1.0),
                    numeric_error);
    QuadratureSpec bad;
    bad.absolute_tolerance = 0.0;
    CHECK_THROWS_AS(adaptive_quadrature([](double) { return 1.0; }, 0.0, 1.0, bad),
                    domain_error);
}

TEST_CASE("root finder solves monotone problems") {
    CHECK(find_root_monotone([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-14) == 1.0);
    const double cbrt2 = find_root_monotone([](double x) { return x * x * x - 8.0; }, 0.0, 3.0,
                                            1e-12);
    CHECK(std::abs(cbrt2 - 2.0) < 1e-11);
    const double r = find_root_monotone([](double x) { return splinequant::erf(x) - 0.5; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r - 0.4769362762044699) < 1e-9);
}

TEST_CASE("root finder residuals shrink with the tolerance") {
    for (double c = 0.1; c < 2.0; c += 0.3) {
        const double root =
            find_root_monotone([c](double x) { return x * x * x - c; }, 0.0, 2.0, 1e-13);
        CHECK(std::abs(root * root * root - c) < 1e-11);
    }
}

TEST_CASE("root finder accepts endpoint zeros and rejects bad brackets") {
    CHECK(find_root_monotone([](double x) { return x; }, 0.0, 1.0, 1e-12) == 0.0);
    CHECK(find_root_monotone([](double x) { return x - 1.0; }, 0.0, 1.0, 1e-12) == 1.0);
    CHECK_THROWS_AS(find_root_monotone([](double x) { return x + 5.0; }, 0.0, 1.0, 1e-12),
                    bracketing_error);
    CHECK_THROWS_AS(find_root_monotone([](double x) { return x; }, 1.0, 0.0, 1e-12),
                    domain_error);
    CHECK_THROWS_AS(find_root_monotone([](double x) { return x; }, -1.0, 1.0, 0.0),
                    domain_error);
}

TEST_CASE("compensated summation survives catastrophic cancellation") {
    neumaier_sum acc;
    for (const double v : {1.0, 1e100, 1.0, -1e100}) acc.add(v);
    CHECK(acc.value() == 2.0);
}
