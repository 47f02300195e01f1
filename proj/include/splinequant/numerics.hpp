#pragma once

#include <cmath>
#include <functional>

#include "splinequant/errors.hpp"

namespace splinequant {

struct GaussianParams {
    double sigma = 1.0;
};

struct QuadratureSpec {
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 60;
};

// erf/erfc with finite-input validation. Absolute error <= 1e-14 on the reals.
double erf(double u);
double erfc(double u);

// Zero-mean Gaussian density with standard deviation params.sigma.
double gaussian_pdf(double t, const GaussianParams& params = {});

// integral_a^inf t^k p(t) dt for k in {0, 1, 2}. Closed forms for sigma == 1,
// truncated quadrature (12 sigma past a) otherwise.
double gaussian_tail_moment(int k, double a, const GaussianParams& params = {},
                            const QuadratureSpec& spec = {});

// Adaptive Simpson on [a, b]. Throws numeric_error (carrying the best estimate
// and the error actually reached) if the subdivision budget runs out before
// the requested tolerance, or if the integrand goes non-finite.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

// Root of a monotone f on [lo, hi] to within an x-width of tol. Alternates a
// secant step with a bisection step so the bracket provably halves every two
// iterations. Endpoint zeros are accepted; otherwise f(lo) and f(hi) must
// differ in sign or a bracketing_error is thrown.
double find_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

// Kahan-Babuska (Neumaier) compensated accumulator.
struct neumaier_sum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace splinequant
