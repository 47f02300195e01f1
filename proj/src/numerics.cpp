#include "splinequant/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace splinequant {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw domain_error(std::string(what) + " must be finite");
}

}  // namespace

double erf(double u) {
    require_finite(u, "erf argument");
    return std::erf(u);
}

double erfc(double u) {
    require_finite(u, "erfc argument");
    return std::erfc(u);
}

double gaussian_pdf(double t, const GaussianParams& params) {
    require_finite(t, "density argument");
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma))
        throw domain_error("sigma must be positive and finite");
    const double z = t / params.sigma;
    return std::exp(-0.5 * z * z) / (params.sigma * kSqrt2Pi);
}

namespace {

struct simpson_ctx {
    const std::function<double(double)>& f;
    double tolerance;
    int max_depth;
    double overshoot = 0.0;  // accumulated error estimate past the depth budget
};

double eval_checked(simpson_ctx& ctx, double t) {
    const double v = ctx.f(t);
    if (!std::isfinite(v))
        throw numeric_error("integrand produced a non-finite value", 0.0,
                            std::numeric_limits<double>::infinity());
    return v;
}

double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double simpson_recurse(simpson_ctx& ctx, double a, double m, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_checked(ctx, lm);
    const double frm = eval_checked(ctx, rm);
    const double left = simpson_panel(a, m, fa, flm, fm);
    const double right = simpson_panel(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    // Halving the tolerance forever is futile once it falls below the roundoff
    // floor of the panel values; treat that like an exhausted budget.
    const double noise = 32.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(left) + std::abs(right));
    if (std::abs(delta) <= 15.0 * tol || depth >= ctx.max_depth || 15.0 * tol < noise) {
        if (std::abs(delta) > 15.0 * tol) ctx.overshoot += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(ctx, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(ctx, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    require_finite(a, "integration endpoint");
    require_finite(b, "integration endpoint");
    if (!(a < b)) throw domain_error("integration interval must satisfy a < b");
    if (!(spec.absolute_tolerance > 0.0))
        throw domain_error("quadrature tolerance must be positive");
    if (spec.max_subdivisions < 1) throw domain_error("subdivision budget must be >= 1");

    simpson_ctx ctx{f, spec.absolute_tolerance, spec.max_subdivisions, 0.0};
    const double m = 0.5 * (a + b);
    const double fa = eval_checked(ctx, a);
    const double fm = eval_checked(ctx, m);
    const double fb = eval_checked(ctx, b);
    const double whole = simpson_panel(a, b, fa, fm, fb);
    const double result =
        simpson_recurse(ctx, a, m, b, fa, fm, fb, whole, spec.absolute_tolerance, 1);
    if (ctx.overshoot > spec.absolute_tolerance)
        throw numeric_error("quadrature subdivision budget exhausted", result, ctx.overshoot);
    return result;
}

double gaussian_tail_moment(int k, double a, const GaussianParams& params,
                            const QuadratureSpec& spec) {
    if (k < 0 || k > 2) throw domain_error("tail moment order must be 0, 1, or 2");
    require_finite(a, "tail moment lower limit");
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma))
        throw domain_error("sigma must be positive and finite");

    if (params.sigma == 1.0) {
        const double q = 0.5 * std::erfc(a / kSqrt2);
        if (k == 0) return q;
        const double phi = std::exp(-0.5 * a * a) / kSqrt2Pi;
        if (k == 1) return phi;
        return a * phi + q;
    }
    const auto integrand = [k, &params](double t) {
        double w = gaussian_pdf(t, params);
        for (int i = 0; i < k; ++i) w *= t;
        return w;
    };
    return adaptive_quadrature(integrand, a, a + 12.0 * params.sigma, spec);
}

double find_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    require_finite(lo, "bracket endpoint");
    require_finite(hi, "bracket endpoint");
    if (!(lo < hi)) throw domain_error("bracket must satisfy lo < hi");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw domain_error("tolerance must be positive");

    double flo = f(lo);
    double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw numeric_error("non-finite value at a bracket endpoint", 0.5 * (lo + hi), hi - lo);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw bracketing_error("bracket endpoints do not straddle a sign change");

    for (int it = 0; it < 256 && (hi - lo) > tol; ++it) {
        double x;
        if (it % 2 == 0) {
            // Secant through the bracket, falling back to the midpoint when the
            // interpolant lands outside (it cannot land on an endpoint without
            // f being flat there, which monotonicity rules out).
            x = (hi * flo - lo * fhi) / (flo - fhi);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw numeric_error("non-finite value during root refinement", x, hi - lo);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace splinequant
