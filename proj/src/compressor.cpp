#include "splinequant/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace splinequant {

namespace {

constexpr double kSqrt6 = 2.449489742783178;
constexpr double kTwoOverSqrtPi = 1.1283791670955126;

void require_finite_arg(double v, const char* what) {
    if (!std::isfinite(v)) throw domain_error(std::string(what) + " must be finite");
}

}  // namespace

void SegmentGrid::validate() const {
    if (knots.size() != values.size() || knots.size() < 2)
        throw fit_error("grid needs matching knot/value sequences with at least one segment");
    if (knots.front() != 0.0 || values.front() != 0.0)
        throw fit_error("grid must start at the origin");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i]) || !std::isfinite(values[i]))
            throw fit_error("grid entries must be finite");
        if (!(knots[i] > knots[i - 1]) || !(values[i] > values[i - 1]))
            throw fit_error("grid knots and values must be strictly increasing");
    }
}

int SegmentGrid::piece_of_signal(double x) const {
    const auto it = std::lower_bound(knots.begin() + 1, knots.end(), x);
    return static_cast<int>(std::min(it - knots.begin(),
                                     static_cast<std::ptrdiff_t>(knots.size()) - 1));
}

int SegmentGrid::piece_of_compressed(double u) const {
    const auto it = std::lower_bound(values.begin() + 1, values.end(), u);
    return static_cast<int>(std::min(it - values.begin(),
                                     static_cast<std::ptrdiff_t>(values.size()) - 1));
}

OptimalCompressor::OptimalCompressor(double x_max, double sigma) : xmax_(x_max), sigma_(sigma) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw domain_error("x_max must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw domain_error("sigma must be positive");
    normalizer_ = std::erf(xmax_ / (kSqrt6 * sigma_));
}

double OptimalCompressor::evaluate(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    // Past the support the characteristic saturates at the edge value.
    const double mag = ax >= xmax_
                           ? xmax_
                           : xmax_ * (std::erf(ax / (kSqrt6 * sigma_)) / normalizer_);
    return std::copysign(mag, x);
}

double OptimalCompressor::derivative(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    if (ax > xmax_) throw domain_error("derivative is only defined on the support");
    const double z = ax / (kSqrt6 * sigma_);
    return xmax_ * kTwoOverSqrtPi * std::exp(-z * z) / (kSqrt6 * sigma_ * normalizer_);
}

double OptimalCompressor::inverse(double u) const {
    require_finite_arg(u, "inverse argument");
    const double au = std::abs(u);
    if (au > xmax_) throw domain_error("inverse argument outside [-x_max, x_max]");
    if (au == 0.0) return std::copysign(0.0, u);
    // The forward map hits x_max exactly at the edge; snap there rather than
    // asking the root finder to resolve a zero-width bracket. The slope at the
    // edge is bounded away from zero, so the snap costs well under 1e-12.
    if (au >= xmax_ * (1.0 - 4.0 * std::numeric_limits<double>::epsilon()))
        return std::copysign(xmax_, u);
    const auto fn = [this, au](double t) { return evaluate(t) - au; };
    const double root = find_root_monotone(fn, 0.0, xmax_, 1e-13 * xmax_);
    return std::copysign(root, u);
}

LinearSplineCompressor::LinearSplineCompressor(SegmentGrid grid, double sigma)
    : grid_(std::move(grid)), sigma_(sigma) {
    grid_.validate();
    slopes_.reserve(grid_.segments());
    for (int i = 1; i <= grid_.segments(); ++i)
        slopes_.push_back((grid_.values[i] - grid_.values[i - 1]) /
                          (grid_.knots[i] - grid_.knots[i - 1]));
}

double LinearSplineCompressor::evaluate(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    if (ax > x_max()) throw domain_error("argument outside the spline support");
    const int i = grid_.piece_of_signal(ax);
    return std::copysign(grid_.values[i] + slopes_[i - 1] * (ax - grid_.knots[i]), x);
}

double LinearSplineCompressor::derivative(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    if (ax > x_max()) throw domain_error("argument outside the spline support");
    return slopes_[grid_.piece_of_signal(ax) - 1];
}

double LinearSplineCompressor::inverse(double u) const {
    require_finite_arg(u, "inverse argument");
    const double au = std::abs(u);
    if (au > x_max()) throw domain_error("inverse argument outside [-x_max, x_max]");
    const int i = grid_.piece_of_compressed(au);
    return std::copysign(grid_.knots[i] + (au - grid_.values[i]) / slopes_[i - 1], u);
}

QuadraticSplineCompressor::QuadraticSplineCompressor(SegmentGrid grid, double sigma)
    : grid_(std::move(grid)), sigma_(sigma) {
    grid_.validate();
    if (grid_.segments() != 2)
        throw fit_error("second-degree fit is defined for exactly two segments");
    const double x1 = grid_.knots[1];
    const double x2 = grid_.knots[2];
    const double c1 = grid_.values[1];
    const double c2 = grid_.values[2];
    if (x1 == 0.0 || x1 == x2) throw fit_error("fit system is singular");

    // Direct elimination: the terminal piece is pinned by interpolation at
    // both knots plus zero slope at x2, then continuity conditions at x1
    // determine the inner piece (which has a1 = 0 by the origin constraint).
    const double d2 = (c1 - c2) / ((x2 - x1) * (x2 - x1));
    const double b2 = -2.0 * d2 * x2;
    const double a2 = c2 + d2 * x2 * x2;
    const double slope1 = b2 + 2.0 * d2 * x1;  // shared slope at the interior knot
    const double d1 = (slope1 * x1 - c1) / (x1 * x1);
    const double b1 = slope1 - 2.0 * d1 * x1;
    pieces_ = {{0.0, b1, d1}, {a2, b2, d2}};
}

double QuadraticSplineCompressor::evaluate(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    if (ax > x_max()) throw domain_error("argument outside the spline support");
    const QuadPiece& p = pieces_[grid_.piece_of_signal(ax) - 1];
    return std::copysign(p.a + (p.b + p.d * ax) * ax, x);
}

double QuadraticSplineCompressor::derivative(double x) const {
    require_finite_arg(x, "compressor argument");
    const double ax = std::abs(x);
    if (ax > x_max()) throw domain_error("argument outside the spline support");
    const QuadPiece& p = pieces_[grid_.piece_of_signal(ax) - 1];
    return p.b + 2.0 * p.d * ax;
}

double QuadraticSplineCompressor::invert_piece(int piece, double u) const {
    const QuadPiece& p = pieces_[piece - 1];
    const double xl = grid_.knots[piece - 1];
    const double xr = grid_.knots[piece];
    if (std::abs(p.d) < 1e-12) return (u - p.a) / p.b;
    double disc = p.b * p.b - 4.0 * p.d * (p.a - u);
    if (disc < 0.0) disc = 0.0;  // rounding near the terminal vertex
    const double q = -0.5 * (p.b + std::copysign(std::sqrt(disc), p.b));
    const double tol = 1e-9 * x_max();
    for (const double r : {q / p.d, (p.a - u) / q}) {
        if (r >= xl - tol && r <= xr + tol) return std::clamp(r, xl, xr);
    }
    throw error("second-degree inversion found no in-range root");
}

double QuadraticSplineCompressor::inverse(double u) const {
    require_finite_arg(u, "inverse argument");
    const double au = std::abs(u);
    if (au > x_max()) throw domain_error("inverse argument outside [-x_max, x_max]");
    // The terminal piece has zero slope at x_max, so the inverse has a
    // square-root singularity there; snap the edge to keep it exact.
    if (std::abs(au - x_max()) <= 1e-12 * x_max()) return std::copysign(x_max(), u);
    return std::copysign(invert_piece(grid_.piece_of_compressed(au), au), u);
}

}  // namespace splinequant
