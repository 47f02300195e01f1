#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "splinequant/errors.hpp"
#include "splinequant/numerics.hpp"

namespace splinequant {

// Knot positions and compressor values on the positive half-axis,
// knots[0] = 0 .. knots[L] = x_max, values[0] = 0 .. values[L] = x_max.
struct SegmentGrid {
    std::vector<double> knots;
    std::vector<double> values;

    double x_max() const { return knots.back(); }
    int segments() const { return static_cast<int>(knots.size()) - 1; }

    // Throws fit_error unless both sequences are strictly increasing from 0
    // and equally sized with at least one segment.
    void validate() const;

    // Smallest piece index i (1-based) with x <= knots[i]; ties at a knot
    // resolve to the left piece. Precondition: 0 <= x <= x_max().
    int piece_of_signal(double x) const;

    // Same rule in the compressed coordinate, against values[].
    int piece_of_compressed(double u) const;
};

// Odd, monotone compressor characteristic on [-x_max, x_max].
class Compressor {
  public:
    virtual ~Compressor() = default;

    // Odd extension; inputs beyond the support clamp to +-x_max for evaluate.
    virtual double evaluate(double x) const = 0;
    // Even extension; |x| must lie inside the support.
    virtual double derivative(double x) const = 0;
    // Odd extension of the inverse map; |u| must lie inside [0, x_max].
    virtual double inverse(double u) const = 0;

    virtual double x_max() const = 0;
    virtual double sigma() const = 0;
    virtual std::string_view kind() const = 0;
};

// c(x) = x_max * erf(|x|/(sqrt(6) sigma)) / erf(x_max/(sqrt(6) sigma)), signed.
class OptimalCompressor final : public Compressor {
  public:
    OptimalCompressor(double x_max, double sigma);

    double evaluate(double x) const override;
    double derivative(double x) const override;
    double inverse(double u) const override;
    double x_max() const override { return xmax_; }
    double sigma() const override { return sigma_; }
    std::string_view kind() const override { return "optimal"; }

  private:
    double xmax_;
    double sigma_;
    double normalizer_;  // erf(x_max / (sqrt(6) sigma))
};

// First-degree interpolating spline through the grid values.
class LinearSplineCompressor final : public Compressor {
  public:
    explicit LinearSplineCompressor(SegmentGrid grid, double sigma = 1.0);

    double evaluate(double x) const override;
    double derivative(double x) const override;
    double inverse(double u) const override;
    double x_max() const override { return grid_.x_max(); }
    double sigma() const override { return sigma_; }
    std::string_view kind() const override { return "linear_spline"; }

    const SegmentGrid& grid() const { return grid_; }
    const std::vector<double>& slopes() const { return slopes_; }

  private:
    SegmentGrid grid_;
    double sigma_;
    std::vector<double> slopes_;
};

struct QuadPiece {
    double a;
    double b;
    double d;  // piece i evaluates to a + b x + d x^2
};

// Second-degree spline over exactly two segments: interpolates the grid,
// C^1 at the interior knot, zero value at 0, zero slope at x_max.
class QuadraticSplineCompressor final : public Compressor {
  public:
    explicit QuadraticSplineCompressor(SegmentGrid grid, double sigma = 1.0);

    double evaluate(double x) const override;
    double derivative(double x) const override;
    double inverse(double u) const override;
    double x_max() const override { return grid_.x_max(); }
    double sigma() const override { return sigma_; }
    std::string_view kind() const override { return "quadratic_spline"; }

    const SegmentGrid& grid() const { return grid_; }
    const std::vector<QuadPiece>& pieces() const { return pieces_; }

  private:
    double invert_piece(int piece, double u) const;

    SegmentGrid grid_;
    double sigma_;
    std::vector<QuadPiece> pieces_;
};

}  // namespace splinequant
