#pragma once

#include <memory>
#include <string>
#include <vector>

#include "splinequant/compressor.hpp"

namespace splinequant {

// Enumerator order is the canonical report/table column order.
enum class ModelKind { linear_spline, quadratic_spline, optimal };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);  // config_error on unknown

struct DesignConfig {
    int levels = 128;  // N, total reproduction levels, even, >= 8
    int segments = 2;  // spline segments per half-axis
    double sigma = 1.0;
    ModelKind model = ModelKind::quadratic_spline;

    void validate() const;  // throws config_error
};

// Support edge x_max(N, sigma); requires N >= 4, sigma > 0.
double support_threshold(int levels, double sigma);

// Equally spaced knots on [0, x_max] with values from the smooth optimal
// characteristic at the same (x_max, sigma).
SegmentGrid build_segment_grid(const DesignConfig& config);

struct LevelAllocation {
    std::vector<double> exact_shares;  // per segment, sums to (N-2)/2
    std::vector<int> counts;           // per segment, sums to (N-2)/2
};

// Splits the (N-2)/2 half-axis inner levels across segments in proportion to
// compressed-domain arc length; integer counts come from binning the level
// midpoints (2k-1)*step/2 into (values[i-1], values[i]].
LevelAllocation allocate_levels(const SegmentGrid& grid, int levels);

// Tail centroid E[X | X > x_max]; requires finite x_max >= 0.
double centroid_overload_level(double x_max, const GaussianParams& params = {});

struct Codebook {
    int levels = 0;  // N
    double x_max = 0.0;
    double step = 0.0;                 // uniform width in the compressed domain
    std::vector<double> inner_levels;  // positive half, ascending
    std::vector<int> level_segments;   // 1-based segment tag per inner level
    std::vector<double> cell_edges;    // t_0 = 0 .. t_{(N-2)/2} = x_max
    std::vector<double> cell_lengths;  // step / derivative at each inner level
    double y_max = 0.0;                // overload reproduction level
    std::vector<int> per_segment_counts;
    std::vector<double> exact_shares;
};

std::unique_ptr<Compressor> make_compressor(const DesignConfig& config);

Codebook build_codebook(const DesignConfig& config, const Compressor& model);

}  // namespace splinequant
