#include "splinequant/design.hpp"

#include <cmath>

namespace splinequant {

namespace {

constexpr double kLog3SqrtPi = 1.6709772315928098;  // ln(3 sqrt(pi))

}  // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::linear_spline: return "linear_spline";
        case ModelKind::quadratic_spline: return "quadratic_spline";
        case ModelKind::optimal: return "optimal";
    }
    throw config_error("unknown model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "linear" || name == "linear_spline") return ModelKind::linear_spline;
    if (name == "quadratic" || name == "quadratic_spline") return ModelKind::quadratic_spline;
    if (name == "optimal") return ModelKind::optimal;
    throw config_error("unknown model '" + name + "' (expected linear, quadratic, or optimal)");
}

void DesignConfig::validate() const {
    if (levels < 8) throw config_error("level count must be at least 8");
    if (levels % 2 != 0) throw config_error("level count must be even");
    if (segments < 1) throw config_error("segment count must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw config_error("sigma must be positive and finite");
}

double support_threshold(int levels, double sigma) {
    if (levels < 4) throw config_error("support threshold needs at least 4 levels");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw config_error("sigma must be positive and finite");
    const double ln_n = std::log(static_cast<double>(levels));
    const double correction =
        1.0 - std::log(ln_n) / (4.0 * ln_n) - kLog3SqrtPi / (2.0 * ln_n);
    return sigma * std::sqrt(6.0 * ln_n) * correction;
}

SegmentGrid build_segment_grid(const DesignConfig& config) {
    config.validate();
    const double xmax = support_threshold(config.levels, config.sigma);
    const OptimalCompressor smooth(xmax, config.sigma);
    SegmentGrid grid;
    grid.knots.reserve(config.segments + 1);
    grid.values.reserve(config.segments + 1);
    for (int i = 0; i <= config.segments; ++i) {
        const double x = i == config.segments ? xmax : i * xmax / config.segments;
        grid.knots.push_back(x);
        grid.values.push_back(smooth.evaluate(x));
    }
    grid.validate();
    return grid;
}

LevelAllocation allocate_levels(const SegmentGrid& grid, int levels) {
    grid.validate();
    if (levels < 4 || levels % 2 != 0)
        throw config_error("level allocation needs an even count of at least 4");
    const int half_inner = (levels - 2) / 2;
    const double step = 2.0 * grid.x_max() / (levels - 2);
    const double total = grid.values.back();

    LevelAllocation alloc;
    alloc.exact_shares.reserve(grid.segments());
    alloc.counts.assign(grid.segments(), 0);
    for (int i = 1; i <= grid.segments(); ++i)
        alloc.exact_shares.push_back(half_inner * (grid.values[i] - grid.values[i - 1]) / total);
    for (int k = 1; k <= half_inner; ++k) {
        const double u = 0.5 * (2 * k - 1) * step;
        ++alloc.counts[grid.piece_of_compressed(u) - 1];
    }
    return alloc;
}

double centroid_overload_level(double x_max, const GaussianParams& params) {
    if (!(x_max >= 0.0) || !std::isfinite(x_max)) throw domain_error("x_max must be >= 0");
    const double mass = gaussian_tail_moment(0, x_max, params);
    if (!(mass > 0.0))
        throw numeric_error("tail mass vanished; overload centroid undefined", 0.0, 0.0);
    return gaussian_tail_moment(1, x_max, params) / mass;
}

std::unique_ptr<Compressor> make_compressor(const DesignConfig& config) {
    config.validate();
    switch (config.model) {
        case ModelKind::optimal:
            return std::make_unique<OptimalCompressor>(
                support_threshold(config.levels, config.sigma), config.sigma);
        case ModelKind::linear_spline:
            return std::make_unique<LinearSplineCompressor>(build_segment_grid(config),
                                                            config.sigma);
        case ModelKind::quadratic_spline:
            return std::make_unique<QuadraticSplineCompressor>(build_segment_grid(config),
                                                               config.sigma);
    }
    throw config_error("unknown model kind");
}

Codebook build_codebook(const DesignConfig& config, const Compressor& model) {
    config.validate();
    const SegmentGrid grid = build_segment_grid(config);
    const int half_inner = (config.levels - 2) / 2;

    Codebook cb;
    cb.levels = config.levels;
    cb.x_max = grid.x_max();
    cb.step = 2.0 * cb.x_max / (config.levels - 2);
    cb.inner_levels.reserve(half_inner);
    cb.level_segments.reserve(half_inner);
    cb.cell_lengths.reserve(half_inner);
    cb.cell_edges.reserve(half_inner + 1);

    for (int k = 1; k <= half_inner; ++k) {
        const double u = 0.5 * (2 * k - 1) * cb.step;
        const double y = model.inverse(u);
        cb.inner_levels.push_back(y);
        // Segment membership is decided in the compressed coordinate, the same
        // rule allocate_levels bins by, so tags and counts agree by construction.
        cb.level_segments.push_back(grid.piece_of_compressed(u));
        cb.cell_lengths.push_back(cb.step / model.derivative(y));
    }

    cb.cell_edges.push_back(0.0);
    for (int k = 1; k <= half_inner; ++k) {
        // k * step only reaches x_max up to rounding; pin the last edge exactly.
        const double u = k == half_inner ? cb.x_max : k * cb.step;
        cb.cell_edges.push_back(model.inverse(u));
    }

    cb.y_max = centroid_overload_level(cb.x_max, {config.sigma});

    LevelAllocation alloc = allocate_levels(grid, config.levels);
    cb.per_segment_counts = std::move(alloc.counts);
    cb.exact_shares = std::move(alloc.exact_shares);
    return cb;
}

}  // namespace splinequant
