#include "splinequant/distortion.hpp"

#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <vector>

namespace splinequant {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kSqrtTwoOverPi = 0.7978845608028654;

}  // namespace

double granular_distortion(const Codebook& codebook, const Compressor& model,
                           const GaussianParams& params) {
    const int n = codebook.levels;
    neumaier_sum acc;
    for (std::size_t k = 0; k < codebook.inner_levels.size(); ++k) {
        const double y = codebook.inner_levels[k];
        const double slope = model.derivative(y);
        if (slope == 0.0) throw error("compressor slope vanished at a reproduction level");
        acc.add(gaussian_pdf(y, params) / (slope * slope) * codebook.cell_lengths[k]);
    }
    const double scale =
        2.0 * codebook.x_max * codebook.x_max / (3.0 * (n - 2.0) * (n - 2.0));
    const double result = scale * acc.value();
    if (!std::isfinite(result))
        throw numeric_error("granular distortion overflowed", result, 0.0);
    return result;
}

double granular_distortion_oracle(const Codebook& codebook, const GaussianParams& params,
                                  const QuadratureSpec& spec) {
    neumaier_sum acc;
    for (std::size_t k = 0; k < codebook.inner_levels.size(); ++k) {
        const double y = codebook.inner_levels[k];
        const double lo = codebook.cell_edges[k];
        const double hi = codebook.cell_edges[k + 1];
        acc.add(adaptive_quadrature(
            [y, &params](double x) {
                const double e = x - y;
                return e * e * gaussian_pdf(x, params);
            },
            lo, hi, spec));
    }
    return 2.0 * acc.value();
}

double overload_distortion_exact(double x_max, double y_max, const GaussianParams& params) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw domain_error("x_max must be positive");
    if (!std::isfinite(y_max)) throw domain_error("y_max must be finite");
    const double m0 = gaussian_tail_moment(0, x_max, params);
    const double m1 = gaussian_tail_moment(1, x_max, params);
    const double m2 = gaussian_tail_moment(2, x_max, params);
    return 2.0 * (m2 - 2.0 * y_max * m1 + y_max * y_max * m0);
}

double overload_distortion_closed(double x_max) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw domain_error("x_max must be positive");
    return kSqrtTwoOverPi * std::exp(-0.5 * x_max * x_max) / (x_max * x_max * x_max);
}

double sqnr_db(double total_distortion, const GaussianParams& params) {
    if (!(total_distortion > 0.0) || !std::isfinite(total_distortion))
        throw domain_error("distortion must be positive to form an SQNR");
    return 10.0 * std::log10(params.sigma * params.sigma / total_distortion);
}

DistortionReport evaluate_design(const DesignConfig& config, const Compressor& model,
                                 const Codebook& codebook) {
    const GaussianParams params{config.sigma};
    DistortionReport report;
    report.granular = granular_distortion(codebook, model, params);
    report.overload_exact = overload_distortion_exact(codebook.x_max, codebook.y_max, params);
    // The asymptotic form is printed for unit variance; rescale dimensionally.
    report.overload_closed = config.sigma * config.sigma *
                             overload_distortion_closed(codebook.x_max / config.sigma);
    report.total = report.granular + report.overload_exact;
    report.sqnr_db = sqnr_db(report.total, params);
    return report;
}

DistortionReport evaluate_design(const DesignConfig& config) {
    config.validate();
    const auto model = make_compressor(config);
    const Codebook codebook = build_codebook(config, *model);
    return evaluate_design(config, *model, codebook);
}

double quantize_sample(double x, const Codebook& codebook, const Compressor& model) {
    if (!std::isfinite(x)) throw domain_error("sample must be finite");
    const double ax = std::abs(x);
    if (ax > codebook.x_max) return std::copysign(codebook.y_max, x);
    const double u = model.evaluate(ax);
    const auto k = static_cast<std::size_t>(u / codebook.step);
    const std::size_t idx = std::min(k, codebook.inner_levels.size() - 1);
    return std::copysign(codebook.inner_levels[idx], x);
}

namespace {

// splitmix64 finalizer; draw i is a pure function of (seed, i).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t stream_draw(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
}

inline double gaussian_draw(std::uint64_t seed, std::uint64_t sample_index, double sigma) {
    const std::uint64_t r1 = stream_draw(seed, 2 * sample_index);
    const std::uint64_t r2 = stream_draw(seed, 2 * sample_index + 1);
    const double u1 = ((r1 >> 11) + 1) * 0x1p-53;  // (0, 1], keeps the log finite
    const double u2 = (r2 >> 11) * 0x1p-53;        // [0, 1)
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

struct shard_partial {
    double sum_sq;
    double sum_quad;
};

shard_partial run_shard(const Codebook& cb, const Compressor& model, std::uint64_t seed,
                        double sigma, std::uint64_t begin, std::uint64_t end) {
    neumaier_sum sq;
    neumaier_sum quad;
    for (std::uint64_t j = begin; j < end; ++j) {
        const double x = gaussian_draw(seed, j, sigma);
        const double e = x - quantize_sample(x, cb, model);
        const double e2 = e * e;
        sq.add(e2);
        quad.add(e2 * e2);
    }
    return {sq.value(), quad.value()};
}

constexpr const char* kGeneratorName = "splitmix64-counter/box-muller";

}  // namespace

MonteCarloReport summarize_mse(double sum_sq, double sum_quad, std::uint64_t samples,
                               std::uint64_t seed, int shards, double sigma) {
    if (samples == 0) throw domain_error("sample count must be positive");
    MonteCarloReport report;
    report.samples = samples;
    report.seed = seed;
    report.shards = shards;
    report.generator = kGeneratorName;
    const double n = static_cast<double>(samples);
    report.mse = sum_sq / n;
    if (report.mse == 0.0) {
        report.empirical_sqnr_db = std::numeric_limits<double>::infinity();
        report.std_error_db = 0.0;
        return report;
    }
    const double second_moment_of_sq = sum_quad / n;
    const double var_sq = std::max(second_moment_of_sq - report.mse * report.mse, 0.0);
    const double se_mse = std::sqrt(var_sq / n);
    report.empirical_sqnr_db = 10.0 * std::log10(sigma * sigma / report.mse);
    report.std_error_db = 10.0 / std::log(10.0) * se_mse / report.mse;
    return report;
}

MonteCarloReport monte_carlo_sqnr(const DesignConfig& config, std::uint64_t samples,
                                  std::uint64_t seed, int shards) {
    config.validate();
    if (samples == 0) throw config_error("sample count must be positive");
    if (shards < 1) throw config_error("shard count must be positive");
    const auto model = make_compressor(config);
    const Codebook cb = build_codebook(config, *model);

    const auto s = static_cast<std::uint64_t>(shards);
    std::vector<shard_partial> partials(shards);
    if (shards == 1) {
        partials[0] = run_shard(cb, *model, seed, config.sigma, 0, samples);
    } else {
        // Fixed partition of the index range: shard i gets one extra sample
        // while i < samples % shards. Merging in shard order keeps the result
        // reproducible for a given shard count.
        std::vector<std::future<shard_partial>> jobs;
        jobs.reserve(shards);
        std::uint64_t begin = 0;
        for (std::uint64_t i = 0; i < s; ++i) {
            const std::uint64_t count = samples / s + (i < samples % s ? 1 : 0);
            jobs.push_back(std::async(std::launch::async, run_shard, std::cref(cb),
                                      std::cref(*model), seed, config.sigma, begin,
                                      begin + count));
            begin += count;
        }
        for (int i = 0; i < shards; ++i) partials[i] = jobs[i].get();
    }

    neumaier_sum sq;
    neumaier_sum quad;
    for (const auto& p : partials) {
        sq.add(p.sum_sq);
        quad.add(p.sum_quad);
    }
    return summarize_mse(sq.value(), quad.value(), samples, seed, shards, config.sigma);
}

}  // namespace splinequant
