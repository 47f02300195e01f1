#pragma once

#include <cstdint>
#include <string>

#include "splinequant/design.hpp"

namespace splinequant {

struct DistortionReport {
    double granular = 0.0;
    double overload_exact = 0.0;
    double overload_closed = 0.0;
    double total = 0.0;  // granular + overload_exact
    double sqnr_db = 0.0;
};

// Companding (Bennett-style) granular estimate over the inner cells:
// 2 x_max^2 / (3 (N-2)^2) * sum p(y) / g'(y)^2 * cell_length.
double granular_distortion(const Codebook& codebook, const Compressor& model,
                           const GaussianParams& params = {});

// Reference route: 2 * sum_k integral over [t_{k-1}, t_k] of (x - y_k)^2 p(x) dx.
double granular_distortion_oracle(const Codebook& codebook, const GaussianParams& params = {},
                                  const QuadratureSpec& spec = {});

// 2 * [M2(x_max) - 2 y_max M1(x_max) + y_max^2 M0(x_max)], tail moments M_k.
double overload_distortion_exact(double x_max, double y_max, const GaussianParams& params = {});

// Asymptotic unit-variance form sqrt(2/pi) exp(-x_max^2/2) / x_max^3.
double overload_distortion_closed(double x_max);

// 10 log10(sigma^2 / total); requires total > 0.
double sqnr_db(double total_distortion, const GaussianParams& params = {});

DistortionReport evaluate_design(const DesignConfig& config);
DistortionReport evaluate_design(const DesignConfig& config, const Compressor& model,
                                 const Codebook& codebook);

// Round x to its reproduction level: overload inputs map to +-y_max, inner
// inputs to the level of the compressed-domain cell containing c(|x|).
// sgn(+0) = +1, so 0 maps to the smallest positive level.
double quantize_sample(double x, const Codebook& codebook, const Compressor& model);

struct MonteCarloReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int shards = 1;
    std::string generator;
    double mse = 0.0;
    double empirical_sqnr_db = 0.0;  // +inf when mse underflows to zero
    double std_error_db = 0.0;
};

// Folds compensated sums of e^2 and e^4 into the final report; exposed so the
// mse == 0 path is directly testable.
MonteCarloReport summarize_mse(double sum_sq, double sum_quad, std::uint64_t samples,
                               std::uint64_t seed, int shards, double sigma);

// Streams `samples` Gaussian draws through the quantizer and reports empirical
// SQNR with a delta-method standard error. The generator is counter-based
// (draw i depends only on seed and i), so results are reproducible for a fixed
// shard count; shards split the index range into contiguous blocks merged in
// shard order.
MonteCarloReport monte_carlo_sqnr(const DesignConfig& config, std::uint64_t samples,
                                  std::uint64_t seed, int shards = 1);

}  // namespace splinequant
