#pragma once

#include <stdexcept>
#include <string>

namespace splinequant {

// Base type for everything this library throws, so callers can catch one thing.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (non-finite input, |u| beyond support).
struct domain_error : error {
    using error::error;
};

// Rejected design configuration (odd N, N too small, sigma <= 0, ...).
struct config_error : error {
    using error::error;
};

// Degenerate spline geometry (coincident knots, singular fit system).
struct fit_error : error {
    using error::error;
};

// Iterative numeric process ran out of budget; carries the best estimate so far.
struct numeric_error : error {
    numeric_error(const std::string& what, double best, double achieved)
        : error(what), best_estimate(best), achieved_tolerance(achieved) {}

    double best_estimate;
    double achieved_tolerance;
};

// Root bracket endpoints do not straddle a sign change.
struct bracketing_error : error {
    using error::error;
};

}  // namespace splinequant
