#pragma once

// Shared helpers for the unit and acceptance suites: seeded instance
// generators and finite-difference checks.

#include <algorithm>
#include <cmath>
#include <random>

#include "stablegov/normal.hpp"
#include "stablegov/valuation.hpp"

namespace stablegov::testing {

struct Instance {
    ModelParams params;
    Position pos;
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// sigma in [0.1, 0.75], b in [0.01, 0.5], delta in (0, b), F in (0, 2N].
inline Instance random_valuation_instance(std::mt19937_64& rng) {
    const double collateral = log_uniform(rng, 10.0, 1000.0);
    const double sigma = uniform(rng, 0.1, 0.75);
    const double b = uniform(rng, 0.01, 0.5);
    double rate = 0.0;
    while (rate <= 0.0) rate = uniform(rng, 0.0, b);
    double issuance = 0.0;
    while (issuance <= 0.0) issuance = uniform(rng, 0.0, 2.0 * collateral);
    return {{collateral, sigma, b, 1.0, 0.0}, {issuance, rate}};
}

/// Upper bound on beta for which delta_th < delta_beta.
inline double collateral_factor_bound(double sigma, double b) {
    return 0.5 * (std::exp(b) + 1.0) * std::exp(-b - 0.5 * sigma * sigma);
}

/// Parameters satisfying the volatility and collateral-factor assumptions,
/// with beta drawn from [0.2, 0.999] of its bound.
inline ModelParams random_model(std::mt19937_64& rng) {
    const double collateral = log_uniform(rng, 10.0, 1000.0);
    const double sigma = uniform(rng, 0.1, 0.75);
    const double b = uniform(rng, 0.01, 0.5);
    const double beta = uniform(rng, 0.2, 0.999) * collateral_factor_bound(sigma, b);
    return {collateral, sigma, b, beta, 0.0};
}

template <class Fn>
double central_difference(Fn&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// |numeric - analytic| / max(|analytic|, floor): relative error, measured
/// against a natural unit of the derivative when the derivative itself is
/// near zero.
inline double scaled_error(double analytic, double numeric, double floor) {
    return std::abs(numeric - analytic) / std::max(std::abs(analytic), floor);
}

}  // namespace stablegov::testing
