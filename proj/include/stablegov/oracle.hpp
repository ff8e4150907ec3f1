#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "stablegov/valuation.hpp"

// Brute-force verification of the closed forms: Monte Carlo estimators of each
// expectation and grid searches over both agents' objectives.
namespace stablegov::oracle {

inline constexpr std::size_t kMinSamples = 1000;
inline constexpr std::size_t kMinGridPoints = 10000;

/// Samples are drawn in fixed-size blocks, each from its own engine seeded by
/// (seed, block index). Block statistics are merged in block order, so an
/// estimate depends only on (seed, n) and never on the thread count.
inline constexpr std::size_t kBlockSize = std::size_t{1} << 16;

struct McEstimate {
    double mean;
    double std_error;  // sample standard deviation / sqrt(n)
    std::size_t n_samples;
    std::uint64_t seed;
};

struct GridResult {
    double arg_best;
    double best_value;
    double grid_lo;
    double grid_hi;
    std::size_t n_points;
    double step;  // grid spacing adjacent to arg_best
};

/// E[payoff(R)] for R ~ N(0, sigma^2); normals come from the inverse cdf of
/// uniforms on the open unit interval. threads == 0 picks the hardware count.
McEstimate mc_expectation(double sigma, std::size_t n, std::uint64_t seed,
                          const std::function<double(double)>& payoff, unsigned threads = 0);

/// max(0, F e^delta - N e^R).
McEstimate mc_shortfall(const ModelParams& params, const Position& pos, std::size_t n, std::uint64_t seed,
                        unsigned threads = 0);

/// min(1, N e^R / F - (e^delta - 1)). Requires F > 0.
McEstimate mc_price(const ModelParams& params, const Position& pos, std::size_t n, std::uint64_t seed,
                    unsigned threads = 0);

/// N e^R + F (B_i (e^b - 1) - (e^delta - 1)) with B_i the per-sample price
/// payoff above; the price leg vanishes when F = 0.
McEstimate mc_vault_objective(const ModelParams& params, const Position& pos, std::size_t n,
                              std::uint64_t seed, unsigned threads = 0);

/// (reference - estimate.mean) in standard errors. For a payoff confined to an
/// interval of width payoff_range, the standard error is floored at
/// payoff_range * sqrt(3) / n: a sample with no tail hits only bounds the hit
/// probability by about 3/n, so a zero sample spread is not taken at face value.
double standardized_deviation(double reference, const McEstimate& estimate, double payoff_range);

/// argmax over F of vault_objective at the given rate on a log-spaced grid
/// over [1e-4 N, 10 N]. Requires 0 < rate < b.
GridResult grid_vault_best_f(const ModelParams& params, double rate, std::size_t n_points);

/// argmax over delta of optimal_issuance(delta) (e^delta - 1) on a uniform
/// grid over [1e-9, b].
GridResult grid_gov_best_delta(const ModelParams& params, std::size_t n_points);

}  // namespace stablegov::oracle
