#include "stablegov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "stablegov/equilibrium.hpp"
#include "stablegov/errors.hpp"
#include "stablegov/normal.hpp"

namespace stablegov::oracle {

namespace {

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double n = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
    }
};

double open_unit_uniform(std::uint64_t bits) {
    // 53 random bits centred in their cell: never 0 or 1.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

Moments run_block(double sigma, std::uint64_t seed, std::size_t block, std::size_t count,
                  const std::function<double(double)>& payoff) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 engine(seq);
    Moments moments;
    for (std::size_t i = 0; i < count; ++i) {
        const double z = math::std_normal_inv_cdf(math::Probability(open_unit_uniform(engine())));
        moments.add(payoff(sigma * z));
    }
    return moments;
}

void require_samples(std::size_t n) {
    if (n < kMinSamples) {
        throw DomainError("Monte Carlo sample count must be >= " + std::to_string(kMinSamples) + ", got " +
                          std::to_string(n));
    }
}

void require_grid(std::size_t n_points) {
    if (n_points < kMinGridPoints) {
        throw DomainError("grid must have >= " + std::to_string(kMinGridPoints) + " points, got " +
                          std::to_string(n_points));
    }
}

template <class PointAt, class Objective>
GridResult grid_argmax(std::size_t n_points, PointAt point_at, Objective objective) {
    std::size_t best = 0;
    double best_value = objective(point_at(0));
    for (std::size_t i = 1; i < n_points; ++i) {
        const double value = objective(point_at(i));
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    const double step = best + 1 < n_points ? point_at(best + 1) - point_at(best)
                                            : point_at(best) - point_at(best - 1);
    return {point_at(best), best_value, point_at(0), point_at(n_points - 1), n_points, step};
}

}  // namespace

McEstimate mc_expectation(double sigma, std::size_t n, std::uint64_t seed,
                          const std::function<double(double)>& payoff, unsigned threads) {
    require_samples(n);
    if (!(sigma > 0.0)) {
        throw DomainError("mc_expectation: sigma must be > 0");
    }
    const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> partial(blocks);
    const auto block_size = [&](std::size_t k) { return std::min(kBlockSize, n - k * kBlockSize); };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
    if (workers <= 1) {
        for (std::size_t k = 0; k < blocks; ++k) partial[k] = run_block(sigma, seed, k, block_size(k), payoff);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < blocks; k += workers) {
                    partial[k] = run_block(sigma, seed, k, block_size(k), payoff);
                }
            });
        }
    }

    Moments total;
    for (const Moments& m : partial) total.merge(m);
    const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    return {total.mean, std::sqrt(variance / static_cast<double>(total.count)), n, seed};
}

McEstimate mc_shortfall(const ModelParams& params, const Position& pos, std::size_t n, std::uint64_t seed,
                        unsigned threads) {
    params.validate();
    pos.validate();
    require_samples(n);
    const double strike = pos.issuance * std::exp(pos.rate);
    const double collateral = params.collateral;
    return mc_expectation(params.volatility, n, seed,
                          [=](double r) { return std::max(0.0, strike - collateral * std::exp(r)); }, threads);
}

McEstimate mc_price(const ModelParams& params, const Position& pos, std::size_t n, std::uint64_t seed,
                    unsigned threads) {
    params.validate();
    pos.validate();
    if (!(pos.issuance > 0.0)) {
        throw DomainError("mc_price: F must be > 0");
    }
    require_samples(n);
    const double coverage = params.collateral / pos.issuance;
    const double interest = std::expm1(pos.rate);
    return mc_expectation(params.volatility, n, seed,
                          [=](double r) { return std::min(1.0, coverage * std::exp(r) - interest); }, threads);
}

McEstimate mc_vault_objective(const ModelParams& params, const Position& pos, std::size_t n,
                              std::uint64_t seed, unsigned threads) {
    params.validate();
    pos.validate();
    require_samples(n);
    const double collateral = params.collateral;
    const double issuance = pos.issuance;
    const double interest = std::expm1(pos.rate);
    const double outside = std::expm1(params.outside_rate);
    return mc_expectation(
        params.volatility, n, seed,
        [=](double r) {
            const double col = collateral * std::exp(r);
            if (issuance == 0.0) return col;
            const double price = std::min(1.0, col / issuance - interest);
            return col + issuance * (price * outside - interest);
        },
        threads);
}

double standardized_deviation(double reference, const McEstimate& estimate, double payoff_range) {
    const double floor = std::abs(payoff_range) * std::sqrt(3.0) / static_cast<double>(estimate.n_samples);
    const double resolution = std::max(estimate.std_error, floor);
    return (reference - estimate.mean) / resolution;
}

GridResult grid_vault_best_f(const ModelParams& params, double rate, std::size_t n_points) {
    params.validate();
    require_grid(n_points);
    if (!(rate > 0.0 && rate < params.outside_rate)) {
        throw DomainError("grid_vault_best_f: rate must lie in (0, b)");
    }
    const double log_lo = std::log(1e-4 * params.collateral);
    const double log_hi = std::log(10.0 * params.collateral);
    const double log_step = (log_hi - log_lo) / static_cast<double>(n_points - 1);
    const auto point_at = [=](std::size_t i) { return std::exp(log_lo + log_step * static_cast<double>(i)); };
    return grid_argmax(n_points, point_at,
                       [&](double issuance) { return vault_objective(params, {issuance, rate}); });
}

GridResult grid_gov_best_delta(const ModelParams& params, std::size_t n_points) {
    params.validate();
    require_grid(n_points);
    const double lo = 1e-9;
    const double hi = params.outside_rate;
    if (!(hi > lo)) {
        throw DomainError("grid_gov_best_delta: b must exceed the grid floor 1e-9");
    }
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    const auto point_at = [=](std::size_t i) {
        return i + 1 == n_points ? hi : lo + step * static_cast<double>(i);
    };
    return grid_argmax(n_points, point_at,
                       [&](double rate) { return optimal_issuance(params, rate) * std::expm1(rate); });
}

}  // namespace stablegov::oracle
