#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stablegov/normal.hpp"
#include "stablegov/valuation.hpp"

namespace stablegov {

/// Bracket edge offset for rate root-finding: 1e-12 * max(1, b).
double rate_bracket_margin(const ModelParams& params);

/// Ratios (e^{b-delta} - 1)/(e^b - 1) and its complement, computed without
/// cancellation and clamped to [1e-15, 1 - 1e-15].
struct RateRatio {
    double lower;
    double upper;
};
RateRatio rate_ratio(const ModelParams& params, double rate);

/// Phi^-1 of the rate ratio: the normalised shortfall quantile of the vault's
/// first-order condition.
double best_response_quantile(const ModelParams& params, double rate);

struct BestResponse {
    double issuance;
    bool diverges;  // rate <= 0: issuance is +inf
};

/// The vault's unconstrained optimal issuance
///   N exp(sigma Phi^-1((e^{b-delta} - 1)/(e^b - 1)) - delta - sigma^2/2).
/// Returns 0 for rate >= b and a diverging +inf for rate <= 0.
BestResponse unconstrained_issuance(const ModelParams& params, double rate);

/// d(unconstrained_issuance)/d(rate) on (0, b).
double unconstrained_issuance_slope(const ModelParams& params, double rate);

/// min(unconstrained_issuance, beta N). Requires rate > 0.
double optimal_issuance(const ModelParams& params, double rate);

/// Rate above which fee revenue on the unconstrained branch is concave:
/// b - log((e^b + 1) / 2).
double concavity_threshold(const ModelParams& params);

/// Rate at which the unconstrained issuance meets the leverage cap beta N.
/// When the crossing lies closer to b than the bracket margin (tiny beta at low
/// volatility), the upper bracket edge is returned.
double leverage_threshold(const ModelParams& params);

/// sigma (e^b - e^{b-delta}) / ((e^b - 1) phi(Phi^-1(ratio))) - 1. Zero at the
/// interior optimum; strictly increasing in the rate.
double interior_optimality_residual(const ModelParams& params, double rate);

/// dG/ddelta on the unconstrained branch, where G = unconstrained_issuance * (e^delta - 1).
double gov_marginal_revenue(const ModelParams& params, double rate);

/// Root of the interior first-order condition on (concavity_threshold, b).
/// Throws InfeasibleError when sigma >= 2 phi(0).
double optimal_interior_rate(const ModelParams& params);

/// V at (unconstrained_issuance(rate), rate) in closed form:
/// N e^{sigma^2/2} + N Phi(-d1) (e^b - 1) with d1 = sigma - Phi^-1(ratio).
double vault_value_at_best_response(const ModelParams& params, double rate);

struct AssumptionCheck {
    bool holds;
    double margin;
};

struct AssumptionReport {
    AssumptionCheck volatility;         // 2 phi(0) - sigma > 0
    AssumptionCheck collateral_factor;  // (e^b + 1)/2 exp(-b - sigma^2/2) - beta > 0
    AssumptionCheck participation;      // V(interior rate) - u >= 0

    bool all_hold() const noexcept {
        return volatility.holds && collateral_factor.holds && participation.holds;
    }
};

/// Participation is checked at the interior rate; without one its margin is NaN.
AssumptionReport check_assumptions(const ModelParams& params, std::optional<double> interior_rate);

struct Thresholds {
    double leverage_rate;                 // delta_beta
    double concavity_rate;                // delta_th
    std::optional<double> interior_rate;  // delta*, absent when sigma >= 2 phi(0)
};

enum class Regime { Interior, LeverageBound };

std::string_view to_string(Regime regime);

struct Equilibrium {
    double rate;
    double issuance;
    double gov_value;
    double vault_value;
    double price;
    Regime regime;
    bool feasible;
};

struct EquilibriumSolution {
    Thresholds thresholds;
    AssumptionReport assumptions;
    Equilibrium equilibrium;
    std::string diagnosis;  // empty when feasible
};

/// Stackelberg equilibrium: governance sets the rate anticipating the vault's
/// leverage-capped best response.
///
/// Fee revenue rises on the leverage-capped branch up to delta_beta and is
/// single-peaked at delta* on the unconstrained branch, so governance picks
/// delta* when delta* > delta_beta (INTERIOR) and delta_beta otherwise
/// (LEVERAGE_BOUND). The result is feasible when the three assumptions hold at
/// the chosen point (participation is evaluated there) and, for INTERIOR, the
/// ordering delta_th < delta_beta < delta* <= b holds.
///
/// A failed volatility assumption leaves no interior rate: the rate is NaN and
/// the vault does not participate. A failed participation constraint keeps the
/// chosen rate but reports non-participation: F = 0, G = 0, V = u, B = 1.
EquilibriumSolution solve_equilibrium(const ModelParams& params);

}  // namespace stablegov
