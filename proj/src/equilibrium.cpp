#include "stablegov/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stablegov/errors.hpp"
#include "stablegov/root_finding.hpp"

namespace stablegov {

namespace {

constexpr double kRatioClamp = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_unconstrained_issuance(const ModelParams& params, double rate) {
    const double sigma = params.volatility;
    return std::log(params.collateral) + sigma * best_response_quantile(params, rate) - rate -
           0.5 * sigma * sigma;
}

std::string format_rate(const char* name, double value) {
    std::ostringstream out;
    out.precision(12);
    out << name << "=" << value;
    return out.str();
}

}  // namespace

double rate_bracket_margin(const ModelParams& params) {
    return 1e-12 * std::max(1.0, params.outside_rate);
}

RateRatio rate_ratio(const ModelParams& params, double rate) {
    const double b = params.outside_rate;
    const double scale = std::expm1(b);
    const double lower = std::expm1(b - rate) / scale;
    const double upper = std::exp(b - rate) * std::expm1(rate) / scale;
    return {std::clamp(lower, kRatioClamp, 1.0 - kRatioClamp),
            std::clamp(upper, kRatioClamp, 1.0 - kRatioClamp)};
}

double best_response_quantile(const ModelParams& params, double rate) {
    const RateRatio ratio = rate_ratio(params, rate);
    if (ratio.lower <= 0.5) {
        return math::std_normal_inv_cdf(math::Probability(ratio.lower));
    }
    return math::std_normal_inv_ccdf(math::Probability(ratio.upper));
}

BestResponse unconstrained_issuance(const ModelParams& params, double rate) {
    params.validate();
    if (std::isnan(rate)) {
        throw DomainError("unconstrained_issuance: rate is NaN");
    }
    if (rate <= 0.0) return {kInf, true};
    if (rate >= params.outside_rate) return {0.0, false};
    return {std::exp(log_unconstrained_issuance(params, rate)), false};
}

double unconstrained_issuance_slope(const ModelParams& params, double rate) {
    params.validate();
    if (!(rate > 0.0 && rate < params.outside_rate)) {
        throw DomainError("unconstrained_issuance_slope: rate must lie in (0, b)");
    }
    const double b = params.outside_rate;
    // d quantile / d rate = (d ratio / d rate) / phi(quantile), ratio decreasing in rate
    const double ratio_slope = -std::exp(b - rate) / std::expm1(b);
    const double quantile_slope = ratio_slope / math::std_normal_pdf(best_response_quantile(params, rate));
    return unconstrained_issuance(params, rate).issuance * (params.volatility * quantile_slope - 1.0);
}

double optimal_issuance(const ModelParams& params, double rate) {
    if (!(rate > 0.0)) {
        throw DomainError("optimal_issuance: rate must be > 0");
    }
    const double cap = params.collateral_factor * params.collateral;
    return std::min(unconstrained_issuance(params, rate).issuance, cap);
}

double concavity_threshold(const ModelParams& params) {
    params.validate();
    const double b = params.outside_rate;
    // log((e^b + 1) / 2) = log1p((e^b - 1) / 2)
    return b - std::log1p(0.5 * std::expm1(b));
}

double leverage_threshold(const ModelParams& params) {
    params.validate();
    const double log_cap = std::log(params.collateral_factor * params.collateral);
    const auto excess = [&](double rate) { return log_unconstrained_issuance(params, rate) - log_cap; };

    const double margin = rate_bracket_margin(params);
    const double lo = margin;
    const double hi = params.outside_rate - margin;
    if (excess(hi) >= 0.0) return hi;
    if (excess(lo) <= 0.0) return lo;
    // The best response steepens without bound near b, so the rate is resolved
    // to full precision to keep the issuance residual small.
    math::BracketOptions opts;
    opts.abs_tol = 0.0;
    return math::find_root_bracketed(excess, lo, hi, opts).root;
}

double interior_optimality_residual(const ModelParams& params, double rate) {
    const RateRatio ratio = rate_ratio(params, rate);
    const double quantile = best_response_quantile(params, rate);
    return params.volatility * ratio.upper / math::std_normal_pdf(quantile) - 1.0;
}

double gov_marginal_revenue(const ModelParams& params, double rate) {
    params.validate();
    if (std::isnan(rate)) {
        throw DomainError("gov_marginal_revenue: rate is NaN");
    }
    if (rate <= 0.0) return kInf;
    if (rate >= params.outside_rate) return -kInf;
    return -unconstrained_issuance(params, rate).issuance * interior_optimality_residual(params, rate);
}

double optimal_interior_rate(const ModelParams& params) {
    params.validate();
    const double bound = 2.0 * math::kInvSqrt2Pi;
    if (!(params.volatility < bound)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "volatility assumption violated: sigma=" << params.volatility
            << " must be < 2 phi(0)=" << bound;
        throw InfeasibleError(msg.str());
    }
    const double lo = concavity_threshold(params);
    const double hi = params.outside_rate - rate_bracket_margin(params);
    const auto residual = [&](double rate) { return interior_optimality_residual(params, rate); };
    return math::find_root_bracketed(residual, lo, hi).root;
}

double vault_value_at_best_response(const ModelParams& params, double rate) {
    params.validate();
    if (!(rate > 0.0 && rate < params.outside_rate)) {
        throw DomainError("vault_value_at_best_response: rate must lie in (0, b)");
    }
    const double d1 = params.volatility - best_response_quantile(params, rate);
    return params.collateral *
           (math::lognormal_mean(params.volatility) + math::std_normal_cdf(-d1) * std::expm1(params.outside_rate));
}

AssumptionReport check_assumptions(const ModelParams& params, std::optional<double> interior_rate) {
    params.validate();
    const double sigma = params.volatility;
    const double b = params.outside_rate;

    const double volatility_margin = 2.0 * math::kInvSqrt2Pi - sigma;
    // (e^b + 1)/2 * exp(-b - sigma^2/2) = (1 + e^-b)/2 * exp(-sigma^2/2)
    const double beta_bound = 0.5 * (1.0 + std::exp(-b)) * std::exp(-0.5 * sigma * sigma);
    const double beta_margin = beta_bound - params.collateral_factor;

    double participation_margin = kNaN;
    if (interior_rate) {
        participation_margin = vault_value_at_best_response(params, *interior_rate) - params.outside_utility;
    }
    return {{volatility_margin > 0.0, volatility_margin},
            {beta_margin > 0.0, beta_margin},
            {participation_margin >= 0.0, participation_margin}};
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Interior:
            return "INTERIOR";
        case Regime::LeverageBound:
            return "LEVERAGE_BOUND";
    }
    return "UNKNOWN";
}

EquilibriumSolution solve_equilibrium(const ModelParams& params) {
    params.validate();
    EquilibriumSolution out{
        {leverage_threshold(params), concavity_threshold(params), std::nullopt},
        {},
        {kNaN, 0.0, 0.0, params.outside_utility, 1.0, Regime::Interior, false},
        {}};
    Thresholds& th = out.thresholds;
    Equilibrium& eq = out.equilibrium;

    try {
        th.interior_rate = optimal_interior_rate(params);
    } catch (const InfeasibleError& e) {
        out.assumptions = check_assumptions(params, std::nullopt);
        out.diagnosis = e.what();
        return out;
    }
    const double interior = *th.interior_rate;
    out.assumptions = check_assumptions(params, interior);

    const bool interior_regime = interior > th.leverage_rate;
    eq.regime = interior_regime ? Regime::Interior : Regime::LeverageBound;
    eq.rate = interior_regime ? interior : th.leverage_rate;
    const double issuance = optimal_issuance(params, eq.rate);
    const Position pos{issuance, eq.rate};
    const double vault_value = interior_regime ? vault_value_at_best_response(params, eq.rate)
                                               : vault_objective(params, pos);

    std::string reasons;
    const auto note = [&](const std::string& why) {
        if (!reasons.empty()) reasons += "; ";
        reasons += why;
    };
    if (!out.assumptions.collateral_factor.holds) {
        note("collateral-factor assumption violated: beta must be < (e^b+1)/2 exp(-b-sigma^2/2)");
    }
    if (interior_regime && !(th.concavity_rate < th.leverage_rate && interior <= params.outside_rate)) {
        note("rate ordering delta_th < delta_beta < delta_star <= b violated (" +
             format_rate("delta_th", th.concavity_rate) + ", " + format_rate("delta_beta", th.leverage_rate) +
             ")");
    }
    const bool participates = vault_value >= params.outside_utility;
    if (!participates) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "participation constraint violated: V=" << vault_value << " < u=" << params.outside_utility;
        note(msg.str());
        out.diagnosis = reasons;
        return out;  // non-participation at the chosen rate
    }

    eq.issuance = issuance;
    eq.gov_value = gov_objective(pos);
    eq.vault_value = vault_value;
    eq.price = stablecoin_price(params, pos);
    eq.feasible = reasons.empty();
    out.diagnosis = reasons;
    return out;
}

}  // namespace stablegov
