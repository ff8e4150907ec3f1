#include "stablegov/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "stablegov/errors.hpp"

namespace stablegov {

namespace {

[[noreturn]] void fail(const char* type, const char* field, const char* rule, double got) {
    std::ostringstream msg;
    msg.precision(17);
    msg << type << ": " << field << " must be " << rule << " (got " << got << ")";
    throw DomainError(msg.str());
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void ModelParams::validate() const {
    if (!(collateral > 0.0) || !std::isfinite(collateral)) fail("ModelParams", "N", "> 0", collateral);
    if (!(volatility > 0.0) || !std::isfinite(volatility)) fail("ModelParams", "sigma", "> 0", volatility);
    if (!(outside_rate > 0.0) || !std::isfinite(outside_rate)) fail("ModelParams", "b", "> 0", outside_rate);
    if (!(collateral_factor > 0.0 && collateral_factor <= 1.0)) {
        fail("ModelParams", "beta", "in (0, 1]", collateral_factor);
    }
    if (!(outside_utility >= 0.0) || !std::isfinite(outside_utility)) {
        fail("ModelParams", "u", ">= 0", outside_utility);
    }
}

void Position::validate() const {
    if (!(issuance >= 0.0) || !std::isfinite(issuance)) fail("Position", "F", ">= 0", issuance);
    if (!(rate >= 0.0) || !std::isfinite(rate)) fail("Position", "delta", ">= 0", rate);
}

ValuationTerms shortfall_put(const ModelParams& params, const Position& pos) {
    params.validate();
    pos.validate();
    if (pos.issuance == 0.0) {
        return {kInf, kInf, 0.0};
    }
    const double sigma = params.volatility;
    const double log_moneyness = std::log(params.collateral) - std::log(pos.issuance) - pos.rate;
    const double d1 = (log_moneyness + 0.5 * sigma * sigma) / sigma;
    const double d2 = d1 - sigma;

    const double strike = pos.issuance * std::exp(pos.rate);
    const double put = strike * math::std_normal_cdf(-d2) - params.collateral * math::std_normal_cdf(-d1);
    return {d1, d2, std::clamp(put, 0.0, strike)};
}

double stablecoin_price(const ModelParams& params, const Position& pos) {
    if (!(pos.issuance > 0.0)) {
        fail("stablecoin_price", "F", "> 0", pos.issuance);
    }
    const ValuationTerms terms = shortfall_put(params, pos);
    return std::min(1.0, 1.0 - terms.put_value / pos.issuance);
}

PutSensitivities put_sensitivities(const ModelParams& params, const Position& pos) {
    const ValuationTerms terms = shortfall_put(params, pos);
    const double d_issuance = std::exp(pos.rate) * math::std_normal_cdf(-terms.d2);
    return {d_issuance, pos.issuance * d_issuance};
}

double vault_objective(const ModelParams& params, const Position& pos) {
    const ValuationTerms terms = shortfall_put(params, pos);
    const double b = params.outside_rate;
    // e^b - e^delta = e^delta (e^{b - delta} - 1)
    const double carry = std::exp(pos.rate) * std::expm1(b - pos.rate);
    return params.collateral * math::lognormal_mean(params.volatility) + pos.issuance * carry -
           terms.put_value * std::expm1(b);
}

VaultGradients vault_gradients(const ModelParams& params, const Position& pos) {
    const ValuationTerms terms = shortfall_put(params, pos);
    const double b = params.outside_rate;
    const double growth = std::exp(pos.rate);
    const double shortfall_weight = math::std_normal_cdf(-terms.d2);
    const double d_issuance = growth * std::expm1(b - pos.rate) - std::expm1(b) * growth * shortfall_weight;
    const double d_rate = -pos.issuance * growth * (1.0 + std::expm1(b) * shortfall_weight);
    return {d_issuance, d_rate};
}

double gov_objective(const Position& pos) {
    pos.validate();
    return pos.issuance * std::expm1(pos.rate);
}

}  // namespace stablegov
