#pragma once

#include "stablegov/normal.hpp"

namespace stablegov {

/// Model primitives. Horizon is one period; rates are continuously compounded.
struct ModelParams {
    double collateral;         // N: dollar value of vault collateral, > 0
    double volatility;         // sigma: COL log-return volatility, > 0
    double outside_rate;       // b: return on the outside opportunity, > 0
    double collateral_factor;  // beta: max issuance per unit collateral, in (0, 1]
    double outside_utility;    // u: vault's outside-option utility, >= 0

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// A vault position: face value issued and the interest rate paid on it.
struct Position {
    double issuance;  // F >= 0
    double rate;      // delta >= 0

    void validate() const;
};

struct ValuationTerms {
    double d1;
    double d2;
    double put_value;
};

struct PutSensitivities {
    double d_issuance;  // dP/dF
    double d_rate;      // dP/ddelta
};

struct VaultGradients {
    double d_issuance;  // dV/dF
    double d_rate;      // dV/ddelta
};

/// Expected collateral shortfall P(F, delta) = E[F e^delta - N e^R]_+ in
/// Black-Scholes form, with d1 = (log(N / (F e^delta)) + sigma^2/2) / sigma.
/// Moneyness is handled in log space so the normal terms saturate cleanly in
/// the deep tails. F = 0 is the exact zero-put limit (d1 = d2 = +inf).
ValuationTerms shortfall_put(const ModelParams& params, const Position& pos);

/// B = 1 - P/F. Requires F > 0. B <= 1 always; B <= 0 once the expected
/// shortfall reaches the face value.
double stablecoin_price(const ModelParams& params, const Position& pos);

/// dP/dF = e^delta Phi(-d2), dP/ddelta = F dP/dF.
PutSensitivities put_sensitivities(const ModelParams& params, const Position& pos);

/// V = N e^{sigma^2/2} + F (e^b - e^delta) - P (e^b - 1).
double vault_objective(const ModelParams& params, const Position& pos);

/// dV/dF = (e^b - e^delta) - (e^b - 1) e^delta Phi(-d2)
/// dV/ddelta = -F e^delta (1 + (e^b - 1) Phi(-d2))
VaultGradients vault_gradients(const ModelParams& params, const Position& pos);

/// Fee revenue G = F (e^delta - 1).
double gov_objective(const Position& pos);

}  // namespace stablegov
