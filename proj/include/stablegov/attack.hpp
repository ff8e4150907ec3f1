#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "stablegov/equilibrium.hpp"
#include "stablegov/valuation.hpp"

namespace stablegov {

struct AttackParams {
    double adversary_share;     // zeta: fraction of GOV tokens held, in (0, 1]
    double stealable_fraction;  // gamma: fraction of collateral seizable, in [0, 1]
    double attack_cost;         // alpha: outside cost of attacking, >= 0
    double discount;            // r: discount factor of the fee stream, in [0, 1)

    void validate() const;

    friend bool operator==(const AttackParams&, const AttackParams&) = default;
};

struct SecurityReport {
    double gov_perpetuity;  // G* = F (e^delta - 1) / (1 - r)
    double attack_payoff;   // gamma N e^{sigma^2/2}
    double defense_value;   // alpha + zeta G*
    double margin;          // defense_value - attack_payoff
    bool secure;            // margin >= 0

    // Same condition solved for G*: G* >= (gamma N e^{sigma^2/2} - alpha) / zeta.
    double required_perpetuity;
    bool secure_threshold_form;

    double min_alpha;         // max(0, attack_payoff - zeta G*)
    double max_gamma;         // min(1, (alpha + zeta G*) / (N e^{sigma^2/2}))
    double min_zeta;          // required share clamped to [0, 1]
    bool min_zeta_attainable;  // false when the required share exceeds 1
};

/// Discounted value of the equilibrium fee stream. Throws InfeasibleError for
/// an infeasible equilibrium and DomainError unless 0 <= r < 1.
double gov_perpetuity(const Equilibrium& equilibrium, double discount);

/// Non-attack condition alpha + zeta G* >= gamma N e^{sigma^2/2} and its
/// boundary values in alpha, gamma and zeta.
SecurityReport security_report(const ModelParams& params, const AttackParams& attack,
                               const Equilibrium& equilibrium);

enum class AttackAxis { Alpha, Gamma, Zeta, Discount };

std::string_view to_string(AttackAxis axis);

struct SampleGrid {
    double lo;
    double hi;
    std::size_t steps;  // >= 1; lo..hi inclusive when steps >= 2
};

struct FrontierPoint {
    double value;
    double margin;
    bool secure;
};

/// Attack margin along one attack parameter, other parameters held fixed.
std::vector<FrontierPoint> security_frontier(const ModelParams& params, const AttackParams& attack,
                                             const Equilibrium& equilibrium, AttackAxis axis,
                                             const SampleGrid& grid);

}  // namespace stablegov
