#include "stablegov/attack.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stablegov/errors.hpp"

namespace stablegov {

namespace {

[[noreturn]] void fail(const char* field, const char* rule, double got) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "AttackParams: " << field << " must be " << rule << " (got " << got << ")";
    throw DomainError(msg.str());
}

void require_feasible(const Equilibrium& equilibrium) {
    if (!equilibrium.feasible) {
        throw InfeasibleError("no participating equilibrium: there is no fee stream to defend");
    }
}

}  // namespace

void AttackParams::validate() const {
    if (!(adversary_share > 0.0 && adversary_share <= 1.0)) fail("zeta", "in (0, 1]", adversary_share);
    if (!(stealable_fraction >= 0.0 && stealable_fraction <= 1.0)) fail("gamma", "in [0, 1]", stealable_fraction);
    if (!(attack_cost >= 0.0) || !std::isfinite(attack_cost)) fail("alpha", ">= 0", attack_cost);
    if (!(discount >= 0.0 && discount < 1.0)) fail("r", "in [0, 1)", discount);
}

double gov_perpetuity(const Equilibrium& equilibrium, double discount) {
    if (!(discount >= 0.0 && discount < 1.0)) fail("r", "in [0, 1)", discount);
    require_feasible(equilibrium);
    return equilibrium.issuance * std::expm1(equilibrium.rate) / (1.0 - discount);
}

SecurityReport security_report(const ModelParams& params, const AttackParams& attack,
                               const Equilibrium& equilibrium) {
    params.validate();
    attack.validate();
    const double perpetuity = gov_perpetuity(equilibrium, attack.discount);
    const double collateral_value = params.collateral * math::lognormal_mean(params.volatility);
    const double zeta = attack.adversary_share;
    const double alpha = attack.attack_cost;

    SecurityReport report{};
    report.gov_perpetuity = perpetuity;
    report.attack_payoff = attack.stealable_fraction * collateral_value;
    report.defense_value = alpha + zeta * perpetuity;
    report.margin = report.defense_value - report.attack_payoff;
    report.secure = report.margin >= 0.0;

    report.required_perpetuity = (report.attack_payoff - alpha) / zeta;
    report.secure_threshold_form = perpetuity >= report.required_perpetuity;

    report.min_alpha = std::max(0.0, report.attack_payoff - zeta * perpetuity);
    report.max_gamma = std::min(1.0, report.defense_value / collateral_value);
    const double required_share = (report.attack_payoff - alpha) / perpetuity;
    report.min_zeta_attainable = required_share <= 1.0;
    report.min_zeta = std::clamp(required_share, 0.0, 1.0);
    return report;
}

std::string_view to_string(AttackAxis axis) {
    switch (axis) {
        case AttackAxis::Alpha:
            return "alpha";
        case AttackAxis::Gamma:
            return "gamma";
        case AttackAxis::Zeta:
            return "zeta";
        case AttackAxis::Discount:
            return "r";
    }
    return "unknown";
}

std::vector<FrontierPoint> security_frontier(const ModelParams& params, const AttackParams& attack,
                                             const Equilibrium& equilibrium, AttackAxis axis,
                                             const SampleGrid& grid) {
    if (grid.steps == 0) {
        throw DomainError("security_frontier: grid is empty");
    }
    if (!(grid.lo <= grid.hi)) {
        throw DomainError("security_frontier: grid requires lo <= hi");
    }
    std::vector<FrontierPoint> points;
    points.reserve(grid.steps);
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double t = grid.steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(grid.steps - 1);
        const double value = i + 1 == grid.steps && grid.steps > 1 ? grid.hi : grid.lo + t * (grid.hi - grid.lo);
        AttackParams point = attack;
        switch (axis) {
            case AttackAxis::Alpha:
                point.attack_cost = value;
                break;
            case AttackAxis::Gamma:
                point.stealable_fraction = value;
                break;
            case AttackAxis::Zeta:
                point.adversary_share = value;
                break;
            case AttackAxis::Discount:
                point.discount = value;
                break;
        }
        const SecurityReport report = security_report(params, point, equilibrium);
        points.push_back({value, report.margin, report.secure});
    }
    return points;
}

}  // namespace stablegov
