#include "stablegov/commands.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "stablegov/attack.hpp"
#include "stablegov/equilibrium.hpp"
#include "stablegov/errors.hpp"
#include "stablegov/oracle.hpp"

namespace stablegov::cli {

namespace {

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    void num(std::string_view key, double value) { out_ << key << '=' << format_number(value) << '\n'; }
    void flag(std::string_view key, bool value) { out_ << key << '=' << (value ? "true" : "false") << '\n'; }
    void text(std::string_view key, std::string_view value) { out_ << key << '=' << value << '\n'; }

private:
    std::ostream& out_;
};

std::string csv_flag(bool value) { return value ? "true" : "false"; }

void print_thresholds(Report& report, const EquilibriumSolution& solution) {
    const Thresholds& th = solution.thresholds;
    report.num("delta_th", th.concavity_rate);
    report.num("delta_beta", th.leverage_rate);
    if (th.interior_rate) {
        report.num("delta_star", *th.interior_rate);
    } else {
        report.text("delta_star", "");
    }
}

void print_assumptions(Report& report, const AssumptionReport& a) {
    report.flag("a1_volatility", a.volatility.holds);
    report.num("a1_volatility_margin", a.volatility.margin);
    report.flag("a2_collateral_factor", a.collateral_factor.holds);
    report.num("a2_collateral_factor_margin", a.collateral_factor.margin);
    report.flag("a3_participation", a.participation.holds);
    report.num("a3_participation_margin", a.participation.margin);
}

void print_equilibrium(Report& report, const EquilibriumSolution& solution) {
    const Equilibrium& eq = solution.equilibrium;
    report.text("regime", solution.thresholds.interior_rate ? to_string(eq.regime) : "");
    report.num("delta", eq.rate);
    report.num("F", eq.issuance);
    report.num("G", eq.gov_value);
    report.num("V", eq.vault_value);
    report.num("B", eq.price);
    report.flag("feasible", eq.feasible);
    if (!solution.diagnosis.empty()) report.text("diagnosis", solution.diagnosis);
}

const char* verdict(double z, const OracleSettings& settings, bool& hard_fail) {
    const double magnitude = std::abs(z);
    if (magnitude <= settings.soft_se) return "PASS";
    if (magnitude < settings.hard_se) return "FAIL";
    hard_fail = true;
    return "HARD_FAIL";
}

void print_mc_check(Report& report, std::string_view name, double closed_form, const oracle::McEstimate& estimate,
                    double payoff_range, const OracleSettings& settings, bool& hard_fail) {
    const std::string key(name);
    const double z = oracle::standardized_deviation(closed_form, estimate, payoff_range);
    report.num(key + "_closed", closed_form);
    report.num(key + "_estimate", estimate.mean);
    report.num(key + "_std_error", estimate.std_error);
    report.num(key + "_z", z);
    report.text(key + "_verdict", verdict(z, settings, hard_fail));
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

int cmd_value(const RunConfig& config, std::optional<double> issuance, std::optional<double> rate,
              std::ostream& out) {
    if (!issuance || !rate) {
        throw ConfigError("value: --F and --delta are required");
    }
    if (!(*issuance > 0.0)) {
        throw DomainError("value: precondition F > 0 violated (got F=" + format_number(*issuance) + ")");
    }
    const ModelParams& params = config.model;
    const Position pos{*issuance, *rate};
    const ValuationTerms terms = shortfall_put(params, pos);
    const PutSensitivities put = put_sensitivities(params, pos);
    const VaultGradients vault = vault_gradients(params, pos);

    Report report(out);
    report.num("F", pos.issuance);
    report.num("delta", pos.rate);
    report.num("d1", terms.d1);
    report.num("d2", terms.d2);
    report.num("P", terms.put_value);
    report.num("B", stablecoin_price(params, pos));
    report.num("V", vault_objective(params, pos));
    report.num("G", gov_objective(pos));
    report.num("dP_dF", put.d_issuance);
    report.num("dP_ddelta", put.d_rate);
    report.num("dV_dF", vault.d_issuance);
    report.num("dV_ddelta", vault.d_rate);
    return kExitOk;
}

int cmd_equilibrium(const RunConfig& config, std::ostream& out) {
    const EquilibriumSolution solution = solve_equilibrium(config.model);
    Report report(out);
    print_thresholds(report, solution);
    print_assumptions(report, solution.assumptions);
    print_equilibrium(report, solution);
    return solution.equilibrium.feasible ? kExitOk : kExitInfeasible;
}

int cmd_attack(const RunConfig& config, std::ostream& out) {
    if (!config.attack) {
        throw ConfigError("attack: config has no attack block");
    }
    const EquilibriumSolution solution = solve_equilibrium(config.model);
    if (!solution.equilibrium.feasible) {
        throw InfeasibleError("attack: equilibrium is infeasible (" + solution.diagnosis +
                              "); the non-attack condition needs a participating fee stream");
    }
    const AttackParams& attack = *config.attack;
    const SecurityReport sec = security_report(config.model, attack, solution.equilibrium);

    Report report(out);
    report.text("regime", to_string(solution.equilibrium.regime));
    report.num("delta", solution.equilibrium.rate);
    report.num("F", solution.equilibrium.issuance);
    report.num("G", solution.equilibrium.gov_value);
    report.num("zeta", attack.adversary_share);
    report.num("gamma", attack.stealable_fraction);
    report.num("alpha", attack.attack_cost);
    report.num("r", attack.discount);
    report.num("gov_perpetuity", sec.gov_perpetuity);
    report.num("attack_payoff", sec.attack_payoff);
    report.num("defense_value", sec.defense_value);
    report.num("margin", sec.margin);
    report.text("condition_defense_form", "alpha + zeta * gov_perpetuity >= gamma * N * exp(sigma^2/2)");
    report.flag("condition_defense_form_holds", sec.secure);
    report.text("condition_threshold_form", "gov_perpetuity >= (gamma * N * exp(sigma^2/2) - alpha) / zeta");
    report.num("required_perpetuity", sec.required_perpetuity);
    report.flag("condition_threshold_form_holds", sec.secure_threshold_form);
    report.flag("secure", sec.secure);
    report.num("min_alpha", sec.min_alpha);
    report.num("max_gamma", sec.max_gamma);
    report.num("min_zeta", sec.min_zeta);
    report.flag("min_zeta_attainable", sec.min_zeta_attainable);
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    if (!config.sweep) {
        throw ConfigError("sweep: config has no sweep block");
    }
    const SweepSettings& sweep = *config.sweep;
    out << kSweepHeader << '\n';
    for (std::size_t i = 0; i < sweep.steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(sweep.steps - 1);
        const double value = i + 1 == sweep.steps ? sweep.hi : sweep.lo + t * (sweep.hi - sweep.lo);
        const RunConfig point = with_axis_value(config, sweep.axis, value);
        const EquilibriumSolution solution = solve_equilibrium(point.model);
        const Equilibrium& eq = solution.equilibrium;
        const Thresholds& th = solution.thresholds;

        out << format_number(value) << ',' << format_number(th.leverage_rate) << ','
            << format_number(th.concavity_rate) << ',';
        if (th.interior_rate) out << format_number(*th.interior_rate);
        out << ',' << format_number(eq.issuance) << ',' << format_number(eq.gov_value) << ','
            << format_number(eq.vault_value) << ',' << format_number(eq.price) << ',' << csv_flag(eq.feasible)
            << ',';
        if (th.interior_rate) out << to_string(eq.regime);
        out << ',';
        if (point.attack && eq.feasible) {
            const SecurityReport sec = security_report(point.model, *point.attack, eq);
            out << format_number(sec.margin) << ',' << csv_flag(sec.secure);
        } else {
            out << ',';
        }
        out << '\n';
    }
    return kExitOk;
}

int cmd_oracle_check(const RunConfig& config, std::optional<Position> point, std::ostream& out) {
    if (!config.oracle) {
        throw ConfigError("oracle-check: config has no oracle block");
    }
    const OracleSettings& settings = *config.oracle;
    const ModelParams& params = config.model;
    const EquilibriumSolution solution = solve_equilibrium(params);
    if (!point) {
        if (!(solution.equilibrium.issuance > 0.0)) {
            throw ConfigError("oracle-check: no participating equilibrium to check at; pass --F and --delta");
        }
        point = Position{solution.equilibrium.issuance, solution.equilibrium.rate};
    }
    if (!(point->issuance > 0.0)) {
        throw DomainError("oracle-check: precondition F > 0 violated");
    }

    Report report(out);
    report.num("F", point->issuance);
    report.num("delta", point->rate);
    report.num("n_samples", static_cast<double>(settings.n_samples));
    report.num("seed", static_cast<double>(settings.seed));
    report.num("soft_se", settings.soft_se);
    report.num("hard_se", settings.hard_se);

    bool hard_fail = false;
    const double strike = point->issuance * std::exp(point->rate);
    const double collateral_value = params.collateral * math::lognormal_mean(params.volatility);
    print_mc_check(report, "mc_put", shortfall_put(params, *point).put_value,
                   oracle::mc_shortfall(params, *point, settings.n_samples, settings.seed), strike, settings,
                   hard_fail);
    print_mc_check(report, "mc_price", stablecoin_price(params, *point),
                   oracle::mc_price(params, *point, settings.n_samples, settings.seed), std::exp(point->rate), settings,
                   hard_fail);
    print_mc_check(report, "mc_vault", vault_objective(params, *point),
                   oracle::mc_vault_objective(params, *point, settings.n_samples, settings.seed), collateral_value,
                   settings, hard_fail);

    bool grid_fail = false;
    if (point->rate > 0.0 && point->rate < params.outside_rate) {
        const double best = unconstrained_issuance(params, point->rate).issuance;
        const oracle::GridResult grid = oracle::grid_vault_best_f(params, point->rate, settings.n_grid_points);
        const bool ok = std::abs(grid.arg_best - best) <= grid.step;
        grid_fail |= !ok;
        report.num("grid_best_F_closed", best);
        report.num("grid_best_F_argmax", grid.arg_best);
        report.num("grid_best_F_step", grid.step);
        report.text("grid_best_F_verdict", ok ? "PASS" : "FAIL");
    } else {
        report.text("grid_best_F_verdict", "SKIPPED");
    }
    if (solution.thresholds.interior_rate) {
        const oracle::GridResult grid = oracle::grid_gov_best_delta(params, settings.n_grid_points);
        const bool ok = std::abs(grid.arg_best - solution.equilibrium.rate) <= grid.step;
        grid_fail |= !ok;
        report.num("grid_best_delta_closed", solution.equilibrium.rate);
        report.num("grid_best_delta_argmax", grid.arg_best);
        report.num("grid_best_delta_step", grid.step);
        report.text("grid_best_delta_verdict", ok ? "PASS" : "FAIL");
    } else {
        report.text("grid_best_delta_verdict", "SKIPPED");
    }
    const bool failed = hard_fail || grid_fail;
    report.text("overall", failed ? "FAIL" : "PASS");
    return failed ? kExitError : kExitOk;
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

}  // namespace stablegov::cli
