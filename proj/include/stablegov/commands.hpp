#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "stablegov/config.hpp"
#include "stablegov/valuation.hpp"

// Thin adapters from a RunConfig to flat key=value reports and CSV. All
// numbers use '.' as decimal separator and 12 significant digits.
namespace stablegov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

inline constexpr std::string_view kSweepHeader =
    "axis_value,delta_beta,delta_th,delta_star,F_star,G_star,V_star,B,feasible,regime,margin,secure";

std::string format_number(double value);

/// Keys: F delta d1 d2 P B V G dP_dF dP_ddelta dV_dF dV_ddelta. Requires F > 0.
int cmd_value(const RunConfig& config, std::optional<double> issuance, std::optional<double> rate,
              std::ostream& out);

/// Thresholds, assumption flags with margins, then the equilibrium. Returns
/// kExitInfeasible when the equilibrium is not feasible.
int cmd_equilibrium(const RunConfig& config, std::ostream& out);

/// Security report for the attack block. Requires a feasible equilibrium.
int cmd_attack(const RunConfig& config, std::ostream& out);

/// One CSV row per sweep point, header first, in axis order.
int cmd_sweep(const RunConfig& config, std::ostream& out);

/// Monte Carlo and grid oracles against the closed forms at the given point,
/// or at the equilibrium point when none is given. Returns kExitError on any
/// hard statistical failure or grid mismatch.
int cmd_oracle_check(const RunConfig& config, std::optional<Position> point, std::ostream& out);

/// Runs a command, mapping exceptions to the exit-code convention:
/// InfeasibleError -> 2; ConfigError, DomainError, NumericalError -> 1.
int run_guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace stablegov::cli
