#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stablegov/commands.hpp"
#include "stablegov/config.hpp"
#include "stablegov/errors.hpp"

namespace cli = stablegov::cli;

int main(int argc, char** argv) {
    CLI::App app{"stablegov: closed-form valuation, Stackelberg equilibrium and governance-attack "
                 "security for a collateralised stablecoin"};
    app.footer(
        "Exit codes: 0 ok, 2 model infeasible (no participating equilibrium), 1 configuration, "
        "domain or numerical error.\n"
        "Config: JSON with keys model{N,sigma,b,beta,u}, attack{zeta,gamma,alpha,r}, "
        "oracle{n_samples,seed,n_grid_points,soft_se,hard_se}, sweep{axis,lo,hi,steps}.");
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> issuance;
    std::optional<double> rate;
    std::string out_path;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
    };
    auto add_point = [&](CLI::App* sub) {
        sub->add_option("--F", issuance, "stablecoin face value issued");
        sub->add_option("--delta", rate, "interest rate paid by the vault");
    };

    CLI::App* value = app.add_subcommand("value", "valuation terms and sensitivities at (F, delta)");
    add_config(value);
    add_point(value);
    CLI::App* equilibrium = app.add_subcommand("equilibrium", "thresholds, assumptions and equilibrium");
    add_config(equilibrium);
    CLI::App* attack = app.add_subcommand("attack", "governance-attack security report");
    add_config(attack);
    CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep of the equilibrium along one axis");
    add_config(sweep);
    sweep->add_option("--out", out_path, "write CSV here instead of stdout");
    CLI::App* oracle = app.add_subcommand("oracle-check", "Monte Carlo and grid oracles vs closed forms");
    add_config(oracle);
    add_point(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitError;
    }

    return cli::run_guarded(
        [&]() -> int {
            const cli::RunConfig config = cli::load_config(config_path);
            if (value->parsed()) return cli::cmd_value(config, issuance, rate, std::cout);
            if (equilibrium->parsed()) return cli::cmd_equilibrium(config, std::cout);
            if (attack->parsed()) return cli::cmd_attack(config, std::cout);
            if (sweep->parsed()) {
                if (out_path.empty()) return cli::cmd_sweep(config, std::cout);
                std::ofstream file(out_path);
                if (!file) throw stablegov::ConfigError("sweep: cannot write " + out_path);
                return cli::cmd_sweep(config, file);
            }
            std::optional<stablegov::Position> point;
            if (issuance || rate) {
                if (!issuance || !rate) throw stablegov::ConfigError("oracle-check: pass both --F and --delta");
                point = stablegov::Position{*issuance, *rate};
            }
            return cli::cmd_oracle_check(config, point, std::cout);
        },
        std::cerr);
}
