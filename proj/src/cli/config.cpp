#include "stablegov/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stablegov/errors.hpp"
#include "stablegov/oracle.hpp"

namespace stablegov::cli {

using nlohmann::json;

namespace {

const json& require_object(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_object()) {
        throw ConfigError(std::string("config: missing object '") + key + "'");
    }
    return doc.at(key);
}

double require_number(const json& block, const char* block_name, const char* key) {
    if (!block.contains(key) || !block.at(key).is_number()) {
        throw ConfigError(std::string("config: ") + block_name + "." + key + " must be a number");
    }
    return block.at(key).get<double>();
}

std::uint64_t require_count(const json& block, const char* block_name, const char* key) {
    const bool ok = block.contains(key) && block.at(key).is_number_integer() &&
                    (block.at(key).is_number_unsigned() || block.at(key).get<std::int64_t>() >= 0);
    if (!ok) {
        throw ConfigError(std::string("config: ") + block_name + "." + key + " must be a non-negative integer");
    }
    return block.at(key).get<std::uint64_t>();
}

std::string valid_axes() {
    std::string out;
    for (std::string_view axis : kSweepAxes) {
        if (!out.empty()) out += ", ";
        out += axis;
    }
    return out;
}

}  // namespace

bool is_attack_axis(std::string_view axis) {
    return axis == "zeta" || axis == "gamma" || axis == "alpha" || axis == "r";
}

RunConfig with_axis_value(const RunConfig& config, std::string_view axis, double value) {
    RunConfig out = config;
    if (axis == "N") {
        out.model.collateral = value;
    } else if (axis == "sigma") {
        out.model.volatility = value;
    } else if (axis == "b") {
        out.model.outside_rate = value;
    } else if (axis == "beta") {
        out.model.collateral_factor = value;
    } else if (axis == "u") {
        out.model.outside_utility = value;
    } else if (is_attack_axis(axis)) {
        if (!out.attack) {
            throw ConfigError("sweep: axis '" + std::string(axis) + "' requires an attack block");
        }
        if (axis == "zeta") out.attack->adversary_share = value;
        if (axis == "gamma") out.attack->stealable_fraction = value;
        if (axis == "alpha") out.attack->attack_cost = value;
        if (axis == "r") out.attack->discount = value;
    } else {
        throw ConfigError("sweep: unknown axis '" + std::string(axis) + "'; valid axes: " + valid_axes());
    }
    return out;
}

namespace {

void validate_primitives(const RunConfig& config, const std::string& context) {
    try {
        config.model.validate();
        if (config.attack) config.attack->validate();
    } catch (const DomainError& e) {
        throw ConfigError("config: " + context + e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    validate_primitives(*this, "");
    if (oracle) {
        if (oracle->n_samples < oracle::kMinSamples) {
            throw ConfigError("config: oracle.n_samples must be >= " + std::to_string(oracle::kMinSamples));
        }
        if (oracle->n_grid_points < oracle::kMinGridPoints) {
            throw ConfigError("config: oracle.n_grid_points must be >= " + std::to_string(oracle::kMinGridPoints));
        }
        if (!(oracle->soft_se > 0.0 && oracle->soft_se < oracle->hard_se)) {
            throw ConfigError("config: oracle requires 0 < soft_se < hard_se");
        }
    }
    if (sweep) {
        if (std::find(kSweepAxes.begin(), kSweepAxes.end(), sweep->axis) == kSweepAxes.end()) {
            throw ConfigError("sweep: unknown axis '" + sweep->axis + "'; valid axes: " + valid_axes());
        }
        if (!(sweep->lo < sweep->hi)) throw ConfigError("config: sweep.lo must be < sweep.hi");
        if (sweep->steps < 2) throw ConfigError("config: sweep.steps must be >= 2");
        for (double endpoint : {sweep->lo, sweep->hi}) {
            validate_primitives(with_axis_value(*this, sweep->axis, endpoint), "sweep endpoint: ");
        }
    }
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
    RunConfig config{};
    const json& model = require_object(doc, "model");
    config.model = {require_number(model, "model", "N"), require_number(model, "model", "sigma"),
                    require_number(model, "model", "b"), require_number(model, "model", "beta"),
                    require_number(model, "model", "u")};
    if (doc.contains("attack")) {
        const json& attack = require_object(doc, "attack");
        config.attack = AttackParams{require_number(attack, "attack", "zeta"), require_number(attack, "attack", "gamma"),
                                     require_number(attack, "attack", "alpha"), require_number(attack, "attack", "r")};
    }
    if (doc.contains("oracle")) {
        const json& block = require_object(doc, "oracle");
        OracleSettings oracle{require_count(block, "oracle", "n_samples"), require_count(block, "oracle", "seed"),
                              require_count(block, "oracle", "n_grid_points")};
        if (block.contains("soft_se")) oracle.soft_se = require_number(block, "oracle", "soft_se");
        if (block.contains("hard_se")) oracle.hard_se = require_number(block, "oracle", "hard_se");
        config.oracle = oracle;
    }
    if (doc.contains("sweep")) {
        const json& block = require_object(doc, "sweep");
        if (!block.contains("axis") || !block.at("axis").is_string()) {
            throw ConfigError("config: sweep.axis must be a string");
        }
        config.sweep = SweepSettings{block.at("axis").get<std::string>(), require_number(block, "sweep", "lo"),
                                     require_number(block, "sweep", "hi"), require_count(block, "sweep", "steps")};
    }
    config.validate();
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& config) {
    json doc;
    const ModelParams& m = config.model;
    doc["model"] = {{"N", m.collateral}, {"sigma", m.volatility}, {"b", m.outside_rate},
                    {"beta", m.collateral_factor}, {"u", m.outside_utility}};
    if (config.attack) {
        const AttackParams& a = *config.attack;
        doc["attack"] = {{"zeta", a.adversary_share}, {"gamma", a.stealable_fraction},
                         {"alpha", a.attack_cost}, {"r", a.discount}};
    }
    if (config.oracle) {
        const OracleSettings& o = *config.oracle;
        doc["oracle"] = {{"n_samples", o.n_samples}, {"seed", o.seed}, {"n_grid_points", o.n_grid_points},
                         {"soft_se", o.soft_se}, {"hard_se", o.hard_se}};
    }
    if (config.sweep) {
        const SweepSettings& s = *config.sweep;
        doc["sweep"] = {{"axis", s.axis}, {"lo", s.lo}, {"hi", s.hi}, {"steps", s.steps}};
    }
    return doc;
}

}  // namespace stablegov::cli
