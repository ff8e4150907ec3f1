#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stablegov/attack.hpp"
#include "stablegov/valuation.hpp"

namespace stablegov::cli {

struct OracleSettings {
    std::size_t n_samples;
    std::uint64_t seed;
    std::size_t n_grid_points;
    double soft_se = 3.0;  // |closed - estimate| <= soft_se * SE passes
    double hard_se = 5.0;  // at or beyond hard_se * SE the check hard-fails

    friend bool operator==(const OracleSettings&, const OracleSettings&) = default;
};

struct SweepSettings {
    std::string axis;
    double lo;
    double hi;
    std::size_t steps;

    friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

inline constexpr std::array<std::string_view, 9> kSweepAxes = {"N",    "sigma", "b",     "beta", "u",
                                                               "zeta", "gamma", "alpha", "r"};

/// A single JSON document:
///   { "model":  {"N", "sigma", "b", "beta", "u"},
///     "attack": {"zeta", "gamma", "alpha", "r"},                      (optional)
///     "oracle": {"n_samples", "seed", "n_grid_points",
///                "soft_se" = 3, "hard_se" = 5},                      (optional)
///     "sweep":  {"axis", "lo", "hi", "steps"} }                       (optional)
struct RunConfig {
    ModelParams model;
    std::optional<AttackParams> attack;
    std::optional<OracleSettings> oracle;
    std::optional<SweepSettings> sweep;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

bool is_attack_axis(std::string_view axis);

/// Copies of the model / attack blocks with the sweep axis set to value.
RunConfig with_axis_value(const RunConfig& config, std::string_view axis, double value);

}  // namespace stablegov::cli
