// SPDX-License-Identifier: MIT
/**
 * JSON experiment configuration.
 *
 * One JSON object per run. Keys absent from the file take the per-subcommand
 * defaults; "path" is merged key by key, "functional" is replaced wholesale.
 * Unknown keys are rejected with the offending line.
 *
 *   {
 *     "seed": 7,
 *     "path": {"kind": "brownian", "dim": 1, "steps": 16384, "horizon": 1.0},
 *     "functional": {"name": "F1", "f": {"kind": "poly", "coeffs": [0, 0, 0, 0, 1]}, "direction": [1]},
 *     "n": 2, "levels": 12
 *   }
 *
 * Profiles: {"kind": "poly", "coeffs": [...]} or {"kind": "sin", "freq": w, "phase": p}.
 * F1 takes "f", F2 takes "g", F3 takes "f1" (point part), "f2" (integral part),
 * "weight_direction" and "w": [w0, w1].
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "roughfunc/functional.hpp"
#include "roughfunc/path_generators.hpp"

namespace roughfunc {

/// Invalid configuration; what() carries "<source>:<line>: <message>" when a line is known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FunctionalSpec {
    std::string name = "F1";
    Profile primary = Profile::monomial(3);
    Profile secondary = Profile::polynomial({1.0});
    std::vector<double> direction{1.0};
    std::vector<double> weight_direction{1.0};
    double w0 = 1.0;
    double w1 = 0.0;
    int max_order = 6;
};

std::unique_ptr<CausalFunctional> make_functional(const FunctionalSpec& spec);

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    bool path_seed_explicit = false;
    GeneratorSpec path;
    FunctionalSpec functional;

    std::optional<int> n;
    int l = 0;
    int n_tilde = 4;
    int levels = 12;
    int ladder_from = 3;
    int ladder_to = 9;
    std::size_t anchors = 128;
    std::size_t quadrature = 16;
    std::size_t intervals = 20;
    std::size_t probes = 100;
    std::size_t paths = 50;
    std::size_t oracle_paths = 20;
    std::size_t subdivisions = 10000;
    std::size_t chen_probes = 100;
    std::size_t pair_budget = 20000;
    int depth = 5;
    int max_dim = 3;
    std::optional<double> tolerance;
    std::optional<double> nominal_alpha;
    std::vector<double> alphas;
    std::vector<int> ls;

    nlohmann::json echo;  ///< effective configuration (defaults merged with the file)
};

/// Subcommands accepted by the CLI, in help order.
const std::vector<std::string>& subcommands();

ExperimentConfig default_config(std::string_view experiment);
ExperimentConfig parse_config(std::string_view text, std::string_view experiment, std::string_view source = "config");
ExperimentConfig load_config(const std::filesystem::path& path, std::string_view experiment);

/// Replaces the master seed; the path seed follows unless it was set explicitly.
void override_seed(ExperimentConfig& cfg, std::uint64_t seed);

/// Exponent used for rate thresholds: "nominal_alpha" if set, else the generator's own.
double nominal_alpha(const ExperimentConfig& cfg);

}  // namespace roughfunc
