// config.hpp: experiment configuration (JSON), defaults per figure, schema checks

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace gmn {

const char* version();

/// B chosen so that omega T = 2 pi n.
struct TunedAmplitude {
    int n = 1;
    double period = 1.0;
};

struct ExperimentConfig {
    std::string experiment = "fig1"; // fig1..fig5 or custom

    // dephasing models
    double gamma = 1.0;
    std::optional<double> amplitude;     // B given directly
    std::optional<TunedAmplitude> tuned; // or tuned(n, T)
    double tau_k = 25.0;
    double nu = 10.0;
    std::string kernel = "exp"; // custom: exp | modulated
    int axis = 3;
    int qubits = 1;

    // thermal model
    double gamma_minus = 1.0;
    double gamma_plus = 0.5;
    double gamma_z = 2.0;

    // grids; times are in units of 1/gamma (1/gamma_minus for fig5)
    double t_max = 3.0;
    int points = 301;
    int grid = 64; // fig2: theta x phi

    std::string solver = "analytic"; // analytic | laplace | embedded | volterra | stochastic
    double dt = 1e-3;
    std::size_t trajectories = 4000;
    std::uint64_t seed = 0;
    std::string output; // empty: <experiment>.csv

    /// B after resolving the tuned form.
    double resolved_amplitude() const;
};

/// Parameter sets of the figure captions.
ExperimentConfig default_config(const std::string& experiment);

/// Starts from the defaults of j["experiment"] (or `experiment_override` when
/// non-empty) and applies every key. Unknown keys, wrong types and out-of-range
/// values raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j, const std::string& experiment_override = "");

ExperimentConfig load_config(const std::string& path, const std::string& experiment_override = "");

/// Full echo of the resolved configuration (stable key order).
nlohmann::json to_json(const ExperimentConfig& c);

/// JSON Schema (draft 2020-12) describing the accepted keys.
nlohmann::json config_schema();

} // namespace gmn
