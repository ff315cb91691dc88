// config.cpp: JSON experiment configuration: parsing, defaults, validation, schema

#include "gmn/config.hpp"

#include <fstream>
#include <set>

#include "gmn/channels.hpp"
#include "gmn/errors.hpp"

#ifndef GMN_VERSION
#define GMN_VERSION "unknown"
#endif

namespace gmn {

using nlohmann::json;

const char* version() {
    return GMN_VERSION;
}

double ExperimentConfig::resolved_amplitude() const {
    if (tuned) return tune_B(gamma, tau_k, tuned->period, tuned->n);
    return amplitude.value_or(0.0);
}

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    if (experiment == "fig1") {
        c.tuned = TunedAmplitude{1, 1.0};
    } else if (experiment == "fig2") {
        c.tuned = TunedAmplitude{1, 1.0};
        c.axis = 1;
        c.t_max = 1.0;
    } else if (experiment == "fig3") {
        c.amplitude = 5.0;
        c.tau_k = 5.0;
        c.t_max = 5.0;
        c.points = 101;
    } else if (experiment == "fig4") {
        c.gamma = 0.5;
        c.tau_k = 25.0;
        c.nu = 10.0;
        c.kernel = "modulated";
        c.t_max = 5.0;
        c.points = 1001;
    } else if (experiment == "fig5") {
        c.amplitude = 1.0;
        c.tau_k = 5.0;
        c.t_max = 10.0;
        c.points = 1001;
        c.solver = "laplace";
    } else if (experiment == "custom") {
        c.amplitude = 1.0;
        c.tau_k = 5.0;
        c.t_max = 5.0;
        c.points = 101;
        c.solver = "embedded";
    } else {
        throw ConfigError("unknown experiment '" + experiment + "' (expected fig1..fig5 or custom)");
    }
    return c;
}

namespace {

double get_number(const json& j, const char* key) {
    if (!j.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return j.get<double>();
}

long long get_integer(const json& j, const char* key) {
    if (!j.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
    return j.get<long long>();
}

std::string get_string(const json& j, const char* key) {
    if (!j.is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
    return j.get<std::string>();
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void validate(const ExperimentConfig& c) {
    require(c.gamma >= 0.0, "gamma must be >= 0");
    require(c.tau_k > 0.0, "tau_k must be > 0");
    require(c.nu >= 0.0, "nu must be >= 0");
    require(c.kernel == "exp" || c.kernel == "modulated", "kernel must be 'exp' or 'modulated'");
    require(c.axis >= 1 && c.axis <= 3, "axis must be 1, 2 or 3");
    require(c.qubits >= 1 && c.qubits <= 4, "qubits must be in 1..4");
    require(c.gamma_minus > 0.0, "gamma_minus must be > 0");
    require(c.gamma_plus >= 0.0, "gamma_plus must be >= 0");
    require(c.gamma_z >= 0.0, "gamma_z must be >= 0");
    require(c.t_max > 0.0, "t_max must be > 0");
    require(c.points >= 2, "points must be >= 2");
    require(c.grid >= 2, "grid must be >= 2");
    require(c.dt > 0.0, "dt must be > 0");
    require(c.trajectories >= 1, "trajectories must be >= 1");
    static const std::set<std::string> solvers{"analytic", "laplace", "embedded", "volterra", "stochastic"};
    require(solvers.count(c.solver) == 1, "solver must be one of analytic, laplace, embedded, volterra, stochastic");
    if (c.amplitude) require(*c.amplitude >= 0.0, "B must be >= 0");
    if (c.tuned) {
        require(c.tuned->n >= 1, "B.tuned.n must be >= 1");
        require(c.tuned->period > 0.0, "B.tuned.T must be > 0");
    }
    if (c.experiment == "fig4") {
        require(!c.amplitude && !c.tuned, "fig4 fixes B through nu; remove key 'B'");
    }
    if (c.experiment == "fig5") {
        require(c.solver == "laplace" || c.solver == "embedded" || c.solver == "volterra",
                "fig5 supports solver laplace, embedded or volterra");
    }
    if (c.experiment != "custom") {
        require(c.solver != "stochastic", "solver 'stochastic' is only available for custom experiments");
    }
}

} // namespace

ExperimentConfig parse_config(const json& j, const std::string& experiment_override) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    std::string experiment = "fig1";
    if (j.contains("experiment")) experiment = get_string(j.at("experiment"), "experiment");
    if (!experiment_override.empty()) experiment = experiment_override;
    ExperimentConfig c = default_config(experiment);

    for (const auto& [key, val] : j.items()) {
        if (key == "experiment") {
            continue;
        } else if (key == "gamma") {
            c.gamma = get_number(val, "gamma");
        } else if (key == "B") {
            if (val.is_number()) {
                c.amplitude = val.get<double>();
                c.tuned.reset();
            } else if (val.is_object() && val.size() == 1 && val.contains("tuned") && val.at("tuned").is_object()) {
                TunedAmplitude t;
                for (const auto& [k2, v2] : val.at("tuned").items()) {
                    if (k2 == "n") t.n = static_cast<int>(get_integer(v2, "B.tuned.n"));
                    else if (k2 == "T") t.period = get_number(v2, "B.tuned.T");
                    else throw ConfigError("unknown key 'B.tuned." + k2 + "'");
                }
                c.tuned = t;
                c.amplitude.reset();
            } else {
                throw ConfigError("key 'B' must be a number or {\"tuned\": {\"n\": int, \"T\": number}}");
            }
        } else if (key == "tau_k") {
            c.tau_k = get_number(val, "tau_k");
        } else if (key == "nu") {
            c.nu = get_number(val, "nu");
        } else if (key == "kernel") {
            c.kernel = get_string(val, "kernel");
        } else if (key == "axis") {
            c.axis = static_cast<int>(get_integer(val, "axis"));
        } else if (key == "qubits") {
            c.qubits = static_cast<int>(get_integer(val, "qubits"));
        } else if (key == "gamma_minus") {
            c.gamma_minus = get_number(val, "gamma_minus");
        } else if (key == "gamma_plus") {
            c.gamma_plus = get_number(val, "gamma_plus");
        } else if (key == "gamma_z") {
            c.gamma_z = get_number(val, "gamma_z");
        } else if (key == "t_max") {
            c.t_max = get_number(val, "t_max");
        } else if (key == "points") {
            c.points = static_cast<int>(get_integer(val, "points"));
        } else if (key == "grid") {
            c.grid = static_cast<int>(get_integer(val, "grid"));
        } else if (key == "solver") {
            c.solver = get_string(val, "solver");
        } else if (key == "dt") {
            c.dt = get_number(val, "dt");
        } else if (key == "trajectories") {
            const long long n = get_integer(val, "trajectories");
            require(n >= 1, "trajectories must be >= 1");
            c.trajectories = static_cast<std::size_t>(n);
        } else if (key == "seed") {
            if (!val.is_number_unsigned()) throw ConfigError("key 'seed' must be a non-negative integer");
            c.seed = val.get<std::uint64_t>();
        } else if (key == "output") {
            c.output = get_string(val, "output");
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j, experiment_override);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["gamma"] = c.gamma;
    if (c.tuned) j["B"] = {{"tuned", {{"n", c.tuned->n}, {"T", c.tuned->period}}}};
    else if (c.amplitude) j["B"] = *c.amplitude;
    j["tau_k"] = c.tau_k;
    j["nu"] = c.nu;
    j["kernel"] = c.kernel;
    j["axis"] = c.axis;
    j["qubits"] = c.qubits;
    j["gamma_minus"] = c.gamma_minus;
    j["gamma_plus"] = c.gamma_plus;
    j["gamma_z"] = c.gamma_z;
    j["t_max"] = c.t_max;
    j["points"] = c.points;
    j["grid"] = c.grid;
    j["solver"] = c.solver;
    j["dt"] = c.dt;
    j["trajectories"] = c.trajectories;
    j["seed"] = c.seed;
    j["output"] = c.output;
    return j;
}

json config_schema() {
    const json tuned = {{"type", "object"},
                        {"additionalProperties", false},
                        {"properties", {{"n", {{"type", "integer"}, {"minimum", 1}}},
                                        {"T", {{"type", "number"}, {"exclusiveMinimum", 0}}}}}};
    json props = {
        {"experiment", {{"enum", {"fig1", "fig2", "fig3", "fig4", "fig5", "custom"}}}},
        {"gamma", {{"type", "number"}, {"minimum", 0}}},
        {"B", {{"oneOf", {{{"type", "number"}, {"minimum", 0}},
                          {{"type", "object"},
                           {"additionalProperties", false},
                           {"required", {"tuned"}},
                           {"properties", {{"tuned", tuned}}}}}}}},
        {"tau_k", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"nu", {{"type", "number"}, {"minimum", 0}}},
        {"kernel", {{"enum", {"exp", "modulated"}}}},
        {"axis", {{"enum", {1, 2, 3}}}},
        {"qubits", {{"type", "integer"}, {"minimum", 1}, {"maximum", 4}}},
        {"gamma_minus", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"gamma_plus", {{"type", "number"}, {"minimum", 0}}},
        {"gamma_z", {{"type", "number"}, {"minimum", 0}}},
        {"t_max", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"points", {{"type", "integer"}, {"minimum", 2}}},
        {"grid", {{"type", "integer"}, {"minimum", 2}}},
        {"solver", {{"enum", {"analytic", "laplace", "embedded", "volterra", "stochastic"}}}},
        {"dt", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"trajectories", {{"type", "integer"}, {"minimum", 1}}},
        {"seed", {{"type", "integer"}, {"minimum", 0}}},
        {"output", {{"type", "string"}}},
    };
    return {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
            {"title", "gmn experiment configuration"},
            {"type", "object"},
            {"additionalProperties", false},
            {"properties", props}};
}

} // namespace gmn
