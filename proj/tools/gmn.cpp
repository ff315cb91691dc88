// gmn.cpp: command-line front end (run experiments, verify the build)

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmn/config.hpp"
#include "gmn/errors.hpp"
#include "gmn/experiments.hpp"
#include "gmn/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

int cmd_run(const std::string& config_path, const std::string& experiment, const std::string& out_path,
            const std::optional<std::uint64_t>& seed) {
    gmn::ExperimentConfig cfg;
    try {
        if (config_path.empty()) {
            cfg = gmn::parse_config(nlohmann::json::object(), experiment.empty() ? "fig1" : experiment);
        } else {
            cfg = gmn::load_config(config_path, experiment);
        }
        if (seed) cfg.seed = *seed;
        if (!out_path.empty()) cfg.output = out_path;
        if (cfg.output.empty()) cfg.output = cfg.experiment + ".csv";
    } catch (const gmn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    gmn::ResultTable table;
    try {
        table = gmn::run_experiment(cfg);
    } catch (const gmn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }

    if (cfg.output == "-") {
        gmn::write_csv(table, std::cout);
        return kOk;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "config error: cannot write '" << cfg.output << "'\n";
        return kConfigError;
    }
    gmn::write_csv(table, out);
    std::cerr << "wrote " << table.rows.size() << " rows to " << cfg.output << '\n';
    return kOk;
}

int cmd_verify(const std::string& level, const std::string& fault) {
    gmn::VerifyOptions opts;
    if (fault == "phi-sign") opts.lambda_exp_impl = gmn::lambda_exp_phi_flipped;
    const gmn::VerifyReport r = gmn::run_verify(level == "full" ? gmn::VerifyLevel::Full : gmn::VerifyLevel::Fast, opts);
    gmn::print_report(r, std::cout);
    return r.passed() ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gmn: generalized-Markovian noise channels"};
    app.set_version_flag("--version", std::string(gmn::version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string experiment;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "compute one experiment and write CSV");
    run->add_option("--config", config_path, "JSON configuration file");
    run->add_option("--experiment", experiment, "fig1..fig5 or custom (overrides the config)")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "custom"}));
    run->add_option("--out", out_path, "output CSV path ('-' for stdout)");
    run->add_option("--seed", seed, "RNG seed (overrides the config)");

    std::string level = "fast";
    std::string fault;
    auto* verify = app.add_subcommand("verify", "run the self-check suite");
    verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    // mutation fixture for testing the harness itself
    verify->add_option("--inject-fault", fault)->check(CLI::IsMember({"phi-sign"}))->group("");

    auto* schema = app.add_subcommand("schema", "print the configuration JSON schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (run->parsed()) return cmd_run(config_path, experiment, out_path, seed);
    if (verify->parsed()) return cmd_verify(level, fault);
    if (schema->parsed()) {
        std::cout << gmn::config_schema().dump(2) << '\n';
        return kOk;
    }
    return kConfigError;
}
