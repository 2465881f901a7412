// main.cpp — heisen command-line entry point

#include <CLI11.hpp>

#include <iostream>

#include "heisen/cli/experiment.hpp"
#include "heisen/presets.hpp"

namespace {

using namespace heisen::cli;

int execute(const std::string& path, const Overrides& ov) {
    try {
        const ExperimentConfig cfg = load_config(path, ov);
        const RunResult res = run_experiment(cfg);
        emit(res, cfg.output);
        if (!res.summary.empty()) std::cerr << res.summary << '\n';
        return res.status;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const heisen::Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_code::numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::numerical;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heisen: Heisenberg-picture open quantum system engine"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    std::optional<int> order;
    std::optional<double> lambda;
    std::optional<std::string> output, format;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--order", order, "truncation order");
        sub->add_option("--lambda", lambda, "coupling strength");
        sub->add_option("--output", output, "output path (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* run = app.add_subcommand("run", "run the experiment described by a config");
    add_common(run);

    CLI::App* validate = app.add_subcommand("validate", "compare perturbative results with the exact oracle");
    add_common(validate);
    validate->add_option("--seed", seed, "seed for a random model");

    CLI::App* preset = app.add_subcommand("preset", "preset models");
    CLI::App* list = preset->add_subcommand("list", "list presets");
    preset->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code::config;
    }

    if (*list) {
        for (const auto& p : heisen::presets::preset_list()) std::cout << p.name << "\t" << p.description << '\n';
        return exit_code::ok;
    }
    ov.order = order;
    ov.lambda = lambda;
    ov.output = output;
    ov.format = format;
    if (*validate) {
        ov.seed = seed;
        ov.run = RunMode::validate;
    }
    return execute(config_path, ov);
}
