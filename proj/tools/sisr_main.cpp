#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sisr/errors.hpp"
#include "sisr/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SISR tail-probability estimator"};
    app.require_subcommand(1);

    std::string config_path, preset_name, oracle_name;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> threads_override;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory for JSON/CSV reports");
        cmd->add_option("--seed", seed_override, "master seed override");
        cmd->add_option("--threads", threads_override,
                        "worker threads (results do not depend on this)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* run = app.add_subcommand("run", "run one experiment from a JSON config");
    run->add_option("config", config_path, "path to the config file")->required();
    add_common(run);

    CLI::App* preset = app.add_subcommand("preset", "run a packaged study (table1 | table2)");
    preset->add_option("name", preset_name, "table1 | table2")->required();
    add_common(preset);

    CLI::App* oracle =
        app.add_subcommand("oracle", "validation run against an exact oracle (gaussian | binomial)");
    oracle->add_option("name", oracle_name, "gaussian | binomial")->required();
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) {
            sisr::ExperimentConfig cfg = sisr::load_config_file(config_path);
            if (seed_override) cfg.seed = *seed_override;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (threads_override) cfg.threads = *threads_override;
            sisr::run_experiment(cfg);
            return 0;
        }
        const std::uint64_t seed = seed_override.value_or(20110901ull);
        const int threads = threads_override.value_or(1);
        if (preset->parsed()) return sisr::run_preset(preset_name, seed, out_dir, threads);
        return sisr::run_oracle(oracle_name, seed, out_dir, threads);
    } catch (const sisr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sisr::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const sisr::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
