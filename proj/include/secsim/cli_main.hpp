#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "secsim/errors.hpp"
#include "secsim/propagation.hpp"
#include "secsim/result_table.hpp"
#include "secsim/scenario.hpp"

namespace secsim {

/// Exit codes: 0 success, 1 configuration error, 2 runtime/estimation error.
inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"physical-layer secrecy scenario runner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> trials_override;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario file");
    run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--out", out_path, "output CSV path (default: stdout)");
    run_cmd->add_option("--seed", seed_override, "override the Monte-Carlo seed");
    run_cmd->add_option("--trials", trials_override, "override the trial count");

    std::string presets_out;
    CLI::App* presets_cmd =
        app.add_subcommand("export-presets", "write the path-loss exponent presets");
    presets_cmd->add_option("--out", presets_out, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage problems are configuration errors
    }

    try {
        if (run_cmd->parsed()) {
            ScenarioConfig cfg = load_scenario(scenario_path);
            apply_overrides(cfg, seed_override, trials_override);
            const ResultTable table = run_scenario(cfg);
            if (out_path.empty()) {
                table.write_csv(std::cout);
            } else {
                emit_results(table, out_path);
            }
        } else if (presets_cmd->parsed()) {
            if (presets_out.empty()) {
                export_path_loss_presets_csv(std::cout);
            } else {
                std::ofstream out(presets_out);
                if (!out) {
                    throw std::runtime_error("cannot open output file: " + presets_out);
                }
                export_path_loss_presets_csv(out);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const EstimationError& e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace secsim
