#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slsim/commands.hpp"
#include "slsim/errors.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 numeric/feasibility error,
// 4 I/O error.
int run(int argc, char** argv) {
    CLI::App app{"Social-learning simulator with inferential attacks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out = "out";
    std::uint64_t seed = 0;
    int trials = 0;

    auto add_common = [&](CLI::App* cmd, bool with_trials) {
        cmd->add_option("--config", config_path, "experiment config (JSON)")
            ->required();
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--seed", seed, "override base_seed");
        if (with_trials) {
            cmd->add_option("--trials", trials, "override trial count");
        }
    };

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the Monte Carlo experiment and write CSVs");
    add_common(simulate, true);

    CLI::App* analyze = app.add_subcommand(
        "analyze", "evaluate the convergence threshold analysis");
    add_common(analyze, false);

    CLI::App* attack = app.add_subcommand(
        "attack", "synthesize and dump the adversaries' distorted PMFs");
    add_common(attack, false);

    std::vector<std::string> csvs;
    std::vector<std::string> labels;
    std::string svg_out = "plot.svg";
    std::string title = "Average belief on the true state";
    CLI::App* plot =
        app.add_subcommand("plot", "render summary CSVs as an SVG chart");
    plot->add_option("csvs", csvs, "summary CSV files")->required();
    plot->add_option("--labels", labels, "one legend label per CSV");
    plot->add_option("--out", svg_out, "output SVG path");
    plot->add_option("--title", title, "chart title");

    CLI11_PARSE(app, argc, argv);

    slsim::CliOverrides overrides;
    if (app.count_all() && simulate->count("--seed") + analyze->count("--seed") +
                               attack->count("--seed") >
                           0) {
        overrides.seed = seed;
    }
    if (simulate->count("--trials") > 0) overrides.trials = trials;
    overrides.out_dir = out;

    if (plot->parsed()) {
        slsim::cmd_plot(csvs, labels, svg_out, title);
        return 0;
    }
    const slsim::ExperimentConfig config =
        slsim::load_config(config_path, overrides);
    const std::string dir = config.output_dir.value_or(out);
    if (simulate->parsed()) {
        slsim::cmd_simulate(config, dir);
    } else if (analyze->parsed()) {
        slsim::cmd_analyze(config, dir);
    } else if (attack->parsed()) {
        slsim::cmd_attack(config, dir);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const slsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const slsim::InvalidTopologyError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const slsim::ModelError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const slsim::ContractError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const slsim::FeasibilityError& e) {
        std::cerr << "feasibility error: " << e.what() << "\n";
        return 3;
    } catch (const slsim::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const slsim::GenerationError& e) {
        std::cerr << "generation error: " << e.what() << "\n";
        return 3;
    } catch (const slsim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
