#pragma once

#include <string>
#include <vector>

#include "slsim/config.hpp"

namespace slsim {

/// Overrides taken from the command line.
struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

ExperimentConfig load_config(const std::string& path,
                             const CliOverrides& overrides);

/// Runs the configured Monte Carlo experiment and writes one trajectory CSV
/// per trial, the summary CSV, and a run manifest into the output
/// directory. Returns the manifest path.
std::string cmd_simulate(const ExperimentConfig& config,
                         const std::string& out_dir);

/// Prints the threshold analysis (divergences, per-adversary contributions,
/// margins, prediction) and writes its machine-readable twin. Returns the
/// report path.
std::string cmd_analyze(const ExperimentConfig& config,
                        const std::string& out_dir);

/// Writes every adversary's synthesized PMF pair with regime, clamp events
/// and checker margins. Returns the dump path.
std::string cmd_attack(const ExperimentConfig& config,
                       const std::string& out_dir);

/// Reads summary CSVs and renders them as one SVG chart.
void cmd_plot(const std::vector<std::string>& summary_csv_paths,
              const std::vector<std::string>& labels,
              const std::string& out_svg_path, const std::string& title);

/// FNV-1a over the canonical config dump; hex string for the manifest.
std::string config_hash(const ExperimentConfig& config);

}  // namespace slsim
