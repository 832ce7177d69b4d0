#pragma once

#include <string>
#include <vector>

#include "slsim/engine.hpp"
#include "slsim/network.hpp"

namespace slsim {

/// One parsed summary series: avg belief on the true state per iteration.
struct SummarySeries {
    std::vector<double> values;  // index = iteration
};

/// Trajectory CSV: header `iter,agent,role,belief_theta1,belief_theta2`,
/// one row per (iteration, agent), floats with 17 significant digits.
std::string format_trajectory_csv(const Trajectory& traj,
                                  const std::vector<Role>& roles);

/// Summary CSV: header `iter,avg_belief_true_state`.
std::string format_summary_csv(const std::vector<double>& mean_avg_belief);

/// Parses and validates a summary CSV body. Errors name the offending
/// 1-based line.
SummarySeries parse_summary_csv(const std::string& text);

/// Schema check for a trajectory CSV body; throws IoError naming the
/// offending line.
void validate_trajectory_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& body);
std::string read_text_file(const std::string& path);

}  // namespace slsim
