#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slsim/attack.hpp"
#include "slsim/engine.hpp"
#include "slsim/model.hpp"
#include "slsim/network.hpp"

namespace slsim {

/// Fully validated experiment description. parse_config applies defaults
/// and runs every model/topology assumption check, so holders of an
/// ExperimentConfig never re-validate.
struct ExperimentConfig {
    enum class TopologyKind { random, star, explicit_graph };

    TopologyKind topology_kind = TopologyKind::random;
    std::size_t n_agents = 0;
    std::size_t n_malicious = 0;
    double edge_prob = 0.3;          // random topology
    bool hub_is_malicious = false;   // star topology
    std::optional<Network> explicit_network;

    std::vector<AgentModel> models;

    AttackFamily attack_family = AttackFamily::honest;
    Prior prior;
    double epsilon = 1e-3;
    DivergenceKnowledge knowledge;  // optional s1/s2/u for known_divergence

    Hypothesis true_state = Hypothesis::theta1;
    int iterations = 2000;
    int trials = 20;
    std::uint64_t base_seed = 1;
    double detect_threshold = 1e-4;
    int detect_window = 50;
    std::optional<std::string> output_dir;
};

/// Parses and validates a strict-schema JSON document. Unknown keys are
/// errors carrying the offending field path. Defaults: prior (0.5, 0.5),
/// epsilon 1e-3 (1e-4 for the known_divergence family), iterations 2000,
/// trials 20, threshold 1e-4, window 50, base_seed 1.
ExperimentConfig parse_config(const nlohmann::json& document);

ExperimentConfig parse_config_text(const std::string& text);

/// Normalised re-emission: parse_config(emit_config(c)) reproduces c.
nlohmann::json emit_config(const ExperimentConfig& config);

/// Instantiates the configured network (random topologies use base_seed).
Network build_network(const ExperimentConfig& config);

/// Full engine setup: network, models, materialised attack. The attack
/// stream seed is derived from base_seed and reported in the manifest.
struct PreparedExperiment {
    RunSetup setup;
    CentralityVector centrality;
    std::vector<AttackNote> attack_notes;
    std::uint64_t attack_seed = 0;
};

PreparedExperiment prepare_experiment(const ExperimentConfig& config);

}  // namespace slsim
