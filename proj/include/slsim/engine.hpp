#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slsim/attack.hpp"
#include "slsim/belief.hpp"
#include "slsim/model.hpp"
#include "slsim/network.hpp"
#include "slsim/rng.hpp"

namespace slsim {

/// Iteration-major record of one simulated trial. Row 0 holds the initial
/// beliefs, so there are iterations+1 rows.
struct Trajectory {
    std::vector<std::vector<std::array<double, 2>>> beliefs;
    Hypothesis true_state = Hypothesis::theta1;
    std::uint64_t seed = 0;
    std::string network_id;
    std::string attack_id;

    std::size_t iterations() const {
        return beliefs.empty() ? 0 : beliefs.size() - 1;
    }
    std::size_t n_agents() const {
        return beliefs.empty() ? 0 : beliefs.front().size();
    }
};

enum class LimitOutcome { wrong_state, true_state, indeterminate };
enum class TrialOutcome { wrong_state, true_state, undecided };

std::string limit_outcome_name(LimitOutcome v);
std::string trial_outcome_name(TrialOutcome v);

/// Asymptotic classification per candidate true state. margin is the
/// malicious side minus the normal side of the convergence threshold; a
/// positive margin means the network is driven to the wrong state.
struct OutcomePrediction {
    std::array<LimitOutcome, 2> for_true_state{LimitOutcome::indeterminate,
                                               LimitOutcome::indeterminate};
    std::array<double, 2> margins{};
};

/// Inverse-CDF draw from the agent's true likelihood under `true_state`.
std::size_t sample_observation(const AgentModel& m, Hypothesis true_state,
                               Rng& rng);

/// One synchronous trial: each round every agent samples from its true
/// model, runs the Bayes adapt step (malicious agents substitute their
/// distorted likelihoods), then all agents pool neighbour intermediates
/// with their combination weights. Initial beliefs are uniform unless
/// provided. Requires iterations >= 1.
Trajectory run_trial(const Network& net, const std::vector<AgentModel>& models,
                     const AttackSpec& attack, Hypothesis true_state,
                     int iterations, std::uint64_t seed,
                     const std::vector<BeliefVector>* initial_beliefs = nullptr);

/// Threshold classification from Theorem-style margins: for each candidate
/// true state, margin = sum over malicious agents of
/// u_l * E_{L(.|true)} ln(Lhat(.|other)/Lhat(.|true)) minus the network
/// divergence of the normal subnetwork. |margin| <= tol is reported as
/// indeterminate rather than guessed.
OutcomePrediction classify_limit(const Network& net, const CentralityVector& u,
                                 const std::vector<AgentModel>& models,
                                 const AttackSpec& attack, double tol = 1e-9);

/// Empirical proxy for almost-sure convergence: wrong/true when the average
/// belief on the true state stays below threshold / above 1-threshold for
/// the final `window` rounds, undecided otherwise (including when the
/// trajectory is shorter than the window).
TrialOutcome detect_outcome(const Trajectory& traj, double threshold,
                            int window);

/// Per-iteration arithmetic mean of the belief on `state` over all agents,
/// normal and malicious alike.
std::vector<double> average_belief(const Trajectory& traj, Hypothesis state);

struct RunSetup {
    Network net;
    std::vector<AgentModel> models;
    AttackSpec attack;
    Hypothesis true_state = Hypothesis::theta1;
    int iterations = 2000;
    std::uint64_t base_seed = 1;
    double detect_threshold = 1e-4;
    int detect_window = 50;
};

struct MonteCarloSummary {
    OutcomePrediction prediction;
    std::vector<TrialOutcome> outcomes;
    std::vector<std::uint64_t> seeds;
    std::vector<Trajectory> trajectories;
    // Across trials: mean of the per-round average belief on the true state.
    std::vector<double> mean_avg_belief;
    int decided_trials = 0;
    // Fraction of decided trials agreeing with the prediction; empty when
    // nothing was decided or the prediction is indeterminate.
    std::optional<double> agreement;
};

/// Trial t uses seed = base_seed + t, so trials are isolated streams and the
/// summary is independent of execution order. iterations == 0 is allowed
/// here and produces initial-only trajectories (every trial undecided).
MonteCarloSummary run_monte_carlo(const RunSetup& setup, int trials);

}  // namespace slsim
