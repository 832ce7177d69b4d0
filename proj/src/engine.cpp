#include "slsim/engine.hpp"

#include <cmath>
#include <string>

#include "slsim/errors.hpp"

namespace slsim {

std::string limit_outcome_name(LimitOutcome v) {
    switch (v) {
        case LimitOutcome::wrong_state: return "wrong";
        case LimitOutcome::true_state: return "true";
        case LimitOutcome::indeterminate: return "indeterminate";
    }
    return "unknown";
}

std::string trial_outcome_name(TrialOutcome v) {
    switch (v) {
        case TrialOutcome::wrong_state: return "wrong";
        case TrialOutcome::true_state: return "true";
        case TrialOutcome::undecided: return "undecided";
    }
    return "unknown";
}

std::size_t sample_observation(const AgentModel& m, Hypothesis true_state,
                               Rng& rng) {
    const Pmf& pmf = m.likelihood(true_state);
    const double u = uniform01(rng);
    double cumulative = 0.0;
    for (std::size_t s = 0; s < pmf.size(); ++s) {
        cumulative += pmf[s];
        if (u < cumulative) return s;
    }
    return pmf.size() - 1;  // u landed in the rounding slack at the top
}

Trajectory run_trial(const Network& net, const std::vector<AgentModel>& models,
                     const AttackSpec& attack, Hypothesis true_state,
                     int iterations, std::uint64_t seed,
                     const std::vector<BeliefVector>* initial_beliefs) {
    if (iterations < 1) throw ContractError("iteration budget must be >= 1");
    if (models.size() != net.n_agents) {
        throw ContractError("one model per agent required");
    }
    if (!is_strongly_connected(net)) {
        throw ContractError("trial requires a strongly connected network");
    }
    const std::size_t n = net.n_agents;
    std::vector<BeliefVector> beliefs(n, BeliefVector::uniform());
    if (initial_beliefs) {
        if (initial_beliefs->size() != n) {
            throw ContractError("one initial belief per agent required");
        }
        beliefs = *initial_beliefs;
    }

    Trajectory traj;
    traj.true_state = true_state;
    traj.seed = seed;
    std::size_t malicious_count = 0;
    for (const Role r : net.roles) {
        if (r == Role::malicious) ++malicious_count;
    }
    traj.network_id = "agents=" + std::to_string(n) +
                      ";malicious=" + std::to_string(malicious_count);
    traj.attack_id = attack_family_name(attack.family) +
                     ";eps=" + std::to_string(attack.epsilon);
    traj.beliefs.reserve(static_cast<std::size_t>(iterations) + 1);
    auto snapshot = [&]() {
        std::vector<std::array<double, 2>> row(n);
        for (std::size_t k = 0; k < n; ++k) row[k] = beliefs[k].linear();
        traj.beliefs.push_back(std::move(row));
    };
    snapshot();

    Rng rng(seed);
    std::vector<BeliefVector> intermediates(n);
    std::vector<std::pair<BeliefVector, double>> pool;
    pool.reserve(n);
    for (int i = 0; i < iterations; ++i) {
        // Adapt: every agent observes through its true model; malicious
        // agents substitute the distorted likelihoods in the Bayes update.
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t obs = sample_observation(models[k], true_state, rng);
            const bool malicious = net.roles[k] == Role::malicious;
            const Pmf& m1 =
                malicious ? attack.distortion_for(k).l1_hat : models[k].l1();
            const Pmf& m2 =
                malicious ? attack.distortion_for(k).l2_hat : models[k].l2();
            intermediates[k] = adapt_step(beliefs[k], {m1[obs], m2[obs]});
        }
        // Combine: synchronous geometric pooling with the column weights.
        for (std::size_t k = 0; k < n; ++k) {
            pool.clear();
            for (std::size_t l = 0; l < n; ++l) {
                const double w = net.combination.at(l, k);
                if (w > 0.0) pool.emplace_back(intermediates[l], w);
            }
            beliefs[k] = combine_step(pool);
        }
        snapshot();
    }
    return traj;
}

OutcomePrediction classify_limit(const Network& net, const CentralityVector& u,
                                 const std::vector<AgentModel>& models,
                                 const AttackSpec& attack, double tol) {
    if (u.u.size() != net.n_agents) {
        throw ContractError("one centrality entry per agent required");
    }
    OutcomePrediction prediction;
    for (int j = 0; j < 2; ++j) {
        const Hypothesis candidate = hypothesis_from_index(j);
        const double lhs = network_divergence(net, u, models, candidate);
        double rhs = 0.0;
        for (std::size_t k = 0; k < net.n_agents; ++k) {
            if (net.roles[k] != Role::malicious) continue;
            const DistortedPair& hat = attack.distortion_for(k);
            const Pmf& truth = models[k].likelihood(candidate);
            const Pmf& hat_true = j == 0 ? hat.l1_hat : hat.l2_hat;
            const Pmf& hat_other = j == 0 ? hat.l2_hat : hat.l1_hat;
            double expectation = 0.0;
            for (std::size_t s = 0; s < truth.size(); ++s) {
                if (truth[s] == 0.0) continue;
                if (!(hat_true[s] > 0.0) || !(hat_other[s] > 0.0)) {
                    throw ContractError(
                        "distorted PMF has zero mass inside the true support "
                        "(epsilon floor violated)");
                }
                expectation += truth[s] * std::log(hat_other[s] / hat_true[s]);
            }
            rhs += u.u[k] * expectation;
        }
        const double margin = rhs - lhs;
        prediction.margins[j] = margin;
        if (margin > tol) {
            prediction.for_true_state[j] = LimitOutcome::wrong_state;
        } else if (margin < -tol) {
            prediction.for_true_state[j] = LimitOutcome::true_state;
        } else {
            prediction.for_true_state[j] = LimitOutcome::indeterminate;
        }
    }
    return prediction;
}

std::vector<double> average_belief(const Trajectory& traj, Hypothesis state) {
    std::vector<double> avg(traj.beliefs.size(), 0.0);
    const int idx = index_of(state);
    for (std::size_t i = 0; i < traj.beliefs.size(); ++i) {
        double sum = 0.0;
        for (const auto& b : traj.beliefs[i]) sum += b[idx];
        avg[i] = sum / static_cast<double>(traj.beliefs[i].size());
    }
    return avg;
}

TrialOutcome detect_outcome(const Trajectory& traj, double threshold,
                            int window) {
    if (!(threshold > 0.0) || !(threshold < 0.5)) {
        throw ContractError("detection threshold must lie in (0, 0.5)");
    }
    if (window < 1) throw ContractError("detection window must be >= 1");
    const auto avg = average_belief(traj, traj.true_state);
    // A trajectory shorter than the window cannot be decided.
    if (avg.size() < static_cast<std::size_t>(window) + 1) {
        return TrialOutcome::undecided;
    }
    bool all_low = true, all_high = true;
    for (std::size_t i = avg.size() - static_cast<std::size_t>(window);
         i < avg.size(); ++i) {
        if (avg[i] >= threshold) all_low = false;
        if (avg[i] <= 1.0 - threshold) all_high = false;
    }
    if (all_low) return TrialOutcome::wrong_state;
    if (all_high) return TrialOutcome::true_state;
    return TrialOutcome::undecided;
}

MonteCarloSummary run_monte_carlo(const RunSetup& setup, int trials) {
    if (trials < 1) throw ContractError("at least one trial required");
    if (setup.iterations < 0) throw ContractError("iterations cannot be negative");

    MonteCarloSummary summary;
    const CentralityVector u = perron_eigenvector(setup.net);
    summary.prediction =
        classify_limit(setup.net, u, setup.models, setup.attack);

    const std::size_t rows = static_cast<std::size_t>(setup.iterations) + 1;
    summary.mean_avg_belief.assign(rows, 0.0);

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = setup.base_seed + static_cast<std::uint64_t>(t);
        Trajectory traj;
        if (setup.iterations == 0) {
            // Degenerate budget: record the initial beliefs only.
            traj.true_state = setup.true_state;
            traj.seed = seed;
            traj.beliefs.assign(
                1, std::vector<std::array<double, 2>>(setup.net.n_agents,
                                                      {0.5, 0.5}));
        } else {
            traj = run_trial(setup.net, setup.models, setup.attack,
                             setup.true_state, setup.iterations, seed);
        }
        const auto avg = average_belief(traj, setup.true_state);
        for (std::size_t i = 0; i < rows; ++i) {
            summary.mean_avg_belief[i] += avg[i];
        }
        summary.outcomes.push_back(
            detect_outcome(traj, setup.detect_threshold, setup.detect_window));
        summary.seeds.push_back(seed);
        summary.trajectories.push_back(std::move(traj));
    }
    for (double& v : summary.mean_avg_belief) v /= trials;

    const int true_idx = index_of(setup.true_state);
    const LimitOutcome predicted = summary.prediction.for_true_state[true_idx];
    int agreeing = 0;
    for (const TrialOutcome outcome : summary.outcomes) {
        if (outcome == TrialOutcome::undecided) continue;
        ++summary.decided_trials;
        const bool match =
            (outcome == TrialOutcome::wrong_state &&
             predicted == LimitOutcome::wrong_state) ||
            (outcome == TrialOutcome::true_state &&
             predicted == LimitOutcome::true_state);
        if (match) ++agreeing;
    }
    if (summary.decided_trials > 0 && predicted != LimitOutcome::indeterminate) {
        summary.agreement =
            static_cast<double>(agreeing) / summary.decided_trials;
    }
    return summary;
}

}  // namespace slsim
