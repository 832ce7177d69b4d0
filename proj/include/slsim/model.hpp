#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "slsim/pmf.hpp"

namespace slsim {

struct Network;  // network.hpp
struct CentralityVector;

enum class Hypothesis : int { theta1 = 0, theta2 = 1 };

constexpr int index_of(Hypothesis h) { return static_cast<int>(h); }
constexpr Hypothesis other(Hypothesis h) {
    return h == Hypothesis::theta1 ? Hypothesis::theta2 : Hypothesis::theta1;
}
constexpr Hypothesis hypothesis_from_index(int i) {
    return i == 0 ? Hypothesis::theta1 : Hypothesis::theta2;
}

/// Prior over the two hypotheses. Components must be non-negative and sum
/// to 1 within 1e-12.
struct Prior {
    double pi1 = 0.5;
    double pi2 = 0.5;
};

void validate_prior(const Prior& prior);

/// An agent's observation model: one likelihood PMF per hypothesis, over a
/// shared alphabet. Construction enforces equal supports so that both KL
/// divergences are finite.
class AgentModel {
public:
    AgentModel(Pmf given_theta1, Pmf given_theta2);

    std::size_t alphabet_size() const { return l1_.size(); }
    const Pmf& l1() const { return l1_; }
    const Pmf& l2() const { return l2_; }
    const Pmf& likelihood(Hypothesis h) const {
        return h == Hypothesis::theta1 ? l1_ : l2_;
    }

    bool operator==(const AgentModel&) const = default;

private:
    Pmf l1_;
    Pmf l2_;
};

/// Binary symmetric channel with correct-symbol probability p in (0,1):
/// L1 = (p, 1-p), L2 = (1-p, p).
AgentModel make_bsc(double p);

/// KL divergence in nats, with the 0*ln(0/q) = 0 convention. Throws
/// ModelError when q vanishes on p's support.
double kl_divergence(const Pmf& p, const Pmf& q);

/// False iff the two likelihoods agree on every symbol (within 1e-15).
bool is_informative(const AgentModel& m);

/// Relative confidence per symbol: Z(s) = pi1*L1(s) - pi2*L2(s).
std::vector<double> relative_confidence(const AgentModel& m, const Prior& prior);

/// Split of the alphabet by the sign of Z. Ties (Z == 0) go to d1.
struct ConfidencePartition {
    std::vector<double> z;
    std::vector<std::size_t> d1;  // Z >= 0
    std::vector<std::size_t> d2;  // Z < 0
};

ConfidencePartition confidence_partition(const std::vector<double>& z);

/// Centrality-weighted sum of the normal agents' KL divergences from
/// state `true_state` to the other state.
double network_divergence(const Network& net, const CentralityVector& u,
                          const std::vector<AgentModel>& models,
                          Hypothesis true_state);

}  // namespace slsim
