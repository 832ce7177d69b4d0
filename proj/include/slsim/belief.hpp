#pragma once

#include <array>
#include <span>
#include <utility>

#include "slsim/model.hpp"

namespace slsim {

/// Belief over the two hypotheses, stored as normalised log-probabilities
/// (logsumexp of the components is 0). Beliefs decay geometrically under
/// the learning dynamics, so the linear domain underflows within a few
/// hundred rounds; all arithmetic stays in logs.
struct BeliefVector {
    std::array<double, 2> log_b{};

    static BeliefVector uniform() { return from_linear(0.5, 0.5); }

    /// Requires strictly positive components; normalises the pair.
    static BeliefVector from_linear(double on_theta1, double on_theta2);

    double belief(Hypothesis h) const;
    std::array<double, 2> linear() const;

    /// Renormalise in place by subtracting the logsumexp.
    void normalize();
};

/// max + log1p(exp(min - max)); stable for any magnitudes.
double log_sum_exp(double a, double b);

/// Bayes update against the two likelihood masses at the observed symbol.
/// Throws ContractError when either mass is zero (degenerate update).
BeliefVector adapt_step(const BeliefVector& belief,
                        std::pair<double, double> likelihood_at_obs);

/// Weighted geometric pooling of neighbour intermediates: the log-belief is
/// the weight-averaged neighbour log-belief, renormalised. Weights must be
/// positive and sum to 1 within 1e-12.
BeliefVector combine_step(
    std::span<const std::pair<BeliefVector, double>> neighbor_intermediates);

}  // namespace slsim
