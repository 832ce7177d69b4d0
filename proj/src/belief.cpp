#include "slsim/belief.hpp"

#include <cmath>

#include "slsim/errors.hpp"

namespace slsim {

double log_sum_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

BeliefVector BeliefVector::from_linear(double on_theta1, double on_theta2) {
    if (!(on_theta1 > 0.0) || !(on_theta2 > 0.0)) {
        throw ContractError("belief components must be strictly positive");
    }
    BeliefVector b{{std::log(on_theta1), std::log(on_theta2)}};
    b.normalize();
    return b;
}

void BeliefVector::normalize() {
    const double lse = log_sum_exp(log_b[0], log_b[1]);
    log_b[0] -= lse;
    log_b[1] -= lse;
}

double BeliefVector::belief(Hypothesis h) const {
    return std::exp(log_b[index_of(h)]);
}

std::array<double, 2> BeliefVector::linear() const {
    return {std::exp(log_b[0]), std::exp(log_b[1])};
}

BeliefVector adapt_step(const BeliefVector& belief,
                        std::pair<double, double> likelihood_at_obs) {
    const auto [m1, m2] = likelihood_at_obs;
    if (!(m1 > 0.0) || !(m2 > 0.0)) {
        throw ContractError(
            "degenerate update: zero likelihood mass at the observed symbol");
    }
    BeliefVector out{{belief.log_b[0] + std::log(m1),
                      belief.log_b[1] + std::log(m2)}};
    out.normalize();
    return out;
}

BeliefVector combine_step(
    std::span<const std::pair<BeliefVector, double>> neighbor_intermediates) {
    if (neighbor_intermediates.empty()) {
        throw ContractError("combine step needs at least one neighbour");
    }
    double weight_sum = 0.0;
    BeliefVector out{{0.0, 0.0}};
    for (const auto& [psi, weight] : neighbor_intermediates) {
        if (!(weight > 0.0)) {
            throw ContractError("combination weights must be positive");
        }
        weight_sum += weight;
        out.log_b[0] += weight * psi.log_b[0];
        out.log_b[1] += weight * psi.log_b[1];
    }
    if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw ContractError("combination weights must sum to 1");
    }
    out.normalize();
    return out;
}

}  // namespace slsim
