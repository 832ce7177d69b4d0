#include "slsim/model.hpp"

#include <cmath>
#include <string>

#include "slsim/errors.hpp"
#include "slsim/network.hpp"

namespace slsim {

void validate_prior(const Prior& prior) {
    if (!(prior.pi1 >= 0.0) || !(prior.pi2 >= 0.0)) {
        throw ContractError("prior components must be non-negative");
    }
    if (std::abs(prior.pi1 + prior.pi2 - 1.0) > 1e-12) {
        throw ContractError("prior components must sum to 1");
    }
}

AgentModel::AgentModel(Pmf given_theta1, Pmf given_theta2)
    : l1_(std::move(given_theta1)), l2_(std::move(given_theta2)) {
    if (l1_.size() != l2_.size()) {
        throw ModelError("likelihood PMFs must share one alphabet");
    }
    // Equal supports keep both KL divergences finite.
    for (std::size_t s = 0; s < l1_.size(); ++s) {
        if ((l1_[s] > 0.0) != (l2_[s] > 0.0)) {
            throw ModelError("likelihood supports differ at symbol " +
                             std::to_string(s) +
                             "; KL divergence would be infinite");
        }
    }
}

AgentModel make_bsc(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw ModelError("BSC parameter must lie strictly inside (0,1); p=" +
                         std::to_string(p) + " makes the KL divergence infinite");
    }
    return AgentModel(Pmf({p, 1.0 - p}), Pmf({1.0 - p, p}));
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) {
        throw ModelError("KL divergence needs PMFs over one alphabet");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s] == 0.0) continue;  // 0 * ln(0/q) = 0
        if (q[s] == 0.0) {
            throw ModelError("KL divergence is infinite: q vanishes at symbol " +
                             std::to_string(s) + " inside p's support");
        }
        sum += p[s] * std::log(p[s] / q[s]);
    }
    // Rounding can leave a tiny negative residue when p ~ q.
    if (sum < 0.0 && sum > -1e-12) sum = 0.0;
    return sum;
}

bool is_informative(const AgentModel& m) {
    for (std::size_t s = 0; s < m.alphabet_size(); ++s) {
        if (std::abs(m.l1()[s] - m.l2()[s]) > 1e-15) return true;
    }
    return false;
}

std::vector<double> relative_confidence(const AgentModel& m,
                                        const Prior& prior) {
    validate_prior(prior);
    std::vector<double> z(m.alphabet_size());
    for (std::size_t s = 0; s < z.size(); ++s) {
        z[s] = prior.pi1 * m.l1()[s] - prior.pi2 * m.l2()[s];
    }
    return z;
}

ConfidencePartition confidence_partition(const std::vector<double>& z) {
    ConfidencePartition part;
    part.z = z;
    for (std::size_t s = 0; s < z.size(); ++s) {
        if (z[s] >= 0.0) {
            part.d1.push_back(s);
        } else {
            part.d2.push_back(s);
        }
    }
    return part;
}

double network_divergence(const Network& net, const CentralityVector& u,
                          const std::vector<AgentModel>& models,
                          Hypothesis true_state) {
    if (models.size() != net.n_agents || u.u.size() != net.n_agents) {
        throw ContractError("network divergence needs one model and one "
                            "centrality entry per agent");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < net.n_agents; ++k) {
        if (net.roles[k] != Role::normal) continue;
        s += u.u[k] * kl_divergence(models[k].likelihood(true_state),
                                    models[k].likelihood(other(true_state)));
    }
    return s;
}

}  // namespace slsim
