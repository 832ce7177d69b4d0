#include "slsim/network.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "slsim/errors.hpp"
#include "slsim/rng.hpp"

namespace slsim {

namespace {

constexpr double kColumnSumTol = 1e-12;
constexpr int kMaxTopologyRedraws = 1000;
constexpr int kMaxPowerIterations = 100000;

// Reachability over edges selected by `edge`, from agent 0.
template <typename EdgePredicate>
std::size_t reachable_count(std::size_t n, EdgePredicate edge) {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < n; ++w) {
            if (!seen[w] && edge(v, w)) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count;
}

}  // namespace

std::string role_name(Role r) {
    return r == Role::normal ? "normal" : "malicious";
}

std::vector<double> SquareMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t l = 0; l < n_; ++l) {
        double acc = 0.0;
        const double* row = a_.data() + l * n_;
        for (std::size_t k = 0; k < n_; ++k) acc += row[k] * x[k];
        y[l] = acc;
    }
    return y;
}

void validate_network(const Network& net) {
    const std::size_t n = net.n_agents;
    if (n == 0) throw InvalidTopologyError("network has no agents");
    if (net.roles.size() != n || net.adjacency.size() != n ||
        net.combination.size() != n) {
        throw InvalidTopologyError("network field sizes disagree");
    }
    bool any_self_weight = false;
    for (std::size_t k = 0; k < n; ++k) {
        double column_sum = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            if (net.adjacency.at(l, k) != net.adjacency.at(k, l)) {
                throw InvalidTopologyError("adjacency is not symmetric");
            }
            const double w = net.combination.at(l, k);
            if (w < 0.0) {
                throw InvalidTopologyError("negative combination weight");
            }
            if ((w > 0.0) != net.adjacency.at(l, k)) {
                throw InvalidTopologyError(
                    "weight support must match adjacency at (" +
                    std::to_string(l) + "," + std::to_string(k) + ")");
            }
            column_sum += w;
        }
        if (std::abs(column_sum - 1.0) > kColumnSumTol) {
            throw InvalidTopologyError("column " + std::to_string(k) +
                                       " sums to " + std::to_string(column_sum));
        }
        if (net.combination.at(k, k) > 0.0) any_self_weight = true;
    }
    if (!any_self_weight) {
        throw InvalidTopologyError("no agent has a positive self-weight");
    }
}

Network build_uniform_weights(const Adjacency& adjacency,
                              const std::vector<Role>& roles) {
    const std::size_t n = adjacency.size();
    if (roles.size() != n) {
        throw InvalidTopologyError("one role per agent required");
    }
    Network net;
    net.n_agents = n;
    net.roles = roles;
    net.adjacency = adjacency;
    net.combination = SquareMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t degree = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if (adjacency.at(l, k)) ++degree;
        }
        if (degree == 0) {
            throw InvalidTopologyError("agent " + std::to_string(k) +
                                       " has an empty neighbour set");
        }
        const double w = 1.0 / static_cast<double>(degree);
        for (std::size_t l = 0; l < n; ++l) {
            if (adjacency.at(l, k)) net.combination.at(l, k) = w;
        }
    }
    validate_network(net);
    return net;
}

bool is_strongly_connected(const Network& net) {
    const std::size_t n = net.n_agents;
    if (n == 0) return false;
    bool any_self = false;
    for (std::size_t k = 0; k < n; ++k) {
        if (net.combination.at(k, k) > 0.0) any_self = true;
    }
    if (!any_self) return false;
    auto forward = [&](std::size_t v, std::size_t w) {
        return net.combination.at(w, v) > 0.0;
    };
    auto backward = [&](std::size_t v, std::size_t w) {
        return net.combination.at(v, w) > 0.0;
    };
    return reachable_count(n, forward) == n && reachable_count(n, backward) == n;
}

CentralityVector perron_eigenvector(const Network& net, double tol) {
    if (!is_strongly_connected(net)) {
        throw ContractError(
            "Perron eigenvector requires a strongly connected network");
    }
    const std::size_t n = net.n_agents;
    std::vector<double> u(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    for (int it = 0; it < kMaxPowerIterations; ++it) {
        std::vector<double> next = net.combination.apply(u);
        // Column-stochastic A preserves the L1 mass exactly in real
        // arithmetic; renormalise to stop floating drift.
        double sum = std::accumulate(next.begin(), next.end(), 0.0);
        for (double& v : next) v /= sum;
        residual = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            residual = std::max(residual, std::abs(next[k] - u[k]));
        }
        if (residual < tol) {
            // u itself satisfies ||Au - u||_inf < tol; return it rather
            // than the uncertified next iterate.
            for (double v : u) {
                if (!(v > 0.0)) {
                    throw NumericError("Perron vector has a non-positive entry",
                                       residual);
                }
            }
            return CentralityVector{std::move(u)};
        }
        u = std::move(next);
    }
    throw NumericError("power iteration did not converge", residual);
}

Network random_topology(std::size_t n, std::size_t n_malicious,
                        double edge_prob, std::uint64_t seed) {
    if (n == 0) throw ContractError("at least one agent required");
    if (!(edge_prob > 0.0) || edge_prob > 1.0) {
        throw ContractError("edge_prob must lie in (0, 1]");
    }
    if (n_malicious >= n) {
        throw ContractError("n_malicious must be smaller than n");
    }
    Rng rng(seed);
    std::vector<Role> roles(n, Role::normal);
    for (int attempt = 0; attempt < kMaxTopologyRedraws; ++attempt) {
        Adjacency adj(n);
        for (std::size_t k = 0; k < n; ++k) adj.set(k, k, true);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (uniform01(rng) < edge_prob) adj.set(i, j, true);
            }
        }
        Network net = build_uniform_weights(adj, roles);
        if (!is_strongly_connected(net)) continue;

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        deterministic_shuffle(order, rng);
        for (std::size_t m = 0; m < n_malicious; ++m) {
            net.roles[order[m]] = Role::malicious;
        }
        return net;
    }
    throw GenerationError("no strongly connected draw within " +
                          std::to_string(kMaxTopologyRedraws) + " attempts");
}

Network star_topology(std::size_t n, bool hub_is_malicious,
                      std::size_t n_malicious) {
    if (n < 2) throw ContractError("star topology needs at least two agents");
    if (n_malicious >= n) {
        throw ContractError("n_malicious must be smaller than n");
    }
    if (hub_is_malicious && n_malicious < 1) {
        throw ContractError("a malicious hub counts towards n_malicious");
    }
    Adjacency adj(n);
    for (std::size_t k = 0; k < n; ++k) {
        adj.set(k, k, true);
        if (k > 0) adj.set(0, k, true);
    }
    std::vector<Role> roles(n, Role::normal);
    std::size_t assigned = 0;
    if (hub_is_malicious) {
        roles[0] = Role::malicious;
        ++assigned;
    }
    for (std::size_t leaf = 1; leaf < n && assigned < n_malicious; ++leaf) {
        roles[leaf] = Role::malicious;
        ++assigned;
    }
    return build_uniform_weights(adj, roles);
}

}  // namespace slsim
