#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace slsim {

enum class Role : std::uint8_t { normal, malicious };

std::string role_name(Role r);

/// Dense square matrix, row-major. Entry (l, k) is the combination weight
/// agent k assigns to neighbour l, so every column sums to 1.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t l, std::size_t k) const { return a_[l * n_ + k]; }
    double& at(std::size_t l, std::size_t k) { return a_[l * n_ + k]; }

    /// y = A x
    std::vector<double> apply(const std::vector<double>& x) const;

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Symmetric boolean neighbour relation; entry (l, k) true when l and k are
/// linked. Self-membership is expressed as a true diagonal entry.
class Adjacency {
public:
    Adjacency() = default;
    explicit Adjacency(std::size_t n) : n_(n), e_(n * n, 0) {}

    std::size_t size() const { return n_; }
    bool at(std::size_t l, std::size_t k) const { return e_[l * n_ + k] != 0; }
    void set(std::size_t l, std::size_t k, bool value) {
        e_[l * n_ + k] = value ? 1 : 0;
        e_[k * n_ + l] = value ? 1 : 0;
    }

    bool operator==(const Adjacency&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> e_;
};

struct Network {
    std::size_t n_agents = 0;
    std::vector<Role> roles;
    Adjacency adjacency;
    SquareMatrix combination;  // column-stochastic, support == adjacency

    bool operator==(const Network&) const = default;
};

struct CentralityVector {
    std::vector<double> u;  // positive, sums to 1, fixed point of combination
};

/// Checks the Network invariants: symmetric adjacency, column sums within
/// 1e-12 of 1, weight support exactly matching adjacency, and at least one
/// positive self-weight. Throws InvalidTopologyError on violation.
void validate_network(const Network& net);

/// Uniform combination weights: a(l,k) = 1/|N_k| for every neighbour l of k.
Network build_uniform_weights(const Adjacency& adjacency,
                              const std::vector<Role>& roles);

/// True iff the positive-weight digraph is irreducible and some agent has a
/// positive self-weight.
bool is_strongly_connected(const Network& net);

/// Perron eigenvector of the combination matrix by power iteration with L1
/// renormalisation, started from the uniform vector. Converged when
/// ||Au - u||_inf < tol; throws NumericError (carrying the residual) after
/// 100000 iterations without convergence.
CentralityVector perron_eigenvector(const Network& net, double tol = 1e-12);

/// Erdos-Renyi draw with self-loops on every agent, re-drawn (up to 1000
/// times) until strongly connected. Malicious roles fall on the first
/// n_malicious indices of a seeded shuffle. Pure function of its arguments.
Network random_topology(std::size_t n, std::size_t n_malicious,
                        double edge_prob, std::uint64_t seed);

/// Hub at index 0 adjacent to every leaf, self-loops everywhere, uniform
/// weights. Malicious roles: the hub when flagged, then the lowest-index
/// leaves until n_malicious is reached.
Network star_topology(std::size_t n, bool hub_is_malicious,
                      std::size_t n_malicious);

}  // namespace slsim
