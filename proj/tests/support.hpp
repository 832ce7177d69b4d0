#pragma once

// Shared helpers for the test suites: seeded generators and independent
// oracles. Everything here deliberately avoids the library's computation
// paths it is used to check.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "slsim/model.hpp"
#include "slsim/rng.hpp"

namespace testsupport {

// Dirichlet(1,...,1) draw via normalised exponentials; strictly positive
// masses with probability one.
inline std::vector<double> random_simplex_point(std::size_t n,
                                                slsim::Rng& rng) {
    std::vector<double> v(n);
    double total = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - slsim::uniform01(rng));
        total += x;
    }
    for (double& x : v) x /= total;
    return v;
}

inline slsim::Pmf random_pmf(std::size_t n, slsim::Rng& rng) {
    return slsim::Pmf(random_simplex_point(n, rng));
}

inline slsim::AgentModel random_informative_model(std::size_t n,
                                                  slsim::Rng& rng) {
    while (true) {
        slsim::AgentModel m(random_pmf(n, rng), random_pmf(n, rng));
        if (slsim::is_informative(m)) return m;
    }
}

// Direct probability-domain evaluation of one adapt+combine round, used as
// the oracle for the log-domain engine. beliefs[k] are linear beliefs,
// masses[k] the two likelihood values at agent k's observation, weights
// lists (neighbour, weight) pairs per agent.
inline std::vector<std::array<double, 2>> linear_domain_round(
    const std::vector<std::array<double, 2>>& beliefs,
    const std::vector<std::array<double, 2>>& masses,
    const std::vector<std::vector<std::pair<std::size_t, double>>>& weights) {
    const std::size_t n = beliefs.size();
    std::vector<std::array<double, 2>> psi(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double p1 = masses[k][0] * beliefs[k][0];
        const double p2 = masses[k][1] * beliefs[k][1];
        psi[k] = {p1 / (p1 + p2), p2 / (p1 + p2)};
    }
    std::vector<std::array<double, 2>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double g1 = 1.0, g2 = 1.0;
        for (const auto& [l, w] : weights[k]) {
            g1 *= std::pow(psi[l][0], w);
            g2 *= std::pow(psi[l][1], w);
        }
        out[k] = {g1 / (g1 + g2), g2 / (g1 + g2)};
    }
    return out;
}

// Objective of the prior-averaged distortion subproblem:
// f(p) = sum_s z[s] * ln p[s].
inline double confidence_objective(const std::vector<double>& z,
                                   const std::vector<double>& p) {
    double f = 0.0;
    for (std::size_t s = 0; s < z.size(); ++s) f += z[s] * std::log(p[s]);
    return f;
}

// Exhaustive lattice search over the eps-floored simplex with the given
// step: first n-1 coordinates run over {eps, eps+step, ...}, the last takes
// the remainder when it stays above the floor. Returns the extremal
// objective value; `maximize` selects the subproblem direction.
inline double grid_search_extremum(const std::vector<double>& z, double eps,
                                   double step, bool maximize) {
    const std::size_t n = z.size();
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    std::vector<double> p(n, eps);
    if (n == 2) {
        for (double x = eps; x <= 1.0 - eps + 1e-15; x += step) {
            const double rest = 1.0 - x;
            if (rest < eps - 1e-15) break;
            p[0] = x;
            p[1] = rest;
            const double f = confidence_objective(z, p);
            best = maximize ? std::max(best, f) : std::min(best, f);
        }
        return best;
    }
    if (n == 3) {
        for (double x = eps; x <= 1.0 - 2 * eps + 1e-15; x += step) {
            for (double y = eps; x + y <= 1.0 - eps + 1e-15; y += step) {
                const double rest = 1.0 - x - y;
                if (rest < eps - 1e-15) break;
                p[0] = x;
                p[1] = y;
                p[2] = rest;
                const double f = confidence_objective(z, p);
                best = maximize ? std::max(best, f) : std::min(best, f);
            }
        }
        return best;
    }
    throw std::logic_error("grid oracle supports alphabets of size 2 and 3");
}

}  // namespace testsupport
