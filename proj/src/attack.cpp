#include "slsim/attack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slsim/errors.hpp"

namespace slsim {

namespace {

constexpr int kMaxHalvings = 60;

// Gibbs-style allocation: masses proportional to `weights` with total
// `budget`, spread over `symbols`. All-zero weights are a flat direction of
// the objective; the budget is then spread uniformly.
void allocate_proportional(std::vector<double>& masses,
                           const std::vector<std::size_t>& symbols,
                           const std::vector<double>& weights, double budget) {
    double total = 0.0;
    for (std::size_t s : symbols) total += weights[s];
    if (total == 0.0) {
        for (std::size_t s : symbols) {
            masses[s] = budget / static_cast<double>(symbols.size());
        }
        return;
    }
    for (std::size_t s : symbols) {
        masses[s] = weights[s] * budget / total;
    }
}

SynthesizedAttack finalize_pair(std::vector<double> m1, std::vector<double> m2,
                                AsudRegime regime, double eps) {
    const int clamps = clamp_to_floor(m1, eps) + clamp_to_floor(m2, eps);
    return SynthesizedAttack{
        DistortedPair{Pmf(std::move(m1)), Pmf(std::move(m2))}, regime, clamps};
}

}  // namespace

AttackFamily attack_family_from_name(const std::string& name) {
    if (name == "honest") return AttackFamily::honest;
    if (name == "known_divergence") return AttackFamily::known_divergence;
    if (name == "asud") return AttackFamily::asud;
    if (name == "random") return AttackFamily::random;
    throw ConfigError("unknown attack family '" + name + "'");
}

std::string attack_family_name(AttackFamily family) {
    switch (family) {
        case AttackFamily::honest: return "honest";
        case AttackFamily::known_divergence: return "known_divergence";
        case AttackFamily::asud: return "asud";
        case AttackFamily::random: return "random";
    }
    return "unknown";
}

std::string asud_regime_name(AsudRegime regime) {
    switch (regime) {
        case AsudRegime::mixed: return "mixed";
        case AsudRegime::pure: return "pure";
        case AsudRegime::echo: return "echo";
    }
    return "unknown";
}

void validate_epsilon(double eps, std::size_t alphabet_size) {
    if (!(eps > 0.0)) throw ContractError("epsilon must be positive");
    if (!(eps < 1.0 / static_cast<double>(alphabet_size))) {
        throw ContractError("epsilon violates Assumption 4: needs eps < 1/" +
                            std::to_string(alphabet_size));
    }
}

const DistortedPair& AttackSpec::distortion_for(std::size_t agent) const {
    if (agent >= distortions.size() || !distortions[agent]) {
        throw ContractError("no distorted PMFs materialised for agent " +
                            std::to_string(agent));
    }
    return *distortions[agent];
}

SignalPair select_signal_pair(const AgentModel& m) {
    SignalPair best;
    double best_abs = 0.0;
    const std::size_t n = m.alphabet_size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = m.l2()[j] * m.l1()[i] - m.l1()[j] * m.l2()[i];
            if (std::abs(d) > best_abs) {
                best_abs = std::abs(d);
                best = SignalPair{i, j, d};
            }
        }
    }
    if (best_abs == 0.0) {
        throw ModelError(
            "no informative signal pair: every 2x2 determinant vanishes");
    }
    return best;
}

MisleadingCheck misleads_both_states(const AgentModel& m, double u,
                                     const Pmf& l1_hat, const Pmf& l2_hat,
                                     double s1, double s2) {
    if (l1_hat.size() != m.alphabet_size() ||
        l2_hat.size() != m.alphabet_size()) {
        throw ContractError("distorted PMFs must match the model alphabet");
    }
    MisleadingCheck check;
    for (int j = 0; j < 2; ++j) {
        const Pmf& truth = m.likelihood(hypothesis_from_index(j));
        const Pmf& hat_true = j == 0 ? l1_hat : l2_hat;
        const Pmf& hat_other = j == 0 ? l2_hat : l1_hat;
        double expectation = 0.0;
        for (std::size_t s = 0; s < truth.size(); ++s) {
            if (truth[s] == 0.0) continue;
            if (!(hat_true[s] > 0.0) || !(hat_other[s] > 0.0)) {
                throw ContractError(
                    "distorted PMF has zero mass inside the true support");
            }
            expectation += truth[s] * std::log(hat_other[s] / hat_true[s]);
        }
        check.margins[j] = u * expectation - (j == 0 ? s1 : s2);
    }
    check.pass = check.margins[0] > 0.0 && check.margins[1] > 0.0;
    return check;
}

KnownDivergenceAttack known_divergence_attack(const AgentModel& m, double u,
                                              double s1, double s2,
                                              double eps) {
    validate_epsilon(eps, m.alphabet_size());
    if (!(u > 0.0)) throw ContractError("centrality must be positive");
    if (s1 < 0.0 || s2 < 0.0) {
        throw ContractError("network divergences cannot be negative");
    }
    if (!is_informative(m)) {
        throw ContractError(
            "known-divergence synthesis needs an informative model; use "
            "echo_attack for uninformative adversaries");
    }

    KnownDivergenceParams p;
    p.signal_pair = select_signal_pair(m);
    const std::size_t z1 = p.signal_pair.zeta1;
    const std::size_t z2 = p.signal_pair.zeta2;
    const double a1 = m.l1()[z1], b1 = m.l1()[z2];
    const double a2 = m.l2()[z1], b2 = m.l2()[z2];
    const double d = p.signal_pair.d;

    const std::size_t n = m.alphabet_size();
    p.alpha = 1.0 - static_cast<double>(n - 2) * eps;
    p.x_minus = std::log(eps / (p.alpha - eps));
    p.x_plus = -p.x_minus;
    p.n1 = a2 * s1 + a1 * s2;
    p.n2 = b2 * s1 + b1 * s2;

    // Vertex of the feasibility cone: the two misleading inequalities hold
    // with equality there. Solving { u*(a1*x1 + b1*x2) = s1,
    // u*(a2*x1 + b2*x2) = -s2 } gives (n2/(u*d), -n1/(u*d)).
    p.vertex_x1 = p.n2 / (u * d);
    p.vertex_x2 = -p.n1 / (u * d);

    // Any slope strictly between the two boundary slopes points into the
    // open cone; take the midpoint. Both endpoints are negative because the
    // signal-pair masses are positive.
    p.beta = -0.5 * (a1 / b1 + a2 / b2);

    // Admissible x1 range along the line, inside the |x| < x_plus box.
    double lo, hi;
    if (d > 0.0) {
        lo = p.vertex_x1;
        hi = p.x_plus;
    } else {
        lo = p.x_minus;
        hi = p.vertex_x1;
    }
    // x2(x1) is decreasing (beta < 0), so the box bounds on x2 translate to
    // one lower and one upper bound on x1.
    lo = std::max(lo, p.vertex_x1 + (p.x_plus - p.vertex_x2) / p.beta);
    hi = std::min(hi, p.vertex_x1 + (p.x_minus - p.vertex_x2) / p.beta);
    if (!(lo < hi)) {
        throw FeasibilityError(
            "misleading region does not intersect the coordinate box at eps=" +
            std::to_string(eps) + "; retry with a smaller eps");
    }

    double x1 = 0.5 * (lo + hi);
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
        const double x2 = p.beta * (x1 - p.vertex_x1) + p.vertex_x2;
        const double e1 = std::exp(x1), e2 = std::exp(x2);
        const double eps1 = e1 * p.alpha * (e2 - 1.0) / (e2 - e1);
        const double eps2 = p.alpha * (1.0 - e1) / (e2 - e1);

        const double floor_ok =
            std::min({eps1, eps2, p.alpha - eps1, p.alpha - eps2});
        if (floor_ok >= eps) {
            std::vector<double> m1(n, eps), m2(n, eps);
            m1[z1] = p.alpha - eps2;
            m1[z2] = eps2;
            m2[z1] = eps1;
            m2[z2] = p.alpha - eps1;
            DistortedPair pair{Pmf(std::move(m1)), Pmf(std::move(m2))};
            p.x1 = x1;
            p.x2 = x2;
            p.eps1 = eps1;
            p.eps2 = eps2;
            const auto check =
                misleads_both_states(m, u, pair.l1_hat, pair.l2_hat, s1, s2);
            if (check.pass) return KnownDivergenceAttack{std::move(pair), p};
        }
        // Points nearer the vertex stay strictly inside the cone; retry
        // there when the floor (or the strictness check) failed.
        x1 = p.vertex_x1 + 0.5 * (x1 - p.vertex_x1);
    }
    throw FeasibilityError(
        "no floor-respecting point found inside the misleading cone at eps=" +
        std::to_string(eps) + "; retry with a smaller eps");
}

SynthesizedAttack mixed_confidence_attack(const AgentModel& m,
                                          const Prior& prior, double eps) {
    validate_epsilon(eps, m.alphabet_size());
    const auto part = confidence_partition(relative_confidence(m, prior));
    if (part.d1.empty() || part.d2.empty()) {
        throw ContractError(
            "mixed-confidence form needs both partition cells non-empty; "
            "use pure_confidence_attack");
    }
    const std::size_t n = m.alphabet_size();
    // Weight magnitudes: |Z| plays the role of the confidence gap on both
    // sides of the partition.
    std::vector<double> gap(n);
    for (std::size_t s = 0; s < n; ++s) gap[s] = std::abs(part.z[s]);

    std::vector<double> m1(n, 0.0), m2(n, 0.0);
    for (std::size_t s : part.d1) m1[s] = eps;
    allocate_proportional(m1, part.d2, gap,
                          1.0 - eps * static_cast<double>(part.d1.size()));
    for (std::size_t s : part.d2) m2[s] = eps;
    allocate_proportional(m2, part.d1, gap,
                          1.0 - eps * static_cast<double>(part.d2.size()));
    return finalize_pair(std::move(m1), std::move(m2), AsudRegime::mixed, eps);
}

SynthesizedAttack pure_confidence_attack(const AgentModel& m,
                                         const Prior& prior, double eps) {
    validate_epsilon(eps, m.alphabet_size());
    const auto part = confidence_partition(relative_confidence(m, prior));
    if (!part.d1.empty() && !part.d2.empty()) {
        throw ContractError(
            "pure-confidence form needs an empty partition cell; use "
            "mixed_confidence_attack");
    }
    const std::size_t n = m.alphabet_size();
    // With D2 empty, D1 covers the alphabet and the theta1 PMF is the
    // spiked one; with D1 empty the roles swap.
    const bool d1_full = part.d2.empty();

    // Spike the full-cell state's PMF on the symbol with the least
    // confidence for that state: smallest Z for theta1, largest Z for
    // theta2 (ties to the lowest index).
    std::size_t spike = 0;
    double least = d1_full ? part.z[0] : -part.z[0];
    for (std::size_t s = 1; s < n; ++s) {
        const double w = d1_full ? part.z[s] : -part.z[s];
        if (w < least) {
            least = w;
            spike = s;
        }
    }
    std::vector<double> spiked(n, eps);
    spiked[spike] = 1.0 - static_cast<double>(n - 1) * eps;

    // The empty-cell state's PMF is proportional to the confidence gap.
    std::vector<double> gap(n);
    for (std::size_t s = 0; s < n; ++s) gap[s] = std::abs(part.z[s]);
    std::vector<double> proportional(n, 0.0);
    std::vector<std::size_t> all(n);
    for (std::size_t s = 0; s < n; ++s) all[s] = s;
    allocate_proportional(proportional, all, gap, 1.0);

    if (d1_full) {
        return finalize_pair(std::move(spiked), std::move(proportional),
                             AsudRegime::pure, eps);
    }
    return finalize_pair(std::move(proportional), std::move(spiked),
                         AsudRegime::pure, eps);
}

SynthesizedAttack asud_attack(const AgentModel& m, const Prior& prior,
                              double eps) {
    const auto part = confidence_partition(relative_confidence(m, prior));
    if (!part.d1.empty() && !part.d2.empty()) {
        return mixed_confidence_attack(m, prior, eps);
    }
    return pure_confidence_attack(m, prior, eps);
}

DistortedPair random_attack(const AgentModel& m, double eps, Rng& rng) {
    validate_epsilon(eps, m.alphabet_size());
    const std::size_t n = m.alphabet_size();
    auto draw = [&]() {
        std::vector<double> exp_draws(n);
        double total = 0.0;
        for (double& e : exp_draws) {
            e = -std::log(1.0 - uniform01(rng));
            total += e;
        }
        std::vector<double> masses(n);
        const double free_mass = 1.0 - eps * static_cast<double>(n);
        for (std::size_t s = 0; s < n; ++s) {
            masses[s] = eps + free_mass * exp_draws[s] / total;
        }
        return Pmf(std::move(masses));
    };
    Pmf l1 = draw();
    Pmf l2 = draw();
    return DistortedPair{std::move(l1), std::move(l2)};
}

DistortedPair echo_attack(const AgentModel& m) {
    if (is_informative(m)) {
        throw ContractError("echo attack applies to uninformative models only");
    }
    return DistortedPair{m.l1(), m.l1()};
}

MaterializedAttack materialize_attack(const Network& net,
                                      const std::vector<AgentModel>& models,
                                      AttackFamily family, const Prior& prior,
                                      double epsilon, std::uint64_t random_seed,
                                      const DivergenceKnowledge& knowledge) {
    validate_prior(prior);
    if (models.size() != net.n_agents) {
        throw ContractError("one model per agent required");
    }
    MaterializedAttack out;
    out.spec.family = family;
    out.spec.prior = prior;
    out.spec.epsilon = epsilon;
    out.spec.distortions.resize(net.n_agents);

    std::optional<Rng> rng;
    if (family == AttackFamily::random) rng.emplace(random_seed);

    // The known-divergence family is told the normal subnetwork's
    // divergences and its own centrality; the other families are not.
    double s1 = 0.0, s2 = 0.0;
    CentralityVector centrality;
    if (family == AttackFamily::known_divergence) {
        if (!knowledge.s1 || !knowledge.s2 || !knowledge.u) {
            centrality = perron_eigenvector(net);
        }
        s1 = knowledge.s1
                 ? *knowledge.s1
                 : network_divergence(net, centrality, models, Hypothesis::theta1);
        s2 = knowledge.s2
                 ? *knowledge.s2
                 : network_divergence(net, centrality, models, Hypothesis::theta2);
    }

    for (std::size_t k = 0; k < net.n_agents; ++k) {
        if (net.roles[k] != Role::malicious) continue;
        validate_epsilon(epsilon, models[k].alphabet_size());
        AttackNote note;
        note.agent = k;
        switch (family) {
            case AttackFamily::honest:
                out.spec.distortions[k] =
                    DistortedPair{models[k].l1(), models[k].l2()};
                note.regime = "honest";
                break;
            case AttackFamily::asud: {
                auto synth = asud_attack(models[k], prior, epsilon);
                out.spec.distortions[k] = std::move(synth.pair);
                note.regime = asud_regime_name(synth.regime);
                note.clamped_masses = synth.clamped_masses;
                break;
            }
            case AttackFamily::random:
                out.spec.distortions[k] = random_attack(models[k], epsilon, *rng);
                note.regime = "random";
                break;
            case AttackFamily::known_divergence: {
                if (!is_informative(models[k])) {
                    out.spec.distortions[k] = echo_attack(models[k]);
                    note.regime = "echo";
                    break;
                }
                const double u_k = knowledge.u ? *knowledge.u : centrality.u[k];
                auto kd =
                    known_divergence_attack(models[k], u_k, s1, s2, epsilon);
                out.spec.distortions[k] = std::move(kd.pair);
                note.regime = "known_divergence";
                break;
            }
        }
        out.notes.push_back(std::move(note));
    }
    return out;
}

}  // namespace slsim
