#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slsim/model.hpp"
#include "slsim/network.hpp"
#include "slsim/rng.hpp"

namespace slsim {

enum class AttackFamily { honest, known_divergence, asud, random };

AttackFamily attack_family_from_name(const std::string& name);
std::string attack_family_name(AttackFamily family);

/// A malicious agent's substituted likelihood pair.
struct DistortedPair {
    Pmf l1_hat;
    Pmf l2_hat;

    bool operator==(const DistortedPair&) const = default;
};

enum class AsudRegime { mixed, pure, echo };

std::string asud_regime_name(AsudRegime regime);

/// Synthesis output plus bookkeeping for the manifest: which closed-form
/// regime produced it and how many masses the epsilon floor had to raise.
struct SynthesizedAttack {
    DistortedPair pair;
    AsudRegime regime = AsudRegime::mixed;
    int clamped_masses = 0;
};

/// The two symbols the known-divergence construction concentrates on, with
/// the determinant d = L(z2|t2)L(z1|t1) - L(z2|t1)L(z1|t2) they induce.
struct SignalPair {
    std::size_t zeta1 = 0;
    std::size_t zeta2 = 0;
    double d = 0.0;
};

/// Intermediate quantities of the known-divergence synthesis, kept for
/// inspection and consistency checks.
struct KnownDivergenceParams {
    SignalPair signal_pair;
    double n1 = 0.0;  // L(z1|t2)*S1 + L(z1|t1)*S2
    double n2 = 0.0;  // L(z2|t2)*S1 + L(z2|t1)*S2
    double x_plus = 0.0;   // box bound ln((alpha-eps)/eps)
    double x_minus = 0.0;  // -x_plus
    double vertex_x1 = 0.0;  // n2/(u*d)
    double vertex_x2 = 0.0;  // -n1/(u*d), from solving the boundary system
    double beta = 0.0;       // slope of the chosen line through the vertex
    double x1 = 0.0;  // chosen log-ratio ln(L2_hat/L1_hat) at zeta1
    double x2 = 0.0;  // chosen log-ratio ln(L2_hat/L1_hat) at zeta2
    double eps1 = 0.0;
    double eps2 = 0.0;
    double alpha = 0.0;  // 1 - (|Z|-2)*eps
};

struct KnownDivergenceAttack {
    DistortedPair pair;
    KnownDivergenceParams params;
};

struct MisleadingCheck {
    bool pass = false;
    // margins[j] = u * E_{L(.|theta_j)} ln(Lhat(.|other)/Lhat(.|theta_j)) - S_j
    std::array<double, 2> margins{};
};

/// Picks the symbol pair with the largest |d| (lowest index pair on ties).
/// Throws ModelError when every pair has d == 0, i.e. the model is
/// uninformative.
SignalPair select_signal_pair(const AgentModel& m);

/// Evaluates the per-agent misleading inequalities for both candidate true
/// states. Passes only when both margins are strictly positive.
MisleadingCheck misleads_both_states(const AgentModel& m, double u,
                                     const Pmf& l1_hat, const Pmf& l2_hat,
                                     double s1, double s2);

/// Known-divergence synthesis for an informative adversary with centrality
/// u and normal-subnetwork divergences (s1, s2). Places (eps1, alpha-eps1,
/// eps2, alpha-eps2) on the selected signal pair and eps elsewhere, with
/// the log-ratio coordinates chosen strictly inside the feasibility cone.
/// The result is re-validated with misleads_both_states before returning.
/// Throws FeasibilityError (advising a smaller eps) when the cone does not
/// intersect the coordinate box.
KnownDivergenceAttack known_divergence_attack(const AgentModel& m, double u,
                                              double s1, double s2,
                                              double eps);

/// Mixed-confidence closed form: minimum mass eps on D^j, the rest spread
/// over the complement in proportion to the relative confidence. Requires
/// both partition cells non-empty. Computed masses below eps are clamped
/// up (reported via clamped_masses).
SynthesizedAttack mixed_confidence_attack(const AgentModel& m,
                                          const Prior& prior, double eps);

/// Pure-confidence closed form: for the state whose cell covers the whole
/// alphabet, all mass except the floor goes on the least-confident symbol;
/// for the state with an empty cell the masses are proportional to the
/// relative confidence. Requires one partition cell empty.
SynthesizedAttack pure_confidence_attack(const AgentModel& m,
                                         const Prior& prior, double eps);

/// Prior-driven attack with unknown divergences: partitions the alphabet by
/// relative confidence and dispatches to the mixed or pure closed form.
SynthesizedAttack asud_attack(const AgentModel& m, const Prior& prior,
                              double eps);

/// Both PMFs drawn uniformly from the eps-floored simplex (unit-simplex
/// sample rescaled into {masses >= eps}). Deterministic given the stream.
DistortedPair random_attack(const AgentModel& m, double eps, Rng& rng);

/// Uninformative adversary: both distorted PMFs equal the common true PMF,
/// so its classifier contribution is exactly zero. Throws ContractError on
/// informative input.
DistortedPair echo_attack(const AgentModel& m);

/// Attack family materialised against a concrete network: one distorted
/// pair per malicious agent.
struct AttackSpec {
    AttackFamily family = AttackFamily::honest;
    Prior prior;
    double epsilon = 1e-3;
    // Indexed by agent; set exactly for malicious agents.
    std::vector<std::optional<DistortedPair>> distortions;

    const DistortedPair& distortion_for(std::size_t agent) const;
};

/// Per-agent synthesis note for manifests and the attack dump.
struct AttackNote {
    std::size_t agent = 0;
    std::string regime;  // mixed | pure | echo | random | honest | known_divergence
    int clamped_masses = 0;
};

struct MaterializedAttack {
    AttackSpec spec;
    std::vector<AttackNote> notes;
};

/// Divergence knowledge handed to the known-divergence family. When a field
/// is unset it is computed from the network (Perron centrality per agent,
/// network divergences of the normal subnetwork).
struct DivergenceKnowledge {
    std::optional<double> s1;
    std::optional<double> s2;
    std::optional<double> u;  // override for every adversary's centrality
};

MaterializedAttack materialize_attack(const Network& net,
                                      const std::vector<AgentModel>& models,
                                      AttackFamily family, const Prior& prior,
                                      double epsilon,
                                      std::uint64_t random_seed = 0,
                                      const DivergenceKnowledge& knowledge = {});

/// Assumption check for the floor: 0 < eps < 1/|Z| for every alphabet in
/// use. Throws ContractError otherwise.
void validate_epsilon(double eps, std::size_t alphabet_size);

}  // namespace slsim
