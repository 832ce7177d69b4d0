#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "slsim/attack.hpp"
#include "slsim/engine.hpp"
#include "slsim/errors.hpp"
#include "slsim/model.hpp"
#include "slsim/network.hpp"

namespace py = pybind11;
using namespace slsim;

namespace {

std::vector<std::vector<double>> matrix_rows(const SquareMatrix& a) {
    std::vector<std::vector<double>> rows(a.size(),
                                          std::vector<double>(a.size()));
    for (std::size_t l = 0; l < a.size(); ++l) {
        for (std::size_t k = 0; k < a.size(); ++k) rows[l][k] = a.at(l, k);
    }
    return rows;
}

std::vector<std::vector<bool>> adjacency_rows(const Adjacency& adj) {
    std::vector<std::vector<bool>> rows(adj.size(),
                                        std::vector<bool>(adj.size()));
    for (std::size_t l = 0; l < adj.size(); ++l) {
        for (std::size_t k = 0; k < adj.size(); ++k) rows[l][k] = adj.at(l, k);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Social learning over agent networks under inferential attacks";

    py::register_exception<Error>(m, "SlsimError", PyExc_RuntimeError);

    py::enum_<Hypothesis>(m, "Hypothesis")
        .value("THETA1", Hypothesis::theta1)
        .value("THETA2", Hypothesis::theta2);
    py::enum_<Role>(m, "Role")
        .value("NORMAL", Role::normal)
        .value("MALICIOUS", Role::malicious);
    py::enum_<AttackFamily>(m, "AttackFamily")
        .value("HONEST", AttackFamily::honest)
        .value("KNOWN_DIVERGENCE", AttackFamily::known_divergence)
        .value("ASUD", AttackFamily::asud)
        .value("RANDOM", AttackFamily::random);
    py::enum_<AsudRegime>(m, "AsudRegime")
        .value("MIXED", AsudRegime::mixed)
        .value("PURE", AsudRegime::pure)
        .value("ECHO", AsudRegime::echo);
    py::enum_<LimitOutcome>(m, "LimitOutcome")
        .value("WRONG_STATE", LimitOutcome::wrong_state)
        .value("TRUE_STATE", LimitOutcome::true_state)
        .value("INDETERMINATE", LimitOutcome::indeterminate);
    py::enum_<TrialOutcome>(m, "TrialOutcome")
        .value("WRONG_STATE", TrialOutcome::wrong_state)
        .value("TRUE_STATE", TrialOutcome::true_state)
        .value("UNDECIDED", TrialOutcome::undecided);

    py::class_<Pmf>(m, "Pmf")
        .def(py::init<std::vector<double>>(), py::arg("masses"))
        .def_property_readonly("masses", &Pmf::masses)
        .def("__len__", &Pmf::size)
        .def("__getitem__",
             [](const Pmf& p, std::size_t i) {
                 if (i >= p.size()) throw py::index_error();
                 return p[i];
             })
        .def("__eq__", [](const Pmf& a, const Pmf& b) { return a == b; })
        .def("__repr__", [](const Pmf& p) {
            std::string s = "Pmf([";
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(p[i]);
            }
            return s + "])";
        });
    py::implicitly_convertible<py::list, Pmf>();

    py::class_<Prior>(m, "Prior")
        .def(py::init<double, double>(), py::arg("pi1"), py::arg("pi2"))
        .def_readonly("pi1", &Prior::pi1)
        .def_readonly("pi2", &Prior::pi2);

    py::class_<AgentModel>(m, "AgentModel")
        .def(py::init<Pmf, Pmf>(), py::arg("given_theta1"),
             py::arg("given_theta2"))
        .def_property_readonly("l1", &AgentModel::l1)
        .def_property_readonly("l2", &AgentModel::l2)
        .def_property_readonly("alphabet_size", &AgentModel::alphabet_size);

    py::class_<ConfidencePartition>(m, "ConfidencePartition")
        .def_readonly("z", &ConfidencePartition::z)
        .def_readonly("d1", &ConfidencePartition::d1)
        .def_readonly("d2", &ConfidencePartition::d2);

    py::class_<CentralityVector>(m, "CentralityVector")
        .def_readonly("u", &CentralityVector::u);

    py::class_<Network>(m, "Network")
        .def_readonly("n_agents", &Network::n_agents)
        .def_readonly("roles", &Network::roles)
        .def("adjacency_matrix",
             [](const Network& n) { return adjacency_rows(n.adjacency); })
        .def("combination_matrix",
             [](const Network& n) { return matrix_rows(n.combination); })
        .def("__eq__",
             [](const Network& a, const Network& b) { return a == b; });

    py::class_<DistortedPair>(m, "DistortedPair")
        .def(py::init<Pmf, Pmf>(), py::arg("l1_hat"), py::arg("l2_hat"))
        .def_readonly("l1_hat", &DistortedPair::l1_hat)
        .def_readonly("l2_hat", &DistortedPair::l2_hat)
        .def("__eq__", [](const DistortedPair& a, const DistortedPair& b) {
            return a == b;
        });

    py::class_<SynthesizedAttack>(m, "SynthesizedAttack")
        .def_readonly("pair", &SynthesizedAttack::pair)
        .def_readonly("regime", &SynthesizedAttack::regime)
        .def_readonly("clamped_masses", &SynthesizedAttack::clamped_masses);

    py::class_<SignalPair>(m, "SignalPair")
        .def_readonly("zeta1", &SignalPair::zeta1)
        .def_readonly("zeta2", &SignalPair::zeta2)
        .def_readonly("d", &SignalPair::d);

    py::class_<KnownDivergenceParams>(m, "KnownDivergenceParams")
        .def_readonly("signal_pair", &KnownDivergenceParams::signal_pair)
        .def_readonly("n1", &KnownDivergenceParams::n1)
        .def_readonly("n2", &KnownDivergenceParams::n2)
        .def_readonly("x_plus", &KnownDivergenceParams::x_plus)
        .def_readonly("x_minus", &KnownDivergenceParams::x_minus)
        .def_readonly("vertex_x1", &KnownDivergenceParams::vertex_x1)
        .def_readonly("vertex_x2", &KnownDivergenceParams::vertex_x2)
        .def_readonly("beta", &KnownDivergenceParams::beta)
        .def_readonly("x1", &KnownDivergenceParams::x1)
        .def_readonly("x2", &KnownDivergenceParams::x2)
        .def_readonly("eps1", &KnownDivergenceParams::eps1)
        .def_readonly("eps2", &KnownDivergenceParams::eps2)
        .def_readonly("alpha", &KnownDivergenceParams::alpha);

    py::class_<KnownDivergenceAttack>(m, "KnownDivergenceAttack")
        .def_readonly("pair", &KnownDivergenceAttack::pair)
        .def_readonly("params", &KnownDivergenceAttack::params);

    py::class_<MisleadingCheck>(m, "MisleadingCheck")
        .def_readonly("passes", &MisleadingCheck::pass)
        .def_readonly("margins", &MisleadingCheck::margins);

    py::class_<AttackSpec>(m, "AttackSpec")
        .def(py::init<>())
        .def_readwrite("family", &AttackSpec::family)
        .def_readwrite("prior", &AttackSpec::prior)
        .def_readwrite("epsilon", &AttackSpec::epsilon)
        .def_readwrite("distortions", &AttackSpec::distortions)
        .def("distortion_for", &AttackSpec::distortion_for, py::arg("agent"),
             py::return_value_policy::copy);

    py::class_<AttackNote>(m, "AttackNote")
        .def_readonly("agent", &AttackNote::agent)
        .def_readonly("regime", &AttackNote::regime)
        .def_readonly("clamped_masses", &AttackNote::clamped_masses);

    py::class_<MaterializedAttack>(m, "MaterializedAttack")
        .def_readonly("spec", &MaterializedAttack::spec)
        .def_readonly("notes", &MaterializedAttack::notes);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("beliefs", &Trajectory::beliefs)
        .def_readonly("true_state", &Trajectory::true_state)
        .def_readonly("seed", &Trajectory::seed)
        .def_property_readonly("iterations", &Trajectory::iterations)
        .def_property_readonly("n_agents", &Trajectory::n_agents);

    py::class_<OutcomePrediction>(m, "OutcomePrediction")
        .def_readonly("for_true_state", &OutcomePrediction::for_true_state)
        .def_readonly("margins", &OutcomePrediction::margins);

    py::class_<RunSetup>(m, "RunSetup")
        .def(py::init<>())
        .def_readwrite("net", &RunSetup::net)
        .def_readwrite("models", &RunSetup::models)
        .def_readwrite("attack", &RunSetup::attack)
        .def_readwrite("true_state", &RunSetup::true_state)
        .def_readwrite("iterations", &RunSetup::iterations)
        .def_readwrite("base_seed", &RunSetup::base_seed)
        .def_readwrite("detect_threshold", &RunSetup::detect_threshold)
        .def_readwrite("detect_window", &RunSetup::detect_window);

    py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("prediction", &MonteCarloSummary::prediction)
        .def_readonly("outcomes", &MonteCarloSummary::outcomes)
        .def_readonly("seeds", &MonteCarloSummary::seeds)
        .def_readonly("trajectories", &MonteCarloSummary::trajectories)
        .def_readonly("mean_avg_belief", &MonteCarloSummary::mean_avg_belief)
        .def_readonly("decided_trials", &MonteCarloSummary::decided_trials)
        .def_readonly("agreement", &MonteCarloSummary::agreement);

    // models
    m.def("make_bsc", &make_bsc, py::arg("p"));
    m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"));
    m.def("is_informative", &is_informative, py::arg("model"));
    m.def("relative_confidence", &relative_confidence, py::arg("model"),
          py::arg("prior"));
    m.def("confidence_partition", &confidence_partition, py::arg("z"));
    m.def("network_divergence", &network_divergence, py::arg("net"),
          py::arg("u"), py::arg("models"), py::arg("true_state"));

    // topology
    m.def("star_topology", &star_topology, py::arg("n"),
          py::arg("hub_is_malicious"), py::arg("n_malicious"));
    m.def("random_topology", &random_topology, py::arg("n"),
          py::arg("n_malicious"), py::arg("edge_prob"), py::arg("seed"));
    m.def("is_strongly_connected", &is_strongly_connected, py::arg("net"));
    m.def("perron_eigenvector", &perron_eigenvector, py::arg("net"),
          py::arg("tol") = 1e-12);

    // attacks
    m.def("select_signal_pair", &select_signal_pair, py::arg("model"));
    m.def("known_divergence_attack", &known_divergence_attack,
          py::arg("model"), py::arg("u"), py::arg("s1"), py::arg("s2"),
          py::arg("eps"));
    m.def("misleads_both_states", &misleads_both_states, py::arg("model"),
          py::arg("u"), py::arg("l1_hat"), py::arg("l2_hat"), py::arg("s1"),
          py::arg("s2"));
    m.def("mixed_confidence_attack", &mixed_confidence_attack,
          py::arg("model"), py::arg("prior"), py::arg("eps"));
    m.def("pure_confidence_attack", &pure_confidence_attack, py::arg("model"),
          py::arg("prior"), py::arg("eps"));
    m.def("asud_attack", &asud_attack, py::arg("model"), py::arg("prior"),
          py::arg("eps"));
    m.def(
        "random_attack",
        [](const AgentModel& model, double eps, std::uint64_t seed) {
            Rng rng(seed);
            return random_attack(model, eps, rng);
        },
        py::arg("model"), py::arg("eps"), py::arg("seed"));
    m.def("echo_attack", &echo_attack, py::arg("model"));
    m.def(
        "materialize_attack",
        [](const Network& net, const std::vector<AgentModel>& models,
           AttackFamily family, const Prior& prior, double epsilon,
           std::uint64_t random_seed, std::optional<double> s1,
           std::optional<double> s2, std::optional<double> u) {
            DivergenceKnowledge knowledge{s1, s2, u};
            return materialize_attack(net, models, family, prior, epsilon,
                                      random_seed, knowledge);
        },
        py::arg("net"), py::arg("models"), py::arg("family"), py::arg("prior"),
        py::arg("epsilon"), py::arg("random_seed") = 0,
        py::arg("s1") = std::nullopt, py::arg("s2") = std::nullopt,
        py::arg("u") = std::nullopt);

    // engine
    m.def(
        "sample_observations",
        [](const AgentModel& model, Hypothesis true_state, std::uint64_t seed,
           int count) {
            Rng rng(seed);
            std::vector<std::size_t> out;
            out.reserve(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) {
                out.push_back(sample_observation(model, true_state, rng));
            }
            return out;
        },
        py::arg("model"), py::arg("true_state"), py::arg("seed"),
        py::arg("count") = 1);
    m.def(
        "run_trial",
        [](const Network& net, const std::vector<AgentModel>& models,
           const AttackSpec& attack, Hypothesis true_state, int iterations,
           std::uint64_t seed) {
            return run_trial(net, models, attack, true_state, iterations, seed);
        },
        py::arg("net"), py::arg("models"), py::arg("attack"),
        py::arg("true_state"), py::arg("iterations"), py::arg("seed"));
    m.def("classify_limit", &classify_limit, py::arg("net"), py::arg("u"),
          py::arg("models"), py::arg("attack"), py::arg("tol") = 1e-9);
    m.def("detect_outcome", &detect_outcome, py::arg("trajectory"),
          py::arg("threshold"), py::arg("window"));
    m.def("average_belief", &average_belief, py::arg("trajectory"),
          py::arg("state"));
    m.def("run_monte_carlo", &run_monte_carlo, py::arg("setup"),
          py::arg("trials"));
}
