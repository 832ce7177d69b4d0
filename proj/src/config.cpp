#include "slsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "slsim/errors.hpp"

namespace slsim {

namespace {

using nlohmann::json;

// All parsing goes through these helpers so that every failure carries the
// JSON path of the offending field.

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object", path);
}

void reject_unknown_keys(const json& j, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown field",
                              path.empty() ? key : path + "." + key);
        }
    }
}

const json* find(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("expected a number", path);
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("expected an integer", path);
    return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError("expected a boolean", path);
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError("expected a string", path);
    return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("expected an array", path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Pmf parse_pmf(const json& j, const std::string& path) {
    try {
        return Pmf(as_number_array(j, path));
    } catch (const ModelError& e) {
        throw ConfigError(e.what(), path);
    }
}

void parse_topology(const json& j, ExperimentConfig& config) {
    require_object(j, "topology");
    reject_unknown_keys(j, "topology",
                        {"kind", "n", "n_malicious", "edge_prob",
                         "hub_is_malicious", "adjacency", "roles", "weights"});
    const json* kind = find(j, "kind");
    if (!kind) throw ConfigError("required", "topology.kind");
    const std::string kind_name = as_string(*kind, "topology.kind");

    if (kind_name == "random" || kind_name == "star") {
        const json* n = find(j, "n");
        if (!n) throw ConfigError("required", "topology.n");
        const std::int64_t agents = as_integer(*n, "topology.n");
        if (agents < 1) throw ConfigError("must be positive", "topology.n");
        config.n_agents = static_cast<std::size_t>(agents);
        if (const json* nm = find(j, "n_malicious")) {
            const std::int64_t m = as_integer(*nm, "topology.n_malicious");
            if (m < 0) throw ConfigError("cannot be negative",
                                         "topology.n_malicious");
            config.n_malicious = static_cast<std::size_t>(m);
        }
        if (config.n_malicious >= config.n_agents) {
            throw ConfigError("must be smaller than topology.n",
                              "topology.n_malicious");
        }
    }

    if (kind_name == "random") {
        config.topology_kind = ExperimentConfig::TopologyKind::random;
        if (const json* p = find(j, "edge_prob")) {
            config.edge_prob = as_number(*p, "topology.edge_prob");
            if (!(config.edge_prob > 0.0) || config.edge_prob > 1.0) {
                throw ConfigError("must lie in (0, 1]", "topology.edge_prob");
            }
        }
        if (find(j, "hub_is_malicious") || find(j, "adjacency") ||
            find(j, "roles") || find(j, "weights")) {
            throw ConfigError("field not valid for kind=random", "topology");
        }
    } else if (kind_name == "star") {
        config.topology_kind = ExperimentConfig::TopologyKind::star;
        if (const json* h = find(j, "hub_is_malicious")) {
            config.hub_is_malicious = as_bool(*h, "topology.hub_is_malicious");
        }
        if (config.hub_is_malicious && config.n_malicious < 1) {
            throw ConfigError("a malicious hub requires n_malicious >= 1",
                              "topology.n_malicious");
        }
        if (find(j, "edge_prob") || find(j, "adjacency") || find(j, "roles") ||
            find(j, "weights")) {
            throw ConfigError("field not valid for kind=star", "topology");
        }
    } else if (kind_name == "explicit") {
        config.topology_kind = ExperimentConfig::TopologyKind::explicit_graph;
        const json* adjacency = find(j, "adjacency");
        const json* roles = find(j, "roles");
        if (!adjacency) throw ConfigError("required", "topology.adjacency");
        if (!roles) throw ConfigError("required", "topology.roles");
        if (!adjacency->is_array()) {
            throw ConfigError("expected an array of arrays", "topology.adjacency");
        }
        const std::size_t n = adjacency->size();
        if (n == 0) throw ConfigError("cannot be empty", "topology.adjacency");
        Adjacency adj(n);
        for (std::size_t r = 0; r < n; ++r) {
            const json& row = (*adjacency)[r];
            const std::string row_path =
                "topology.adjacency[" + std::to_string(r) + "]";
            if (!row.is_array() || row.size() != n) {
                throw ConfigError("expected a row of " + std::to_string(n) +
                                  " booleans", row_path);
            }
            for (std::size_t c = 0; c < n; ++c) {
                if (as_bool(row[c], row_path + "[" + std::to_string(c) + "]")) {
                    adj.set(r, c, true);
                }
            }
        }
        if (!roles->is_array() || roles->size() != n) {
            throw ConfigError("expected one role per agent", "topology.roles");
        }
        std::vector<Role> role_vec;
        for (std::size_t r = 0; r < n; ++r) {
            const std::string name =
                as_string((*roles)[r], "topology.roles[" + std::to_string(r) + "]");
            if (name == "normal") {
                role_vec.push_back(Role::normal);
            } else if (name == "malicious") {
                role_vec.push_back(Role::malicious);
            } else {
                throw ConfigError("expected 'normal' or 'malicious'",
                                  "topology.roles[" + std::to_string(r) + "]");
            }
        }
        Network net;
        try {
            net = build_uniform_weights(adj, role_vec);
        } catch (const InvalidTopologyError& e) {
            throw ConfigError(e.what(), "topology.adjacency");
        }
        if (const json* weights = find(j, "weights")) {
            if (!weights->is_array() || weights->size() != n) {
                throw ConfigError("expected an n-by-n matrix", "topology.weights");
            }
            SquareMatrix a(n);
            for (std::size_t r = 0; r < n; ++r) {
                const json& row = (*weights)[r];
                const std::string row_path =
                    "topology.weights[" + std::to_string(r) + "]";
                if (!row.is_array() || row.size() != n) {
                    throw ConfigError("expected a row of " + std::to_string(n) +
                                      " numbers", row_path);
                }
                for (std::size_t c = 0; c < n; ++c) {
                    a.at(r, c) =
                        as_number(row[c], row_path + "[" + std::to_string(c) + "]");
                }
            }
            net.combination = a;
            try {
                validate_network(net);
            } catch (const InvalidTopologyError& e) {
                throw ConfigError(e.what(), "topology.weights");
            }
        }
        if (!is_strongly_connected(net)) {
            throw ConfigError("explicit topology is not strongly connected",
                              "topology.adjacency");
        }
        config.n_agents = n;
        config.n_malicious = static_cast<std::size_t>(
            std::count(role_vec.begin(), role_vec.end(), Role::malicious));
        config.explicit_network = std::move(net);
    } else {
        throw ConfigError("expected 'random', 'star' or 'explicit'",
                          "topology.kind");
    }
}

void parse_models(const json& j, ExperimentConfig& config) {
    require_object(j, "model");
    reject_unknown_keys(j, "model", {"bsc_p", "pmfs"});
    const json* bsc = find(j, "bsc_p");
    const json* pmfs = find(j, "pmfs");
    if ((bsc == nullptr) == (pmfs == nullptr)) {
        throw ConfigError("exactly one of bsc_p or pmfs required", "model");
    }
    try {
        if (bsc) {
            if (bsc->is_number()) {
                const double p = bsc->get<double>();
                config.models.assign(config.n_agents, make_bsc(p));
            } else if (bsc->is_array()) {
                if (bsc->size() != config.n_agents) {
                    throw ConfigError("expected one entry per agent",
                                      "model.bsc_p");
                }
                for (std::size_t k = 0; k < bsc->size(); ++k) {
                    config.models.push_back(make_bsc(as_number(
                        (*bsc)[k], "model.bsc_p[" + std::to_string(k) + "]")));
                }
            } else {
                throw ConfigError("expected a number or an array", "model.bsc_p");
            }
        } else {
            if (!pmfs->is_array() || pmfs->size() != config.n_agents) {
                throw ConfigError("expected one PMF pair per agent", "model.pmfs");
            }
            for (std::size_t k = 0; k < pmfs->size(); ++k) {
                const json& entry = (*pmfs)[k];
                const std::string path = "model.pmfs[" + std::to_string(k) + "]";
                require_object(entry, path);
                reject_unknown_keys(entry, path, {"L1", "L2"});
                const json* l1 = find(entry, "L1");
                const json* l2 = find(entry, "L2");
                if (!l1 || !l2) throw ConfigError("L1 and L2 required", path);
                config.models.emplace_back(parse_pmf(*l1, path + ".L1"),
                                           parse_pmf(*l2, path + ".L2"));
            }
        }
    } catch (const ModelError& e) {
        throw ConfigError(e.what(), "model");
    }
}

void parse_attack(const json& j, ExperimentConfig& config) {
    require_object(j, "attack");
    reject_unknown_keys(j, "attack",
                        {"family", "prior", "epsilon", "s1", "s2", "u"});
    const json* family = find(j, "family");
    if (!family) throw ConfigError("required", "attack.family");
    try {
        config.attack_family =
            attack_family_from_name(as_string(*family, "attack.family"));
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), "attack.family");
    }
    // The known-divergence synthesis needs "sufficiently small" epsilon;
    // 1e-3 is routinely infeasible for it, so its default is tighter.
    config.epsilon =
        config.attack_family == AttackFamily::known_divergence ? 1e-4 : 1e-3;
    if (const json* prior = find(j, "prior")) {
        const auto values = as_number_array(*prior, "attack.prior");
        if (values.size() != 2) {
            throw ConfigError("expected two components", "attack.prior");
        }
        config.prior = Prior{values[0], values[1]};
        try {
            validate_prior(config.prior);
        } catch (const ContractError& e) {
            throw ConfigError(e.what(), "attack.prior");
        }
    }
    if (const json* eps = find(j, "epsilon")) {
        config.epsilon = as_number(*eps, "attack.epsilon");
    }
    if (const json* s1 = find(j, "s1")) {
        config.knowledge.s1 = as_number(*s1, "attack.s1");
    }
    if (const json* s2 = find(j, "s2")) {
        config.knowledge.s2 = as_number(*s2, "attack.s2");
    }
    if (const json* u = find(j, "u")) {
        config.knowledge.u = as_number(*u, "attack.u");
    }
    if ((config.knowledge.s1 || config.knowledge.s2 || config.knowledge.u) &&
        config.attack_family != AttackFamily::known_divergence) {
        throw ConfigError("s1/s2/u apply to the known_divergence family only",
                          "attack");
    }
}

}  // namespace

ExperimentConfig parse_config(const json& document) {
    require_object(document, "");
    reject_unknown_keys(document, "",
                        {"version", "topology", "model", "attack", "true_state",
                         "iterations", "trials", "base_seed", "detection",
                         "output"});
    if (const json* version = find(document, "version")) {
        if (as_integer(*version, "version") != 1) {
            throw ConfigError("unsupported config version", "version");
        }
    }

    ExperimentConfig config;
    const json* topology = find(document, "topology");
    if (!topology) throw ConfigError("required", "topology");
    parse_topology(*topology, config);

    const json* model = find(document, "model");
    if (!model) throw ConfigError("required", "model");
    parse_models(*model, config);

    const json* attack = find(document, "attack");
    if (!attack) throw ConfigError("required", "attack");
    parse_attack(*attack, config);

    const json* true_state = find(document, "true_state");
    if (!true_state) throw ConfigError("required", "true_state");
    const std::int64_t ts = as_integer(*true_state, "true_state");
    if (ts != 1 && ts != 2) throw ConfigError("expected 1 or 2", "true_state");
    config.true_state = hypothesis_from_index(static_cast<int>(ts - 1));

    if (const json* iters = find(document, "iterations")) {
        const std::int64_t v = as_integer(*iters, "iterations");
        if (v < 1) throw ConfigError("must be >= 1", "iterations");
        config.iterations = static_cast<int>(v);
    }
    if (const json* trials = find(document, "trials")) {
        const std::int64_t v = as_integer(*trials, "trials");
        if (v < 1) throw ConfigError("must be >= 1", "trials");
        config.trials = static_cast<int>(v);
    }
    if (const json* seed = find(document, "base_seed")) {
        const std::int64_t v = as_integer(*seed, "base_seed");
        if (v < 0) throw ConfigError("must be non-negative", "base_seed");
        config.base_seed = static_cast<std::uint64_t>(v);
    }
    if (const json* detection = find(document, "detection")) {
        require_object(*detection, "detection");
        reject_unknown_keys(*detection, "detection", {"threshold", "window"});
        if (const json* thr = find(*detection, "threshold")) {
            config.detect_threshold = as_number(*thr, "detection.threshold");
            if (!(config.detect_threshold > 0.0) ||
                !(config.detect_threshold < 0.5)) {
                throw ConfigError("must lie in (0, 0.5)", "detection.threshold");
            }
        }
        if (const json* win = find(*detection, "window")) {
            const std::int64_t v = as_integer(*win, "detection.window");
            if (v < 1) throw ConfigError("must be >= 1", "detection.window");
            config.detect_window = static_cast<int>(v);
        }
    }
    if (config.detect_window > config.iterations) {
        throw ConfigError("window exceeds the iteration budget",
                          "detection.window");
    }
    if (const json* output = find(document, "output")) {
        require_object(*output, "output");
        reject_unknown_keys(*output, "output", {"dir"});
        if (const json* dir = find(*output, "dir")) {
            config.output_dir = as_string(*dir, "output.dir");
        }
    }

    // Cross-field assumption checks. Epsilon must stay under 1/|Z| for
    // every alphabet in play (Assumption 4).
    for (std::size_t k = 0; k < config.models.size(); ++k) {
        if (!(config.epsilon > 0.0) ||
            !(config.epsilon <
              1.0 / static_cast<double>(config.models[k].alphabet_size()))) {
            throw ConfigError("epsilon violates Assumption 4 (needs 0 < eps < "
                              "1/|Z| for every agent)", "attack.epsilon");
        }
    }
    return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(document);
}

json emit_config(const ExperimentConfig& config) {
    json topology;
    switch (config.topology_kind) {
        case ExperimentConfig::TopologyKind::random:
            topology = {{"kind", "random"},
                        {"n", config.n_agents},
                        {"n_malicious", config.n_malicious},
                        {"edge_prob", config.edge_prob}};
            break;
        case ExperimentConfig::TopologyKind::star:
            topology = {{"kind", "star"},
                        {"n", config.n_agents},
                        {"n_malicious", config.n_malicious},
                        {"hub_is_malicious", config.hub_is_malicious}};
            break;
        case ExperimentConfig::TopologyKind::explicit_graph: {
            const Network& net = *config.explicit_network;
            json adjacency = json::array();
            json weights = json::array();
            json roles = json::array();
            for (std::size_t r = 0; r < net.n_agents; ++r) {
                json adj_row = json::array();
                json w_row = json::array();
                for (std::size_t c = 0; c < net.n_agents; ++c) {
                    adj_row.push_back(net.adjacency.at(r, c));
                    w_row.push_back(net.combination.at(r, c));
                }
                adjacency.push_back(std::move(adj_row));
                weights.push_back(std::move(w_row));
                roles.push_back(role_name(net.roles[r]));
            }
            topology = {{"kind", "explicit"},
                        {"adjacency", std::move(adjacency)},
                        {"weights", std::move(weights)},
                        {"roles", std::move(roles)}};
            break;
        }
    }

    json pmfs = json::array();
    for (const AgentModel& m : config.models) {
        pmfs.push_back({{"L1", m.l1().masses()}, {"L2", m.l2().masses()}});
    }

    json attack = {{"family", attack_family_name(config.attack_family)},
                   {"prior", {config.prior.pi1, config.prior.pi2}},
                   {"epsilon", config.epsilon}};
    if (config.knowledge.s1) attack["s1"] = *config.knowledge.s1;
    if (config.knowledge.s2) attack["s2"] = *config.knowledge.s2;
    if (config.knowledge.u) attack["u"] = *config.knowledge.u;

    json doc = {{"version", 1},
                {"topology", std::move(topology)},
                {"model", {{"pmfs", std::move(pmfs)}}},
                {"attack", std::move(attack)},
                {"true_state", index_of(config.true_state) + 1},
                {"iterations", config.iterations},
                {"trials", config.trials},
                {"base_seed", config.base_seed},
                {"detection",
                 {{"threshold", config.detect_threshold},
                  {"window", config.detect_window}}}};
    if (config.output_dir) doc["output"] = {{"dir", *config.output_dir}};
    return doc;
}

Network build_network(const ExperimentConfig& config) {
    switch (config.topology_kind) {
        case ExperimentConfig::TopologyKind::random:
            return random_topology(config.n_agents, config.n_malicious,
                                   config.edge_prob, config.base_seed);
        case ExperimentConfig::TopologyKind::star:
            return star_topology(config.n_agents, config.hub_is_malicious,
                                 config.n_malicious);
        case ExperimentConfig::TopologyKind::explicit_graph:
            return *config.explicit_network;
    }
    throw ConfigError("unreachable topology kind");
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config) {
    PreparedExperiment prepared;
    prepared.setup.net = build_network(config);
    prepared.setup.models = config.models;
    prepared.centrality = perron_eigenvector(prepared.setup.net);
    // Distinct stream for attack draws so trial seeds stay untouched.
    prepared.attack_seed = config.base_seed ^ 0x9e3779b97f4a7c15ULL;
    MaterializedAttack attack = materialize_attack(
        prepared.setup.net, prepared.setup.models, config.attack_family,
        config.prior, config.epsilon, prepared.attack_seed, config.knowledge);
    prepared.setup.attack = std::move(attack.spec);
    prepared.attack_notes = std::move(attack.notes);
    prepared.setup.true_state = config.true_state;
    prepared.setup.iterations = config.iterations;
    prepared.setup.base_seed = config.base_seed;
    prepared.setup.detect_threshold = config.detect_threshold;
    prepared.setup.detect_window = config.detect_window;
    return prepared;
}

}  // namespace slsim
