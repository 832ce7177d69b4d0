#include "slsim/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "slsim/csv_io.hpp"
#include "slsim/errors.hpp"
#include "slsim/svg_plot.hpp"

namespace slsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

json prediction_json(const OutcomePrediction& prediction) {
    return {{"for_theta1_true",
             limit_outcome_name(prediction.for_true_state[0])},
            {"for_theta2_true",
             limit_outcome_name(prediction.for_true_state[1])},
            {"margin_theta1", prediction.margins[0]},
            {"margin_theta2", prediction.margins[1]}};
}

json notes_json(const std::vector<AttackNote>& notes) {
    json out = json::array();
    for (const auto& note : notes) {
        out.push_back({{"agent", note.agent},
                       {"regime", note.regime},
                       {"clamped_masses", note.clamped_masses}});
    }
    return out;
}

}  // namespace

std::string config_hash(const ExperimentConfig& config) {
    const std::string dump = emit_config(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return hex64(h);
}

ExperimentConfig load_config(const std::string& path,
                             const CliOverrides& overrides) {
    ExperimentConfig config = parse_config_text(read_text_file(path));
    if (overrides.seed) config.base_seed = *overrides.seed;
    if (overrides.trials) {
        if (*overrides.trials < 1) throw ConfigError("must be >= 1", "--trials");
        config.trials = *overrides.trials;
    }
    if (overrides.out_dir) config.output_dir = *overrides.out_dir;
    return config;
}

std::string cmd_simulate(const ExperimentConfig& config,
                         const std::string& out_dir) {
    ensure_dir(out_dir);
    PreparedExperiment prepared = prepare_experiment(config);
    MonteCarloSummary summary = run_monte_carlo(prepared.setup, config.trials);

    json manifest = {{"schema_version", 1},
                     {"config", emit_config(config)},
                     {"config_hash", config_hash(config)},
                     {"base_seed", config.base_seed},
                     {"trial_seeds", summary.seeds},
                     {"attack_seed", prepared.attack_seed},
                     {"attack_notes", notes_json(prepared.attack_notes)},
                     {"prediction", prediction_json(summary.prediction)},
                     {"decided_trials", summary.decided_trials}};
    if (summary.agreement) manifest["agreement"] = *summary.agreement;

    json outcomes = json::array();
    for (const auto outcome : summary.outcomes) {
        outcomes.push_back(trial_outcome_name(outcome));
    }
    manifest["trial_outcomes"] = std::move(outcomes);

    json files = json::array();
    for (std::size_t t = 0; t < summary.trajectories.size(); ++t) {
        char name[64];
        std::snprintf(name, sizeof(name), "trajectory_%03zu.csv", t);
        const std::string path = (fs::path(out_dir) / name).string();
        write_text_file(path, format_trajectory_csv(summary.trajectories[t],
                                                    prepared.setup.net.roles));
        files.push_back(name);
    }
    manifest["trajectory_files"] = std::move(files);

    const std::string summary_path = (fs::path(out_dir) / "summary.csv").string();
    write_text_file(summary_path, format_summary_csv(summary.mean_avg_belief));
    manifest["summary_file"] = "summary.csv";

    const std::string manifest_path =
        (fs::path(out_dir) / "manifest.json").string();
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    std::cout << "simulate: " << config.trials << " trials, prediction for "
              << "true state theta" << index_of(config.true_state) + 1 << ": "
              << limit_outcome_name(
                     summary.prediction.for_true_state[index_of(config.true_state)])
              << ", final mean belief "
              << summary.mean_avg_belief.back() << "\n";
    std::cout << "wrote " << manifest_path << "\n";
    return manifest_path;
}

std::string cmd_analyze(const ExperimentConfig& config,
                        const std::string& out_dir) {
    ensure_dir(out_dir);
    PreparedExperiment prepared = prepare_experiment(config);
    const Network& net = prepared.setup.net;
    const CentralityVector& u = prepared.centrality;
    const auto& models = prepared.setup.models;

    const double s1 = network_divergence(net, u, models, Hypothesis::theta1);
    const double s2 = network_divergence(net, u, models, Hypothesis::theta2);
    const OutcomePrediction prediction =
        classify_limit(net, u, models, prepared.setup.attack);

    json adversaries = json::array();
    std::cout << "network divergences: S1=" << s1 << " S2=" << s2 << "\n";
    for (std::size_t k = 0; k < net.n_agents; ++k) {
        if (net.roles[k] != Role::malicious) continue;
        const DistortedPair& hat = prepared.setup.attack.distortion_for(k);
        std::array<double, 2> contribution{};
        for (int j = 0; j < 2; ++j) {
            const Pmf& truth = models[k].likelihood(hypothesis_from_index(j));
            const Pmf& hat_true = j == 0 ? hat.l1_hat : hat.l2_hat;
            const Pmf& hat_other = j == 0 ? hat.l2_hat : hat.l1_hat;
            double e = 0.0;
            for (std::size_t s = 0; s < truth.size(); ++s) {
                if (truth[s] > 0.0) {
                    e += truth[s] * std::log(hat_other[s] / hat_true[s]);
                }
            }
            contribution[j] = u.u[k] * e;
        }
        std::cout << "  adversary " << k << ": u=" << u.u[k]
                  << " rhs_theta1=" << contribution[0]
                  << " rhs_theta2=" << contribution[1] << "\n";
        adversaries.push_back({{"agent", k},
                               {"u", u.u[k]},
                               {"rhs_theta1", contribution[0]},
                               {"rhs_theta2", contribution[1]}});
    }
    std::cout << "margins: theta1=" << prediction.margins[0]
              << " theta2=" << prediction.margins[1] << "\n";
    std::cout << "prediction: theta1 true -> "
              << limit_outcome_name(prediction.for_true_state[0])
              << ", theta2 true -> "
              << limit_outcome_name(prediction.for_true_state[1]) << "\n";

    json report = {{"s1", s1},
                   {"s2", s2},
                   {"adversaries", std::move(adversaries)},
                   {"prediction", prediction_json(prediction)},
                   {"config_hash", config_hash(config)},
                   {"attack_notes", notes_json(prepared.attack_notes)}};
    const std::string path = (fs::path(out_dir) / "analysis.json").string();
    write_text_file(path, report.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
    return path;
}

std::string cmd_attack(const ExperimentConfig& config,
                       const std::string& out_dir) {
    ensure_dir(out_dir);
    PreparedExperiment prepared = prepare_experiment(config);
    const Network& net = prepared.setup.net;
    const CentralityVector& u = prepared.centrality;
    const auto& models = prepared.setup.models;
    const double s1 =
        config.knowledge.s1
            ? *config.knowledge.s1
            : network_divergence(net, u, models, Hypothesis::theta1);
    const double s2 =
        config.knowledge.s2
            ? *config.knowledge.s2
            : network_divergence(net, u, models, Hypothesis::theta2);

    json agents = json::array();
    for (const AttackNote& note : prepared.attack_notes) {
        const std::size_t k = note.agent;
        const DistortedPair& hat = prepared.setup.attack.distortion_for(k);
        const double u_k = config.knowledge.u.value_or(u.u[k]);
        const MisleadingCheck check =
            misleads_both_states(models[k], u_k, hat.l1_hat, hat.l2_hat, s1, s2);
        agents.push_back({{"agent", k},
                          {"regime", note.regime},
                          {"clamped_masses", note.clamped_masses},
                          {"L1_hat", hat.l1_hat.masses()},
                          {"L2_hat", hat.l2_hat.masses()},
                          {"margin_theta1", check.margins[0]},
                          {"margin_theta2", check.margins[1]},
                          {"misleads_both_states", check.pass}});
        std::cout << "adversary " << k << " [" << note.regime
                  << "]: margins=(" << check.margins[0] << ", "
                  << check.margins[1] << ")"
                  << (note.clamped_masses > 0
                          ? " clamped=" + std::to_string(note.clamped_masses)
                          : "")
                  << "\n";
    }
    json dump = {{"family", attack_family_name(config.attack_family)},
                 {"prior", {config.prior.pi1, config.prior.pi2}},
                 {"epsilon", config.epsilon},
                 {"s1", s1},
                 {"s2", s2},
                 {"adversaries", std::move(agents)},
                 {"config_hash", config_hash(config)}};
    const std::string path = (fs::path(out_dir) / "attack.json").string();
    write_text_file(path, dump.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
    return path;
}

void cmd_plot(const std::vector<std::string>& summary_csv_paths,
              const std::vector<std::string>& labels,
              const std::string& out_svg_path, const std::string& title) {
    if (summary_csv_paths.empty()) throw ContractError("no input CSVs");
    if (!labels.empty() && labels.size() != summary_csv_paths.size()) {
        throw ContractError("one label per input CSV required");
    }
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < summary_csv_paths.size(); ++i) {
        const std::string& path = summary_csv_paths[i];
        SummarySeries parsed;
        try {
            parsed = parse_summary_csv(read_text_file(path));
        } catch (const IoError& e) {
            throw IoError(path + ": " + e.what());
        }
        PlotSeries s;
        s.label = labels.empty()
                      ? fs::path(path).stem().string()
                      : labels[i];
        s.values = std::move(parsed.values);
        series.push_back(std::move(s));
    }
    write_text_file(out_svg_path, render_belief_chart(series, title));
    std::cout << "wrote " << out_svg_path << "\n";
}

}  // namespace slsim
