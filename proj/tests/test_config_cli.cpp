#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <cmath>
#include <string>

#include "slsim/commands.hpp"
#include "slsim/config.hpp"
#include "slsim/csv_io.hpp"
#include "slsim/errors.hpp"
#include "slsim/svg_plot.hpp"

using namespace slsim;
using nlohmann::json;

namespace {

json minimal_star_config() {
    return json::parse(R"({
      "topology": {"kind": "star", "n": 15, "n_malicious": 4,
                   "hub_is_malicious": true},
      "model": {"bsc_p": 0.8},
      "attack": {"family": "asud"},
      "true_state": 1
    })");
}

std::string temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const ExperimentConfig config = parse_config(minimal_star_config());
    CHECK(config.n_agents == 15);
    CHECK(config.n_malicious == 4);
    CHECK(config.hub_is_malicious);
    CHECK(config.prior.pi1 == 0.5);
    CHECK(config.prior.pi2 == 0.5);
    CHECK(config.epsilon == 1e-3);
    CHECK(config.iterations == 2000);
    CHECK(config.trials == 20);
    CHECK(config.base_seed == 1);
    CHECK(config.detect_threshold == 1e-4);
    CHECK(config.detect_window == 50);
    CHECK(config.models.size() == 15);
    CHECK(config.true_state == Hypothesis::theta1);
}

TEST_CASE("config validation failures carry field paths") {
    SUBCASE("epsilon above 1/|Z|") {
        json doc = minimal_star_config();
        doc["attack"]["epsilon"] = 0.6;
        try {
            parse_config(doc);
            FAIL("expected a ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("Assumption 4") != std::string::npos);
            CHECK(e.field == "attack.epsilon");
        }
    }
    SUBCASE("unknown keys are rejected") {
        json doc = minimal_star_config();
        doc["topology"]["edge_probb"] = 0.3;
        try {
            parse_config(doc);
            FAIL("expected a ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.field == "topology.edge_probb");
        }
    }
    SUBCASE("explicit weights with bad column sums") {
        json doc = json::parse(R"({
          "topology": {
            "kind": "explicit",
            "adjacency": [[true, true], [true, true]],
            "roles": ["normal", "normal"],
            "weights": [[0.5, 0.6], [0.5, 0.6]]
          },
          "model": {"bsc_p": 0.8},
          "attack": {"family": "honest"},
          "true_state": 1
        })");
        try {
            parse_config(doc);
            FAIL("expected a ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.field == "topology.weights");
        }
    }
    SUBCASE("disconnected explicit topology") {
        json doc = json::parse(R"({
          "topology": {
            "kind": "explicit",
            "adjacency": [[true, false], [false, true]],
            "roles": ["normal", "normal"]
          },
          "model": {"bsc_p": 0.8},
          "attack": {"family": "honest"},
          "true_state": 1
        })");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("zero trials") {
        json doc = minimal_star_config();
        doc["trials"] = 0;
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("missing required block") {
        json doc = minimal_star_config();
        doc.erase("model");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("malformed json text") {
        CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
    }
}

TEST_CASE("config round-trips through emit_config") {
    json doc = minimal_star_config();
    doc["attack"]["prior"] = {0.7, 0.3};
    doc["iterations"] = 500;
    doc["base_seed"] = 42;
    const ExperimentConfig config = parse_config(doc);
    const json emitted = emit_config(config);
    const ExperimentConfig reparsed = parse_config(emitted);
    CHECK(emit_config(reparsed) == emitted);
    CHECK(config_hash(reparsed) == config_hash(config));
    CHECK(reparsed.base_seed == 42);
    CHECK(reparsed.prior.pi1 == 0.7);
}

TEST_CASE("trajectory and summary CSV round trips") {
    json doc = minimal_star_config();
    doc["iterations"] = 60;
    doc["trials"] = 2;
    const ExperimentConfig config = parse_config(doc);
    const PreparedExperiment prepared = prepare_experiment(config);
    const MonteCarloSummary summary = run_monte_carlo(prepared.setup, 2);

    const std::string traj_csv = format_trajectory_csv(
        summary.trajectories[0], prepared.setup.net.roles);
    CHECK_NOTHROW(validate_trajectory_csv(traj_csv));
    CHECK(traj_csv.substr(0, 48) ==
          "iter,agent,role,belief_theta1,belief_theta2\n0,0,");

    const std::string summary_csv = format_summary_csv(summary.mean_avg_belief);
    const SummarySeries series = parse_summary_csv(summary_csv);
    CHECK(series.values.size() == 61);
    CHECK(series.values[0] == 0.5);

    SUBCASE("schema violations name the line") {
        try {
            parse_summary_csv("iter,avg_belief_true_state\n0,0.5\nbad,row\n");
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_summary_csv("iter,avg_belief_true_state\n"),
                        IoError);
        CHECK_THROWS_AS(parse_summary_csv("wrong,header\n0,0.5\n"), IoError);
        CHECK_THROWS_AS(validate_trajectory_csv("iter,agent\n"), IoError);
    }
}

TEST_CASE("cmd_simulate is byte-deterministic and self-describing") {
    json doc = minimal_star_config();
    doc["iterations"] = 80;
    doc["trials"] = 3;
    const ExperimentConfig config = parse_config(doc);

    const std::string dir_a = temp_dir("slsim_test_run_a");
    const std::string dir_b = temp_dir("slsim_test_run_b");
    cmd_simulate(config, dir_a);
    cmd_simulate(config, dir_b);

    for (const char* name :
         {"summary.csv", "trajectory_000.csv", "manifest.json"}) {
        const auto a = read_text_file(dir_a + "/" + name);
        const auto b = read_text_file(dir_b + "/" + name);
        CHECK(a == b);
    }

    const json manifest =
        json::parse(read_text_file(dir_a + "/manifest.json"));
    CHECK(manifest["config_hash"] == config_hash(config));
    CHECK(manifest["trial_seeds"].size() == 3);
    CHECK(manifest["prediction"]["for_theta1_true"] == "wrong");
    // The sim itself: a misled star collapses fast.
    const auto series =
        parse_summary_csv(read_text_file(dir_a + "/summary.csv"));
    CHECK(series.values.back() < 0.1);

    // Every emitted CSV passes its own validator.
    CHECK_NOTHROW(
        validate_trajectory_csv(read_text_file(dir_a + "/trajectory_002.csv")));
}

TEST_CASE("cmd_analyze and cmd_attack write machine-readable twins") {
    json doc = minimal_star_config();
    const ExperimentConfig config = parse_config(doc);
    const std::string dir = temp_dir("slsim_test_analyze");

    cmd_analyze(config, dir);
    const json report = json::parse(read_text_file(dir + "/analysis.json"));
    CHECK(report["s1"].get<double>() ==
          doctest::Approx(22.0 / 43.0 * 0.6 * std::log(4.0)).epsilon(1e-9));
    CHECK(report["adversaries"].size() == 4);
    CHECK(report["prediction"]["for_theta1_true"] == "wrong");
    CHECK(report["prediction"]["margin_theta1"].get<double>() ==
          doctest::Approx(1.598).epsilon(1e-3));

    cmd_attack(config, dir);
    const json dump = json::parse(read_text_file(dir + "/attack.json"));
    CHECK(dump["adversaries"].size() == 4);
    const auto& hub = dump["adversaries"][0];
    CHECK(hub["regime"] == "mixed");
    CHECK(hub["L1_hat"][0].get<double>() == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(hub["L1_hat"][1].get<double>() == doctest::Approx(0.999).epsilon(1e-12));
}

TEST_CASE("cmd_attack honours supplied divergence knowledge") {
    json doc = json::parse(R"({
      "topology": {"kind": "star", "n": 5, "n_malicious": 1,
                   "hub_is_malicious": true},
      "model": {"bsc_p": 0.8},
      "attack": {"family": "known_divergence", "s1": 0.5, "s2": 0.5,
                 "u": 0.25},
      "true_state": 1
    })");
    const ExperimentConfig config = parse_config(doc);
    CHECK(config.epsilon == 1e-4);  // family-specific default
    CHECK(config.knowledge.s1 == 0.5);
    const std::string dir = temp_dir("slsim_test_knowledge");
    cmd_attack(config, dir);
    const json dump = json::parse(read_text_file(dir + "/attack.json"));
    CHECK(dump["s1"].get<double>() == 0.5);
    CHECK(dump["adversaries"][0]["misleads_both_states"] == true);
    CHECK(dump["adversaries"][0]["margin_theta1"].get<double>() > 0.0);

    SUBCASE("knowledge fields are rejected for other families") {
        doc["attack"]["family"] = "asud";
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
}

TEST_CASE("svg rendering") {
    SUBCASE("two series produce two polylines and a legend") {
        const std::vector<PlotSeries> series{
            {"ASUD", {0.5, 0.4, 0.2, 0.05}},
            {"RAS", {0.5, 0.6, 0.8, 0.95}},
        };
        const std::string svg = render_belief_chart(series, "Fig 1");
        CHECK(svg.find("<svg") == 0);
        std::size_t polylines = 0, pos = 0;
        while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
            ++polylines;
            pos += 9;
        }
        CHECK(polylines == 2);
        CHECK(svg.find(">ASUD</text>") != std::string::npos);
        CHECK(svg.find(">RAS</text>") != std::string::npos);
        CHECK(svg.find("iteration") != std::string::npos);
    }
    SUBCASE("constant series renders a horizontal line") {
        const std::vector<PlotSeries> series{{"flat", {0.5, 0.5, 0.5}}};
        const std::string svg = render_belief_chart(series, "flat");
        CHECK(svg.find("<polyline") != std::string::npos);
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(render_belief_chart({}, "nothing"), ContractError);
        const std::vector<PlotSeries> one_point{{"p", {0.5}}};
        CHECK_THROWS_AS(render_belief_chart(one_point, "p"), ContractError);
    }
}

TEST_CASE("cmd_plot consumes summary CSVs") {
    const std::string dir = temp_dir("slsim_test_plot");
    write_text_file(dir + "/a.csv", "iter,avg_belief_true_state\n0,0.5\n1,0.25\n");
    write_text_file(dir + "/b.csv", "iter,avg_belief_true_state\n0,0.5\n1,0.75\n");
    cmd_plot({dir + "/a.csv", dir + "/b.csv"}, {"down", "up"},
             dir + "/plot.svg", "test");
    const std::string svg = read_text_file(dir + "/plot.svg");
    CHECK(svg.find(">down</text>") != std::string::npos);

    write_text_file(dir + "/empty.csv", "iter,avg_belief_true_state\n");
    CHECK_THROWS_AS(cmd_plot({dir + "/empty.csv"}, {}, dir + "/x.svg", "t"),
                    IoError);
}
