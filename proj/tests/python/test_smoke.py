"""Smoke tests for the python bindings: the main operations round-trip
through the extension with the same numbers the C++ suites pin down."""

import math

import pytest

import slsim


def test_bsc_and_kl():
    m = slsim.make_bsc(0.8)
    assert m.l1.masses == pytest.approx([0.8, 0.2])
    assert m.l2.masses == pytest.approx([0.2, 0.8])
    kl = slsim.kl_divergence(m.l1, m.l2)
    assert kl == pytest.approx(0.6 * math.log(4.0), rel=1e-12)
    assert slsim.is_informative(m)
    assert not slsim.is_informative(slsim.make_bsc(0.5))


def test_pmf_from_list():
    assert slsim.kl_divergence([0.5, 0.5], [0.5, 0.5]) == 0.0
    with pytest.raises(RuntimeError):
        slsim.Pmf([0.7, 0.7])


def test_star_centrality():
    net = slsim.star_topology(15, True, 4)
    assert slsim.is_strongly_connected(net)
    assert [r == slsim.Role.MALICIOUS for r in net.roles].count(True) == 4
    u = slsim.perron_eigenvector(net)
    assert u.u[0] == pytest.approx(15.0 / 43.0, abs=1e-10)
    assert u.u[1] == pytest.approx(2.0 / 43.0, abs=1e-10)


def test_random_topology_determinism():
    a = slsim.random_topology(15, 4, 0.3, 7)
    b = slsim.random_topology(15, 4, 0.3, 7)
    assert a == b
    assert a.combination_matrix()[0][0] > 0.0


def test_asud_attack_shapes():
    m = slsim.make_bsc(0.8)
    out = slsim.asud_attack(m, slsim.Prior(0.5, 0.5), 1e-3)
    assert out.regime == slsim.AsudRegime.MIXED
    assert out.pair.l1_hat.masses == pytest.approx([0.001, 0.999])
    assert out.pair.l2_hat.masses == pytest.approx([0.999, 0.001])

    pure = slsim.asud_attack(m, slsim.Prior(0.9, 0.1), 1e-3)
    assert pure.regime == slsim.AsudRegime.PURE
    assert pure.pair.l2_hat.masses == pytest.approx([0.875, 0.125])


def test_known_divergence_attack_checks_itself():
    m = slsim.make_bsc(0.8)
    kd = slsim.known_divergence_attack(m, 0.25, 0.5, 0.5, 1e-4)
    assert kd.params.vertex_x1 == pytest.approx(10.0 / 3.0)
    check = slsim.misleads_both_states(
        m, 0.25, kd.pair.l1_hat, kd.pair.l2_hat, 0.5, 0.5
    )
    assert check.passes
    assert min(check.margins) > 0.0


def test_classifier_on_the_misled_star():
    net = slsim.star_topology(15, True, 4)
    models = [slsim.make_bsc(0.8)] * 15
    attack = slsim.materialize_attack(
        net, models, slsim.AttackFamily.ASUD, slsim.Prior(0.5, 0.5), 1e-3
    )
    u = slsim.perron_eigenvector(net)
    prediction = slsim.classify_limit(net, u, models, attack.spec)
    assert prediction.for_true_state[0] == slsim.LimitOutcome.WRONG_STATE
    expected = (21.0 / 43.0) * 0.6 * math.log(999.0) - (22.0 / 43.0) * 0.6 * math.log(4.0)
    assert prediction.margins[0] == pytest.approx(expected, abs=1e-9)


def test_trial_and_monte_carlo():
    net = slsim.star_topology(15, True, 4)
    models = [slsim.make_bsc(0.8)] * 15
    attack = slsim.materialize_attack(
        net, models, slsim.AttackFamily.ASUD, slsim.Prior(0.5, 0.5), 1e-3
    )
    traj = slsim.run_trial(net, models, attack.spec, slsim.Hypothesis.THETA1, 300, 1)
    assert traj.iterations == 300
    avg = slsim.average_belief(traj, slsim.Hypothesis.THETA1)
    assert avg[0] == pytest.approx(0.5)
    assert avg[-1] < 0.01
    assert slsim.detect_outcome(traj, 1e-4, 50) == slsim.TrialOutcome.WRONG_STATE

    setup = slsim.RunSetup()
    setup.net = net
    setup.models = models
    setup.attack = attack.spec
    setup.true_state = slsim.Hypothesis.THETA1
    setup.iterations = 300
    setup.base_seed = 10
    summary = slsim.run_monte_carlo(setup, 5)
    assert summary.decided_trials == 5
    assert summary.agreement == 1.0
    assert len(summary.mean_avg_belief) == 301


def test_observation_sampling_frequency():
    m = slsim.make_bsc(0.8)
    draws = slsim.sample_observations(m, slsim.Hypothesis.THETA1, 17, 20000)
    freq = draws.count(0) / len(draws)
    assert 0.78 < freq < 0.82
