import math

import numpy as np
import pytest

from oracles import mc_classical_observable
from rotorkick.classical import (classical_observable, make_ensemble,
                                 propagate_classical, two_kick_observable,
                                 two_kick_theta)
from rotorkick.core import (Kick, KickKind, PulseOrder, two_pulse_sequence,
                            validate_sequence)
from rotorkick.errors import ConvergenceFailure, InvalidNodeCount


def closed_form_reference(theta0, ps, pa, t1, t2, order):
    """Scalar re-derivation of the two-kick trajectory, written
    independently of the vectorized engine code."""
    th0 = float(theta0)
    if order is PulseOrder.LASER_FIRST:
        th1 = th0 - ps * t1 * math.sin(2.0 * th0)
        om = -ps * math.sin(2.0 * th0) - pa * math.sin(th1)
        return th1 + t2 * om
    if order is PulseOrder.HCP_FIRST:
        th1 = th0 - pa * t1 * math.sin(th0)
        om = -pa * math.sin(th0) - ps * math.sin(2.0 * th1)
        return th1 + t2 * om
    om = -ps * math.sin(2.0 * th0) - pa * math.sin(th0)
    return th0 + t2 * om


def test_make_ensemble_basics():
    ens = make_ensemble(64)
    assert ens.weights.sum() == pytest.approx(1.0, abs=1e-13)
    assert np.all((ens.theta0 >= 0) & (ens.theta0 <= math.pi))
    with pytest.raises(InvalidNodeCount):
        make_ensemble(1)


def test_two_node_rule():
    # 2-point Gauss-Legendre nodes sit at u = +-1/sqrt(3)
    ens = make_ensemble(2)
    u = np.sort(np.cos(ens.theta0))
    assert u == pytest.approx([-1.0 / math.sqrt(3), 1.0 / math.sqrt(3)])
    assert ens.weights == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("order", list(PulseOrder))
def test_two_kick_theta_matches_scalar_reference(order):
    rng = np.random.default_rng(31)
    for _ in range(200):
        th0 = rng.uniform(0.0, math.pi)
        ps, pa = rng.uniform(-30, 30), rng.uniform(-30, 30)
        t1, t2 = rng.uniform(-2, 2), rng.uniform(-2, 2)
        got = two_kick_theta(th0, ps, pa, t1, t2, order)
        ref = closed_form_reference(th0, ps, pa, t1, t2, order)
        assert float(got) == pytest.approx(ref, rel=1e-13, abs=1e-13)


def test_two_kick_theta_broadcasts():
    th0 = np.linspace(0.1, 3.0, 7)
    t2 = np.linspace(0.0, 1.0, 5)
    out = two_kick_theta(th0[None, :], -3.0, 8.0, 0.2, t2[:, None],
                         PulseOrder.LASER_FIRST)
    assert out.shape == (5, 7)
    assert out[2, 3] == pytest.approx(float(
        two_kick_theta(th0[3], -3.0, 8.0, 0.2, t2[2], PulseOrder.LASER_FIRST)))


def test_causal_propagation_matches_closed_form():
    ps, pa, t1 = -4.0, 9.0, 0.3
    ens = make_ensemble(128)
    for order in (PulseOrder.LASER_FIRST, PulseOrder.HCP_FIRST,
                  PulseOrder.SIMULTANEOUS):
        seq = two_pulse_sequence(ps, pa, t1, order)
        t_end = (0.0 if order is PulseOrder.SIMULTANEOUS else t1) + 0.45
        states = propagate_classical(seq, ens, [t_end])
        t2 = 0.45
        ref = two_kick_theta(ens.theta0, ps, pa,
                             0.0 if order is PulseOrder.SIMULTANEOUS else t1,
                             t2, order)
        assert np.max(np.abs(states[0].theta - ref)) < 1e-12


def test_propagation_is_at_rest_before_first_kick():
    seq = two_pulse_sequence(-4.0, 9.0, 0.3, PulseOrder.LASER_FIRST)
    ens = make_ensemble(32)
    states = propagate_classical(seq, ens, [-1.0, -0.5])
    for s in states:
        assert np.array_equal(s.theta, ens.theta0)
        assert np.all(s.omega == 0.0)


def test_between_kicks_only_first_kick_acts():
    ps, pa, t1 = -4.0, 9.0, 0.6
    seq = two_pulse_sequence(ps, pa, t1, PulseOrder.LASER_FIRST)
    ens = make_ensemble(32)
    t_mid = 0.25
    states = propagate_classical(seq, ens, [t_mid])
    ref = ens.theta0 - ps * t_mid * np.sin(2.0 * ens.theta0)
    assert np.max(np.abs(states[0].theta - ref)) < 1e-13


def test_simultaneous_kicks_share_the_incoming_angle():
    ens = make_ensemble(16)
    seq = validate_sequence([Kick(KickKind.SYMMETRIC, -3.0, 0.0),
                             Kick(KickKind.ASYMMETRIC, 7.0, 0.0)])
    states = propagate_classical(seq, ens, [0.0])
    om = -(-3.0) * np.sin(2 * ens.theta0) - 7.0 * np.sin(ens.theta0)
    assert np.max(np.abs(states[0].omega - om)) < 1e-13


def test_observable_against_monte_carlo():
    rng = np.random.default_rng(99)
    seq = two_pulse_sequence(-10.0, 10.0, 0.25, PulseOrder.LASER_FIRST)
    t = 0.4
    exact = classical_observable(seq, 1, [t]).values[0]
    mean, stderr = mc_classical_observable(seq, 1, t, 1_000_000, rng)
    assert abs(mean - exact) < 3.0 * stderr

    single = validate_sequence([Kick(KickKind.SYMMETRIC, -10.0, 0.0)])
    exact2 = classical_observable(single, 2, [0.08]).values[0]
    mean2, stderr2 = mc_classical_observable(single, 2, 0.08, 1_000_000, rng)
    assert abs(mean2 - exact2) < 3.0 * stderr2


def test_quadrature_refinement_converges_and_caps():
    seq = two_pulse_sequence(-10.0, 40.0, 0.1, PulseOrder.LASER_FIRST)
    ts = np.linspace(0.05, 1.0, 40)
    a = classical_observable(seq, 1, ts)
    b = classical_observable(seq, 1, ts, n_nodes=6000)
    assert np.max(np.abs(a.values - b.values)) < 5e-6

    with pytest.raises(ConvergenceFailure):
        classical_observable(seq, 1, ts, n_nodes=8, node_cap=64)


def test_two_kick_observable_vectorized_consistency():
    t2 = np.array([0.05, 0.21, 0.4])
    batch = two_kick_observable(-5.0, 10.0, 0.3, t2, PulseOrder.HCP_FIRST)
    singles = [two_kick_observable(-5.0, 10.0, 0.3, float(x),
                                   PulseOrder.HCP_FIRST)[0] for x in t2]
    assert batch == pytest.approx(singles, abs=2e-6)


def test_two_kick_observable_alignment_range():
    vals = two_kick_observable(-6.0, 0.0, 0.1, np.linspace(0, 1, 50),
                               PulseOrder.LASER_FIRST, k=2)
    assert np.all(vals >= -1e-9) and np.all(vals <= 1.0 + 1e-9)
