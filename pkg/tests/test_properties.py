"""Invariant checks with randomized inputs (hypothesis)."""
import math

import numpy as np
from hypothesis import given, settings, strategies as st

from rotorkick.classical import two_kick_observable, two_kick_theta
from rotorkick.core import (Kick, KickKind, PulseOrder, PulseSequence,
                            format_sequence, parse_sequence,
                            validate_sequence)
from rotorkick.quantum import (RotorWavefunction, apply_kick, expectation,
                               free_propagate, ground_state)

SETTINGS = settings(deadline=None, max_examples=40)

strengths = st.floats(min_value=-20.0, max_value=20.0,
                      allow_nan=False, allow_infinity=False)
kinds = st.sampled_from([KickKind.SYMMETRIC, KickKind.ASYMMETRIC])
orders = st.sampled_from(list(PulseOrder))
times = st.floats(min_value=0.0, max_value=2.0 * math.pi,
                  allow_nan=False, allow_infinity=False)


@st.composite
def sequences(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    ts = draw(st.lists(times, min_size=n, max_size=n, unique=True))
    return validate_sequence(
        Kick(draw(kinds), draw(strengths), t) for t in ts)


@given(sequences())
@SETTINGS
def test_text_round_trip(seq):
    assert parse_sequence(format_sequence(seq)) == seq


@given(sequences())
@SETTINGS
def test_validate_idempotent(seq):
    again = validate_sequence(seq)
    assert again == seq
    assert list(again.kicks) == sorted(again.kicks, key=lambda k: k.time)


@st.composite
def random_states(draw, l_max=12):
    re = draw(st.lists(st.floats(-1, 1, allow_nan=False),
                       min_size=l_max + 1, max_size=l_max + 1))
    im = draw(st.lists(st.floats(-1, 1, allow_nan=False),
                       min_size=l_max + 1, max_size=l_max + 1))
    c = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    norm = np.linalg.norm(c)
    if norm < 1e-3:
        c[0] += 1.0
        norm = np.linalg.norm(c)
    return RotorWavefunction(c / norm)


@given(random_states(), kinds, strengths)
@SETTINGS
def test_kick_preserves_norm(psi, kind, strength):
    out = apply_kick(psi, Kick(kind, strength, 0.0))
    assert abs(np.linalg.norm(out.coeffs) - 1.0) < 1e-10


@given(random_states(), st.floats(0.0, 2.0 * math.pi, allow_nan=False))
@SETTINGS
def test_free_evolution_revives(psi, dt):
    there = free_propagate(psi, dt)
    back = free_propagate(there, 2.0 * math.pi - dt)
    assert np.max(np.abs(back.coeffs - psi.coeffs)) < 1e-10


@given(strengths, strengths, st.floats(0.01, 3.0), st.floats(0.01, 3.0),
       orders)
@SETTINGS
def test_trajectory_time_reversal(p_s, p_a, t_1, t_2, order):
    # running time backward equals flipping both kick signs
    theta0 = np.linspace(0.05, math.pi - 0.05, 31)
    rev = two_kick_theta(theta0, p_s, p_a, -t_1, -t_2, order)
    flipped = two_kick_theta(theta0, -p_s, -p_a, t_1, t_2, order)
    assert np.max(np.abs(rev - flipped)) < 1e-9


@given(strengths, st.floats(0.5, 15.0), st.floats(0.01, 1.0),
       st.floats(0.01, 1.0), orders)
@SETTINGS
def test_orientation_odd_in_hcp_sign(p_s, p_a, t_1, t_2, order):
    up = two_kick_observable(p_s, p_a, t_1, [t_2], order, k=1)
    down = two_kick_observable(p_s, -p_a, t_1, [t_2], order, k=1)
    assert abs(up[0] + down[0]) < 1e-9


@given(strengths, st.floats(0.5, 15.0), st.floats(0.01, 1.0),
       st.floats(0.01, 1.0), st.floats(0.25, 4.0), orders)
@SETTINGS
def test_kick_time_scaling_law(p_s, p_a, t_1, t_2, lam, orders_):
    base = two_kick_observable(p_s, p_a, t_1, [t_2], orders_, k=1)
    scaled = two_kick_observable(lam * p_s, lam * p_a, t_1 / lam,
                                 [t_2 / lam], orders_, k=1)
    assert abs(base[0] - scaled[0]) < 1e-9


@given(st.floats(-15.0, 15.0, allow_nan=False), st.floats(0.0, 2.0))
@SETTINGS
def test_symmetric_kick_never_orients(p_s, dt):
    # quantum: parity blocks keep <cos> at exactly zero
    psi = apply_kick(ground_state(8), Kick(KickKind.SYMMETRIC, p_s, 0.0))
    psi = free_propagate(psi, dt)
    assert expectation(psi, 1) == 0.0
    # classical: the ensemble average vanishes to quadrature accuracy
    val = two_kick_observable(p_s, 0.0, 0.3, [dt + 1e-3], k=1)
    assert abs(val[0]) < 1e-12
