"""Single table of numeric defaults used across the engines and optimizer.

Every entry can be overridden per call (keyword arguments) or from the
CLI. The rules are functions of the kick strengths so that classical
results respect the exact scaling invariance
(p_s, p_a, t_1, t_2) -> (lam*p_s, lam*p_a, t_1/lam, t_2/lam).
"""

from __future__ import annotations

import math

#: convergence target for ensemble-quadrature refinement (uniform over t)
QUADRATURE_TOL = 1.0e-6

#: hard cap on ensemble node count during refinement doubling
NODE_CAP = 2**20

#: hard cap on the spherical-harmonic basis size
L_MAX_CAP = 4096

#: post-kick population allowed above l_max - TAIL_MARGIN
TAIL_TOL = 1.0e-10
TAIL_MARGIN = 10

#: absolute tolerance of the golden-section extremum refinement in t
TIME_REFINE_TOL = 1.0e-6

#: half-width of the quantum revival search window (dimensionless time)
REVIVAL_WINDOW = 0.5

#: Nelder-Mead stopping diameter in scaled coordinates, and iteration cap
SIMPLEX_XATOL = 1.0e-4
SIMPLEX_MAXITER = 500

#: quantum sweeps are capped at this p_a by default (basis size / cost)
QUANTUM_SWEEP_PA_MAX = 30.0

#: default lower/upper bound on |p_s| as a fraction of p_a
PS_RATIO_MIN = 0.02
PS_RATIO_MAX = 1.0


def ensemble_nodes(total_strength: float, time_span: float) -> int:
    """Default quadrature node count.

    The integrand cos^k(theta(t; theta0)) oscillates in theta0 with
    frequency proportional to P*t, so the node count grows with that
    product. Refinement doubling on top of this handles the rest.
    """
    return max(64, math.ceil(8.0 * total_strength * time_span))


def quantum_l_max(total_strength: float) -> int:
    """Default basis size: impulsive kicks populate l up to a few times
    the total kick strength."""
    return math.ceil(3.0 * total_strength) + 20


def scan_step(total_strength: float) -> float:
    """Grid step for locating observable extrema in time."""
    return min(0.002, 0.05 / max(total_strength, 1.0))


def prompt_window_classical(p_a: float) -> float:
    """t_2 search window after the last kick, classical engines.

    Classical ensembles disperse, so the extremum sits within a few
    1/p_a of the kick; the window scales accordingly.
    """
    return min(math.pi, 10.0 / max(p_a, 1e-12))


def delay_window_classical(p_a: float) -> float:
    """t_1 search window (delay between pulses), classical engines."""
    return min(2.0 * math.pi, 60.0 / max(p_a, 1e-12))
