"""Core dimensionless-unit data model shared by both engines.

Units and sign conventions
--------------------------
Time is dimensionless, measured in units of I/hbar where I is the moment
of inertia; the full rotational revival period is 2*pi in these units.
Kick strengths are dimensionless angular impulses:

* an asymmetric kick of strength ``p_a > 0`` adds the angular-velocity
  increment ``-p_a*sin(theta)`` and therefore pushes the dipole toward
  ``theta = 0``;
* a symmetric kick of strength ``p_s`` adds ``-p_s*sin(2*theta)``;
  positive ``p_s`` aligns (localizes near the poles), negative ``p_s``
  anti-aligns (localizes near the equatorial plane).

Conversion from laboratory quantities lives exclusively in
:mod:`rotorkick.labunits`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import groupby
from typing import Iterable, Sequence

import numpy as np

from .errors import NonFiniteValue, TooManyKicksAtSameTime

REVIVAL_PERIOD = 2.0 * math.pi
STRENGTH_BOUND = 1.0e4


class KickKind(str, Enum):
    SYMMETRIC = "sym"
    ASYMMETRIC = "asym"


class Engine(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class PulseOrder(str, Enum):
    LASER_FIRST = "laser-first"
    HCP_FIRST = "hcp-first"
    SIMULTANEOUS = "simultaneous"


class Branch(str, Enum):
    PROMPT = "prompt"
    REVIVAL = "revival"


class ObjectiveSign(str, Enum):
    """Whether the optimizer maximizes the signed value or its magnitude."""

    MAXIMIZE_PLUS = "plus"
    MAXIMIZE_ABS = "abs"


class ObservableKind(str, Enum):
    ORIENTATION = "orientation"
    ALIGNMENT = "alignment"


@dataclass(frozen=True)
class Kick:
    """One impulsive kick: kind, dimensionless strength, dimensionless time.

    Negative times are legal; the classical engine uses them for the
    analytic continuation into the pre-pulse (revival) domain.
    """

    kind: KickKind
    strength: float
    time: float


@dataclass(frozen=True)
class PulseSequence:
    """Ordered list of kicks, sorted by time.

    Kicks sharing one time are allowed (a hybrid pulse), but at most one
    of each kind per time group.
    """

    kicks: tuple[Kick, ...]

    def __len__(self) -> int:
        return len(self.kicks)

    def __iter__(self):
        return iter(self.kicks)

    def total_strength(self) -> float:
        return sum(abs(k.strength) for k in self.kicks)

    def time_groups(self) -> list[tuple[float, tuple[Kick, ...]]]:
        """Kicks grouped by identical time, in time order."""
        return [(t, tuple(g)) for t, g in groupby(self.kicks, key=lambda k: k.time)]


def validate_sequence(seq: PulseSequence | Iterable[Kick]) -> PulseSequence:
    """Sort kicks by time and enforce the sequence invariants.

    Returns a new :class:`PulseSequence`. Idempotent.

    Raises
    ------
    NonFiniteValue
        if any strength or time is non-finite, or |strength| > 1e4.
    TooManyKicksAtSameTime
        if two kicks of the same kind share one time.
    """
    kicks = tuple(seq.kicks if isinstance(seq, PulseSequence) else seq)
    for k in kicks:
        if not (math.isfinite(k.strength) and math.isfinite(k.time)):
            raise NonFiniteValue(f"non-finite kick parameter: {k}")
        if abs(k.strength) > STRENGTH_BOUND:
            raise NonFiniteValue(
                f"|strength| = {abs(k.strength)} exceeds sanity bound {STRENGTH_BOUND}"
            )
    ordered = tuple(sorted(kicks, key=lambda k: k.time))
    for t, group in groupby(ordered, key=lambda k: k.time):
        kinds = [k.kind for k in group]
        if len(kinds) != len(set(kinds)):
            raise TooManyKicksAtSameTime(
                f"multiple kicks of one kind at t = {t}; merge their strengths first"
            )
    return PulseSequence(ordered)


def two_pulse_sequence(
    p_s: float, p_a: float, delay: float, order: PulseOrder
) -> PulseSequence:
    """Build the canonical two-kick sequence for a given temporal order.

    The first pulse fires at t = 0 and the second at t = delay >= 0
    (both at 0 for ``SIMULTANEOUS``). Kicks of zero strength are kept so
    the sequence shape is order-independent.
    """
    if delay < 0:
        raise ValueError("delay must be >= 0; negative-time continuations are "
                         "handled by the classical closed-form evaluators")
    if order is PulseOrder.LASER_FIRST:
        kicks = (Kick(KickKind.SYMMETRIC, p_s, 0.0),
                 Kick(KickKind.ASYMMETRIC, p_a, delay))
    elif order is PulseOrder.HCP_FIRST:
        kicks = (Kick(KickKind.ASYMMETRIC, p_a, 0.0),
                 Kick(KickKind.SYMMETRIC, p_s, delay))
    else:
        kicks = (Kick(KickKind.SYMMETRIC, p_s, 0.0),
                 Kick(KickKind.ASYMMETRIC, p_a, 0.0))
    return validate_sequence(kicks)


@dataclass(frozen=True)
class ObservableSeries:
    """Time series of <cos theta> (orientation) or <cos^2 theta> (alignment)."""

    times: np.ndarray
    values: np.ndarray
    kind: ObservableKind

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.shape != values.shape or times.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        eps = 1e-9
        if self.kind is ObservableKind.ORIENTATION:
            lo, hi = -1.0 - eps, 1.0 + eps
        else:
            lo, hi = -eps, 1.0 + eps
        if values.size and (values.min() < lo or values.max() > hi):
            raise ValueError(f"{self.kind.value} values outside [{lo}, {hi}]")

    def min(self) -> tuple[float, float]:
        i = int(np.argmin(self.values))
        return float(self.times[i]), float(self.values[i])

    def max(self) -> tuple[float, float]:
        i = int(np.argmax(self.values))
        return float(self.times[i]), float(self.values[i])


@dataclass(frozen=True)
class OptimizationResult:
    """Optimal pulse-pair parameters and the achieved orientation factor.

    ``objective`` is the signed <cos theta> at the optimum; ``t_1`` is the
    delay between pulses and ``t_2`` the observation time after the last
    pulse (both may be negative on the classical revival continuation).
    """

    p_a: float
    p_s: float
    t_1: float
    t_2: float
    objective: float
    branch: Branch
    order: PulseOrder
    engine: Engine
    evaluations: int
    stagnated: bool = False

    def __post_init__(self):
        if abs(self.objective) > 1.0 + 1e-9:
            raise ValueError("|objective| cannot exceed 1")

    @property
    def scaled_delay(self) -> float:
        """Scale-invariant delay product |p_s| * delay.

        The delay is t_1 between sequential pulses; for coincident pulses
        the only delay left is the observation time t_2.
        """
        delay = self.t_2 if self.order is PulseOrder.SIMULTANEOUS else self.t_1
        return abs(self.p_s) * delay


# ---------------------------------------------------------------------------
# plain-text sequence format: one kick per line, `sym|asym <strength> <time>`

def format_sequence(seq: PulseSequence) -> str:
    lines = [f"{k.kind.value} {k.strength!r} {k.time!r}" for k in seq.kicks]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_sequence(text: str) -> PulseSequence:
    """Parse the plain-text kick format; '#' starts a comment.

    Raises ValueError on malformed lines (the CLI maps this to a config
    error), or the validation errors on bad values.
    """
    kicks: list[Kick] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'sym|asym <strength> <time>'")
        kind_token, strength_token, time_token = parts
        try:
            kind = KickKind(kind_token.lower())
        except ValueError:
            raise ValueError(f"line {lineno}: unknown kick kind {kind_token!r}") from None
        try:
            strength = float(strength_token)
            time = float(time_token)
        except ValueError:
            raise ValueError(f"line {lineno}: malformed number") from None
        kicks.append(Kick(kind, strength, time))
    return validate_sequence(kicks)
