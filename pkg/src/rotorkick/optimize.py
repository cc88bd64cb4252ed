"""Pulse-pair optimization of the orientation factor.

The objective |<cos theta>|(p_s, t_1, t_2) is violently multimodal in
the observation time t_2 but smooth in (p_s, t_1) near its optima, so
the search is nested: an exhaustive t_2 scan (grid + golden-section
refinement) inside a multi-start Nelder-Mead simplex over (p_s, t_1),
run in scaled coordinates (p_s/p_a, t_1*p_a).

Branches
--------
Prompt: orientation shortly after the pulse pair. Revival: orientation
near one full revival period; classically this is the analytic
continuation of the trajectory to negative times, quantum mechanically a
window of total time within [2*pi - Delta, 2*pi]. Classical windows
scale as 1/p_a so that optima respect the exact classical scaling law;
quantum windows span the full 2*pi period, which is the natural domain
of a periodic system.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from . import classical, defaults, quantum
from .core import (Branch, Engine, ObjectiveSign, OptimizationResult,
                   PulseOrder)
from .errors import NonFiniteValue

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BoundsBox:
    """Finite box constraints on (p_s, t_1, t_2)."""

    p_s: tuple[float, float]
    t_1: tuple[float, float]
    t_2: tuple[float, float]

    def __post_init__(self):
        for name, (lo, hi) in (("p_s", self.p_s), ("t_1", self.t_1),
                               ("t_2", self.t_2)):
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise NonFiniteValue(f"bad bounds for {name}: ({lo}, {hi})")


def default_bounds(engine: Engine, order: PulseOrder, branch: Branch,
                   p_a: float) -> BoundsBox:
    """Engine- and branch-dependent default search box.

    Prompt uses an anti-aligning pre/post pulse (p_s < 0); the revival
    branch mirrors it with an aligning pulse (p_s > 0). |p_s| ranges over
    [0.02, 1.0] * p_a.
    """
    pa = abs(p_a) if p_a != 0 else 1.0
    lo_mag = defaults.PS_RATIO_MIN * pa
    hi_mag = defaults.PS_RATIO_MAX * pa
    if branch is Branch.PROMPT:
        ps = (-hi_mag, -lo_mag)
    else:
        ps = (lo_mag, hi_mag)

    if order is PulseOrder.SIMULTANEOUS:
        t1 = (0.0, 0.0)
    elif engine is Engine.CLASSICAL:
        w1 = defaults.delay_window_classical(pa)
        t1 = (-w1, 0.0) if branch is Branch.REVIVAL else (0.0, w1)
    else:
        t1 = (0.0, TWO_PI)

    if engine is Engine.CLASSICAL:
        w2 = defaults.prompt_window_classical(pa)
        t2 = (-w2, 0.0) if branch is Branch.REVIVAL else (0.0, w2)
    else:
        t2 = (0.0, TWO_PI)
    return BoundsBox(ps, t1, t2)


@dataclass(frozen=True)
class OptimizationProblem:
    """One optimization instance: engine, pulse order, branch, fixed p_a.

    p_a > 0 is the canonical case. p_a = 0 short-circuits (orientation is
    identically zero by parity); negative p_a is tolerated so the
    sign-flip symmetry of the objective can be probed directly.
    """

    engine: Engine
    order: PulseOrder
    p_a: float
    branch: Branch = Branch.PROMPT
    bounds: BoundsBox | None = None
    objective_sign: ObjectiveSign = ObjectiveSign.MAXIMIZE_ABS

    def __post_init__(self):
        if not math.isfinite(self.p_a) or abs(self.p_a) > 1e4:
            raise NonFiniteValue(f"bad p_a: {self.p_a}")
        if self.bounds is None:
            object.__setattr__(
                self, "bounds",
                default_bounds(self.engine, self.order, self.branch, self.p_a),
            )
        if self.order is PulseOrder.SIMULTANEOUS and self.bounds.t_1 != (0.0, 0.0):
            object.__setattr__(self, "bounds",
                               replace(self.bounds, t_1=(0.0, 0.0)))

    def transform(self, value: float) -> float:
        return abs(value) if self.objective_sign is ObjectiveSign.MAXIMIZE_ABS \
            else value


def _t2_window(prob: OptimizationProblem, t_1: float) -> tuple[float, float]:
    lo, hi = prob.bounds.t_2
    if prob.engine is Engine.QUANTUM and prob.branch is Branch.REVIVAL:
        # total time t_1 + t_2 confined to [2*pi - Delta, 2*pi]
        lo = max(lo, TWO_PI - defaults.REVIVAL_WINDOW - t_1)
        hi = min(hi, TWO_PI - t_1)
    return lo, hi


def _golden_refine(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of f on [lo, hi] to width tol."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def evaluate_objective(
    prob: OptimizationProblem, p_s: float, t_1: float
) -> tuple[float, float]:
    """Best signed <cos theta> over the branch's t_2 window, and its t_2.

    Dense scan at the strength-scaled step, then golden-section
    refinement of the winning bracket.
    """
    lo, hi = _t2_window(prob, t_1)
    step = defaults.scan_step(abs(p_s) + abs(prob.p_a))
    if hi - lo < step:
        lo, hi = min(lo, hi - step), hi
    n = max(8, int(math.ceil((hi - lo) / step)) + 1)
    grid = np.linspace(lo + 1e-12, hi, n)

    if prob.engine is Engine.CLASSICAL:
        vals = classical.two_kick_observable(p_s, prob.p_a, t_1, grid,
                                             prob.order, k=1)

        def value_at(t2: float) -> float:
            return float(classical.two_kick_observable(
                p_s, prob.p_a, t_1, t2, prob.order, k=1)[0])
    else:
        psi = quantum.two_kick_state(p_s, prob.p_a, t_1, prob.order)
        vals = quantum.observable_scan(psi, 1, grid)

        def value_at(t2: float) -> float:
            return float(quantum.observable_scan(psi, 1, t2)[0])

    scores = np.abs(vals) if prob.objective_sign is ObjectiveSign.MAXIMIZE_ABS \
        else vals
    j = int(np.argmax(scores))
    bl = grid[max(0, j - 1)]
    bh = grid[min(n - 1, j + 1)]
    t2_star = _golden_refine(lambda t: prob.transform(value_at(t)), bl, bh,
                             defaults.TIME_REFINE_TOL)
    return value_at(t2_star), t2_star


def _start_points(prob: OptimizationProblem) -> list[tuple[float, float]]:
    """Deterministic coarse-grid simplex starts (at least 8)."""
    (ps_lo, ps_hi) = prob.bounds.p_s
    (t1_lo, t1_hi) = prob.bounds.t_1
    sign = 1.0 if ps_lo >= 0 else -1.0
    mag_lo = max(min(abs(ps_lo), abs(ps_hi)), 1e-6)
    mag_hi = max(abs(ps_lo), abs(ps_hi))
    mags = np.geomspace(1.05 * mag_lo, 0.95 * mag_hi, 4)

    def clamp_t1(t: float) -> float:
        eps = 1e-9 + 1e-6 * (t1_hi - t1_lo)
        return min(max(t, t1_lo + eps), t1_hi - eps) if t1_hi > t1_lo else t1_lo

    if prob.order is PulseOrder.SIMULTANEOUS:
        extra = abs(prob.p_a) / 2.34
        out = [(sign * m, 0.0) for m in mags]
        if mag_lo <= extra <= mag_hi:
            out.append((sign * extra, 0.0))
        return out

    delays: list = []
    scale = 0.8 if prob.order is PulseOrder.LASER_FIRST else 0.36
    for m in mags:
        base = scale / m
        if prob.branch is Branch.REVIVAL and prob.engine is Engine.CLASSICAL:
            delays += [(sign * m, clamp_t1(-base)), (sign * m, clamp_t1(-2.5 * base))]
        elif prob.branch is Branch.REVIVAL:
            delays += [(sign * m, clamp_t1(TWO_PI - base)),
                       (sign * m, clamp_t1(TWO_PI - 2.5 * base))]
        else:
            delays += [(sign * m, clamp_t1(base)), (sign * m, clamp_t1(2.5 * base))]
    if prob.engine is Engine.QUANTUM and prob.branch is Branch.PROMPT:
        # interference-assisted basins sit at delays of order one radian
        # short of the revival (laser-first) or near the half revival
        anchors = (4.3, 4.9, 5.5) if prob.order is PulseOrder.LASER_FIRST \
            else (3.1, 0.1, 5.5)
        for m in mags[1:3]:
            delays += [(sign * m, clamp_t1(t)) for t in anchors]
    return delays


def optimize(
    prob: OptimizationProblem,
    extra_starts: int = 0,
    seed: int | None = None,
) -> OptimizationResult:
    """Multi-start Nelder-Mead over (p_s, t_1) around the inner t_2 scan.

    ``extra_starts`` adds seeded uniform-random starts on top of the
    deterministic grid (the only use of randomness). Results from all
    starts are merged deterministically: best transformed objective,
    ties broken by smaller |p_s|.
    """
    if prob.p_a == 0.0:
        warnings.warn("p_a = 0: a symmetric kick alone never orients; "
                      "objective is identically zero", stacklevel=2)
        t2_lo, t2_hi = prob.bounds.t_2
        return OptimizationResult(
            p_a=0.0, p_s=0.0, t_1=max(prob.bounds.t_1[0], 0.0),
            t_2=t2_hi if t2_hi > 0 else t2_lo, objective=0.0,
            branch=prob.branch, order=prob.order, engine=prob.engine,
            evaluations=1, stagnated=True,
        )

    pa_mag = abs(prob.p_a)
    neval = 0
    cache: dict[tuple[float, float], tuple[float, float]] = {}

    def evaluate(ps: float, t1: float) -> tuple[float, float]:
        nonlocal neval
        key = (ps, t1)
        if key not in cache:
            cache[key] = evaluate_objective(prob, ps, t1)
            neval += 1
        return cache[key]

    (ps_lo, ps_hi) = prob.bounds.p_s
    (t1_lo, t1_hi) = prob.bounds.t_1
    simultaneous = prob.order is PulseOrder.SIMULTANEOUS

    def neg_objective(u: np.ndarray) -> float:
        ps = u[0] * pa_mag
        t1 = 0.0 if simultaneous else u[1] / pa_mag
        if not (ps_lo <= ps <= ps_hi) or not (t1_lo <= t1 <= t1_hi):
            return 1e3
        value, _ = evaluate(ps, t1)
        return -prob.transform(value)

    starts = _start_points(prob)
    if extra_starts > 0:
        rng = np.random.default_rng(seed)
        for _ in range(extra_starts):
            ps = rng.uniform(ps_lo, ps_hi)
            t1 = rng.uniform(t1_lo, t1_hi) if t1_hi > t1_lo else t1_lo
            starts.append((ps, t1))

    best_start = max(starts, key=lambda s: prob.transform(evaluate(*s)[0]))
    best_start_score = prob.transform(evaluate(*best_start)[0])

    candidates: list[tuple[float, float, float]] = []  # (score, ps, t1)
    for ps0, t10 in starts:
        u0 = np.array([ps0 / pa_mag] if simultaneous
                      else [ps0 / pa_mag, t10 * pa_mag])
        res = minimize(
            neg_objective, u0, method="Nelder-Mead",
            options={"xatol": defaults.SIMPLEX_XATOL, "fatol": 1e-9,
                     "maxiter": defaults.SIMPLEX_MAXITER},
        )
        ps = res.x[0] * pa_mag
        t1 = 0.0 if simultaneous else res.x[1] / pa_mag
        if (ps_lo <= ps <= ps_hi) and (t1_lo <= t1 <= t1_hi):
            candidates.append((-res.fun, ps, t1))
    candidates += [(prob.transform(evaluate(*s)[0]), s[0], s[1]) for s in starts]

    score, ps_best, t1_best = max(candidates,
                                  key=lambda c: (c[0], -abs(c[1])))
    value, t2_best = evaluate(ps_best, t1_best)
    return OptimizationResult(
        p_a=prob.p_a, p_s=ps_best, t_1=t1_best, t_2=t2_best,
        objective=value, branch=prob.branch, order=prob.order,
        engine=prob.engine, evaluations=neval,
        stagnated=bool(score <= best_start_score + 1e-12),
    )


@dataclass(frozen=True)
class SweepRow:
    p_a: float
    result: OptimizationResult | None
    error: str | None = None


def sweep(prob_template: OptimizationProblem, p_a_values,
          extra_starts: int = 0, seed: int | None = None) -> list[SweepRow]:
    """One optimize per p_a, warm-started from the previous optimum.

    p_a values must be positive and sorted ascending. Failures are
    captured per point so a sweep always returns one row per input.
    """
    p_a_values = list(p_a_values)
    if any(p <= 0 for p in p_a_values):
        raise ValueError("sweep p_a values must be positive")
    if sorted(p_a_values) != p_a_values:
        raise ValueError("sweep p_a values must be sorted ascending")
    if (prob_template.engine is Engine.QUANTUM
            and any(p > defaults.QUANTUM_SWEEP_PA_MAX for p in p_a_values)):
        raise ValueError(
            f"quantum sweeps are limited to p_a <= {defaults.QUANTUM_SWEEP_PA_MAX}"
            " by default (override by sweeping manually)")

    rows: list[SweepRow] = []
    prev: OptimizationResult | None = None
    for pa in p_a_values:
        try:
            prob = OptimizationProblem(
                engine=prob_template.engine, order=prob_template.order,
                p_a=pa, branch=prob_template.branch,
                objective_sign=prob_template.objective_sign,
            )
            result = optimize(prob, extra_starts=extra_starts, seed=seed)
            if prev is not None:
                # warm start: previous optimum, strength-scaled
                lam = pa / prev.p_a
                warm = _polish_from(prob, prev.p_s * lam, prev.t_1 / lam)
                if warm is not None and prob.transform(warm.objective) > \
                        prob.transform(result.objective):
                    result = warm
            rows.append(SweepRow(pa, result))
            prev = result
        except Exception as exc:  # noqa: BLE001 - annotate and continue
            rows.append(SweepRow(pa, None, f"{type(exc).__name__}: {exc}"))
    return rows


def _polish_from(prob: OptimizationProblem, ps0: float, t10: float
                 ) -> OptimizationResult | None:
    """Single Nelder-Mead run from one start (sweep warm starts)."""
    (ps_lo, ps_hi) = prob.bounds.p_s
    (t1_lo, t1_hi) = prob.bounds.t_1
    if not (ps_lo <= ps0 <= ps_hi and t1_lo <= t10 <= t1_hi):
        return None
    pa_mag = abs(prob.p_a)
    neval = 0

    def neg_objective(u):
        nonlocal neval
        ps, t1 = u[0] * pa_mag, u[1] / pa_mag
        if not (ps_lo <= ps <= ps_hi) or not (t1_lo <= t1 <= t1_hi):
            return 1e3
        neval += 1
        return -prob.transform(evaluate_objective(prob, ps, t1)[0])

    if prob.order is PulseOrder.SIMULTANEOUS:
        return None
    res = minimize(neg_objective, np.array([ps0 / pa_mag, t10 * pa_mag]),
                   method="Nelder-Mead",
                   options={"xatol": defaults.SIMPLEX_XATOL, "fatol": 1e-9,
                            "maxiter": defaults.SIMPLEX_MAXITER})
    ps, t1 = res.x[0] * pa_mag, res.x[1] / pa_mag
    if not (ps_lo <= ps <= ps_hi and t1_lo <= t1 <= t1_hi):
        return None
    value, t2 = evaluate_objective(prob, ps, t1)
    return OptimizationResult(
        p_a=prob.p_a, p_s=ps, t_1=t1, t_2=t2, objective=value,
        branch=prob.branch, order=prob.order, engine=prob.engine,
        evaluations=neval,
    )


CSV_HEADER = "p_a,p_s,t1,t2,objective,branch,order,engine,evals"


def result_csv_row(r: OptimizationResult) -> str:
    num = "{:.11e}".format
    return ",".join([
        num(r.p_a), num(r.p_s), num(r.t_1), num(r.t_2), num(r.objective),
        r.branch.value, r.order.value, r.engine.value, str(r.evaluations),
    ])
