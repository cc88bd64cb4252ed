"""Quantum rotor propagation in the spherical-harmonic basis.

States live on Y_l^0, l = 0..l_max (linearly polarized impulsive fields
conserve m, and the initial state is the isotropic ground state, so only
m = 0 ever appears). Free evolution multiplies a_l by
exp(-i l(l+1) dt / 2); the revival period is exactly 2*pi because all
l(l+1)/2 phase rates are integers.

Kicks are pure phase factors in the angle representation,
exp(i P cos theta) or exp(i P cos^2 theta), realized here as matrix
exponentials through the eigen-decomposition of the banded cos / cos^2
operators. The cos^2 operator is defined as the square of the truncated
cos matrix, which keeps the two exactly consistent within the basis; the
symmetric kick therefore block-diagonalizes over even/odd l and parity
conservation is structural, not numerical.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import defaults
from .core import (Kick, KickKind, ObservableKind, ObservableSeries,
                   PulseOrder, PulseSequence, validate_sequence)
from .errors import BasisOverflow

_OP_CACHE: dict[tuple[KickKind, int], "KickOperator"] = {}
_OP_LOCK = threading.Lock()


def cos_offdiag(l_max: int) -> np.ndarray:
    """<l|cos theta|l+1> = (l+1)/sqrt((2l+1)(2l+3)), l = 0..l_max-1."""
    l = np.arange(l_max, dtype=float)
    return (l + 1.0) / np.sqrt((2.0 * l + 1.0) * (2.0 * l + 3.0))


def cos2_bands(l_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and second off-diagonal of cos^2 theta on l = 0..l_max.

    Computed as the square of the truncated cos matrix: the diagonal is
    c_{l-1}^2 + c_l^2 and the l,l+2 band is c_l * c_{l+1}, with c_l = 0
    outside the basis. Exact for l <= l_max - 1.
    """
    c = cos_offdiag(l_max)
    c_lo = np.concatenate(([0.0], c))        # c_{l-1}
    c_hi = np.concatenate((c, [0.0]))        # c_l
    diag = c_lo**2 + c_hi**2
    off2 = c_hi[: l_max - 1] * c_hi[1: l_max]
    return diag, off2


@dataclass(frozen=True)
class RotorWavefunction:
    """Unit-norm coefficient vector over Y_l^0."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("coeffs must be a nonempty 1-d complex vector")
        n = np.linalg.norm(coeffs)
        if abs(n - 1.0) > 1e-8:
            raise ValueError(f"state norm {n} is not 1")

    @property
    def l_max(self) -> int:
        return self.coeffs.size - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class KickOperator:
    """Banded cos/cos^2 operator with its eigen-decomposition.

    For the asymmetric (cos) kind this is one tridiagonal problem; for
    the symmetric (cos^2) kind, two independent tridiagonal problems on
    the even- and odd-l sub-lattices.
    """

    kind: KickKind
    l_max: int
    blocks: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]  # (idx, vals, vecs)

    def apply(self, coeffs: np.ndarray, strength: float) -> np.ndarray:
        """exp(i * strength * M) @ coeffs via the eigenbasis."""
        out = np.zeros(coeffs.size, dtype=complex)
        for idx, vals, vecs in self.blocks:
            out[idx] = (vecs * np.exp(1j * strength * vals)) @ (vecs.T @ coeffs[idx])
        return out

    @property
    def matrix(self) -> np.ndarray:
        """Dense analytic operator matrix (tests and diagnostics)."""
        n = self.l_max + 1
        m = np.zeros((n, n))
        if self.kind is KickKind.ASYMMETRIC:
            c = cos_offdiag(self.l_max)
            m[np.arange(n - 1), np.arange(1, n)] = c
            m[np.arange(1, n), np.arange(n - 1)] = c
        else:
            diag, off2 = cos2_bands(self.l_max)
            m[np.arange(n), np.arange(n)] = diag
            m[np.arange(n - 2), np.arange(2, n)] = off2
            m[np.arange(2, n), np.arange(n - 2)] = off2
        return m

    def reconstructed(self) -> np.ndarray:
        """V diag(lambda) V^T assembled over blocks; equals ``matrix``."""
        n = self.l_max + 1
        m = np.zeros((n, n))
        for idx, vals, vecs in self.blocks:
            m[np.ix_(idx, idx)] = (vecs * vals) @ vecs.T
        return m


def kick_operator(kind: KickKind, l_max: int) -> KickOperator:
    """Cached eigen-decomposed kick operator for a basis size."""
    key = (kind, l_max)
    with _OP_LOCK:
        op = _OP_CACHE.get(key)
    if op is not None:
        return op
    if kind is KickKind.ASYMMETRIC:
        c = cos_offdiag(l_max)
        vals, vecs = eigh_tridiagonal(np.zeros(l_max + 1), c)
        blocks = ((np.arange(l_max + 1), vals, vecs),)
    else:
        diag, off2 = cos2_bands(l_max)
        parts = []
        for parity in (0, 1):
            idx = np.arange(parity, l_max + 1, 2)
            vals, vecs = eigh_tridiagonal(diag[idx], off2[idx[:-1]])
            parts.append((idx, vals, vecs))
        blocks = tuple(parts)
    op = KickOperator(kind, l_max, blocks)
    with _OP_LOCK:
        _OP_CACHE[key] = op
    return op


def _check_basis_size(l_max: int) -> int:
    if l_max > defaults.L_MAX_CAP:
        raise BasisOverflow(
            f"requested l_max = {l_max} exceeds the cap {defaults.L_MAX_CAP}"
        )
    return l_max


def ground_state(l_max: int) -> RotorWavefunction:
    """Isotropic ground state Y_0^0 on a basis of size l_max + 1."""
    if l_max < 4:
        raise ValueError("l_max must be at least 4")
    coeffs = np.zeros(l_max + 1, dtype=complex)
    coeffs[0] = 1.0
    return RotorWavefunction(coeffs)


def _tail_population(coeffs: np.ndarray) -> float:
    margin = min(defaults.TAIL_MARGIN, coeffs.size - 1)
    return float(np.sum(np.abs(coeffs[coeffs.size - margin:]) ** 2))


def apply_kick(psi: RotorWavefunction, kick: Kick,
               l_max_cap: int = defaults.L_MAX_CAP) -> RotorWavefunction:
    """Apply one impulsive kick, enlarging the basis if the tail fills.

    The post-kick population above l_max - 10 must stay below 1e-10;
    otherwise the pre-kick state is zero-padded to twice the basis size
    and the kick is recomputed, up to the hard cap.
    """
    coeffs = psi.coeffs
    while True:
        l_max = coeffs.size - 1
        op = kick_operator(kick.kind, l_max)
        new = op.apply(coeffs, kick.strength)
        if _tail_population(new) < defaults.TAIL_TOL:
            return RotorWavefunction(new)
        if l_max >= l_max_cap:
            raise BasisOverflow(
                f"kick {kick} needs l_max beyond the cap {l_max_cap}"
            )
        grown = min(l_max_cap, 2 * l_max + 1)
        padded = np.zeros(grown + 1, dtype=complex)
        padded[: coeffs.size] = coeffs
        coeffs = padded


def free_propagate(psi: RotorWavefunction, dt: float) -> RotorWavefunction:
    """Free rotor evolution: a_l *= exp(-i l(l+1) dt / 2)."""
    l = np.arange(psi.coeffs.size, dtype=float)
    return RotorWavefunction(psi.coeffs * np.exp(-0.5j * l * (l + 1.0) * dt))


def expectation(psi: RotorWavefunction, k: int) -> float:
    """<cos^k theta> of the state, k = 1 or 2."""
    a = psi.coeffs
    if k == 1:
        c = cos_offdiag(psi.l_max)
        return float(2.0 * np.real(np.conj(a[:-1]) @ (c * a[1:])))
    if k == 2:
        diag, off2 = cos2_bands(psi.l_max)
        val = np.real(np.conj(a) @ (diag * a))
        val += 2.0 * np.real(np.conj(a[:-2]) @ (off2 * a[2:]))
        return float(val)
    raise ValueError("k must be 1 or 2")


def observable_scan(psi: RotorWavefunction, k: int, dts) -> np.ndarray:
    """<cos^k theta> after freely evolving ``psi`` by each time in ``dts``.

    Equivalent to expectation(free_propagate(psi, dt), k) for each dt but
    vectorized: orientation couples l, l+1 coherences with phase rates
    l+1, alignment couples l, l+2 with rates 2l+3.
    """
    a = psi.coeffs
    dts = np.atleast_1d(np.asarray(dts, dtype=float))
    if k == 1:
        c = cos_offdiag(psi.l_max)
        q = np.conj(a[:-1]) * a[1:] * c
        phases = np.exp(-1j * np.outer(dts, np.arange(1, psi.l_max + 1)))
        return 2.0 * np.real(phases @ q)
    if k == 2:
        diag, off2 = cos2_bands(psi.l_max)
        base = float(np.real(np.conj(a) @ (diag * a)))
        r = np.conj(a[:-2]) * a[2:] * off2
        phases = np.exp(-1j * np.outer(dts, 2.0 * np.arange(psi.l_max - 1) + 3.0))
        return base + 2.0 * np.real(phases @ r)
    raise ValueError("k must be 1 or 2")


def run_sequence(
    seq: PulseSequence,
    t_eval,
    k: int = 2,
    l_max_hint: int | None = None,
) -> ObservableSeries:
    """Propagate the ground state through a kick sequence, recording
    <cos^k theta> at each requested time.

    Simultaneous kicks commute exactly in the angle representation (both
    are phase factors); they are applied symmetric-first for a
    deterministic truncated-basis result.
    """
    seq = validate_sequence(seq)
    t_eval = np.atleast_1d(np.asarray(t_eval, dtype=float))
    if t_eval.size > 1 and np.any(np.diff(t_eval) <= 0):
        raise ValueError("t_eval must be strictly increasing")
    if l_max_hint is None:
        l_max_hint = defaults.quantum_l_max(seq.total_strength())
    psi = ground_state(max(_check_basis_size(l_max_hint), 4))

    groups = seq.time_groups()
    starts = [g[0] for g in groups] + ([float(t_eval[0])] if t_eval.size else [])
    clock = min(starts) if starts else 0.0

    values = np.empty(t_eval.size)
    gi = 0
    for i, t in enumerate(t_eval):
        while gi < len(groups) and groups[gi][0] <= t:
            t_kick, kicks = groups[gi]
            psi = free_propagate(psi, t_kick - clock)
            clock = t_kick
            for kick in sorted(kicks, key=lambda kk: kk.kind is KickKind.ASYMMETRIC):
                psi = apply_kick(psi, kick)
            gi += 1
        values[i] = observable_scan(psi, k, t - clock)[0]
    kind = ObservableKind.ORIENTATION if k == 1 else ObservableKind.ALIGNMENT
    return ObservableSeries(t_eval, values, kind)


def two_kick_state(
    p_s: float,
    p_a: float,
    t_1: float,
    order: PulseOrder = PulseOrder.LASER_FIRST,
    l_max: int | None = None,
) -> RotorWavefunction:
    """State just after the second kick of the canonical pulse pair.

    The optimizer's workhorse: combine with :func:`observable_scan` to
    sweep the observation time t_2.
    """
    if l_max is None:
        l_max = defaults.quantum_l_max(abs(p_s) + abs(p_a))
    psi = ground_state(max(_check_basis_size(l_max), 4))
    sym = Kick(KickKind.SYMMETRIC, p_s, 0.0)
    asym = Kick(KickKind.ASYMMETRIC, p_a, 0.0)
    if order is PulseOrder.LASER_FIRST:
        first, second = sym, asym
    elif order is PulseOrder.HCP_FIRST:
        first, second = asym, sym
    else:
        psi = apply_kick(psi, sym)
        return apply_kick(psi, asym)
    psi = apply_kick(psi, first)
    psi = free_propagate(psi, t_1)
    return apply_kick(psi, second)
