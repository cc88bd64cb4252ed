"""Conversion between laboratory pulse parameters and kick strengths.

Dimensionless convention: time in units of I_m/hbar (one revival = 2*pi),
kick strengths are time-integrated phases

    P_a = (mu / hbar) * Integral E(t) dt          half-cycle pulse
    P_s = (dalpha / 4 hbar) * Integral E^2(t) dt  nonresonant laser pulse

both evaluated for Gaussian envelopes with 1/e half-widths sigma, so the
integrals reduce to peak * sigma * sqrt(pi). P_a > 0 pushes the dipole
head toward theta = 0; the laser kick strength returned here is the
positive (aligning) magnitude, negate it to model an anti-aligning
pulse.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

# CODATA 2018
HBAR = 1.054571817e-34        # J s
C_LIGHT = 2.99792458e8        # m / s
EPSILON_0 = 8.8541878128e-12  # F / m
DEBYE = 1e-21 / C_LIGHT       # C m, = 3.33564e-30

ANGSTROM3 = 1e-30             # m^3 per cubic angstrom
KV_PER_CM = 1e5               # V/m per kV/cm
W_PER_CM2 = 1e4               # W/m^2 per W/cm^2
PS = 1e-12                    # s per picosecond


@dataclass(frozen=True)
class MoleculeParams:
    """Linear dipolar molecule: dipole, polarizability anisotropy, revival.

    revival_time_ps = 2*pi*I_m/hbar expressed in picoseconds, which maps
    lab time t to dimensionless time 2*pi*t/revival_time.
    """

    name: str
    dipole_debye: float
    polarizability_anisotropy_A3: float
    revival_time_ps: float

    def __post_init__(self):
        if self.dipole_debye < 0 or self.revival_time_ps <= 0:
            raise ValueError("dipole and revival time must be positive")

    @property
    def dipole_si(self) -> float:
        return self.dipole_debye * DEBYE

    @property
    def anisotropy_si(self) -> float:
        """Polarizability anisotropy in SI (C m^2 / V) from volume (A^3)."""
        return 4.0 * math.pi * EPSILON_0 \
            * self.polarizability_anisotropy_A3 * ANGSTROM3

    @property
    def moment_of_inertia(self) -> float:
        return self.revival_time_ps * PS * HBAR / (2.0 * math.pi)


# ground-state KCl, the standard worked example for this scheme
KCL = MoleculeParams(
    name="KCl",
    dipole_debye=10.3,
    polarizability_anisotropy_A3=3.1,
    revival_time_ps=128.0,
)


@dataclass(frozen=True)
class HalfCyclePulse:
    """Asymmetric pulse: peak field in kV/cm, 1/e half-width in ps."""

    peak_field_kv_cm: float
    duration_ps: float

    def __post_init__(self):
        if self.duration_ps <= 0:
            raise ValueError("duration must be positive")


@dataclass(frozen=True)
class LaserPulse:
    """Nonresonant pulse: peak intensity in W/cm^2, 1/e intensity half-width in ps."""

    peak_intensity_w_cm2: float
    duration_ps: float

    def __post_init__(self):
        if self.peak_intensity_w_cm2 < 0 or self.duration_ps <= 0:
            raise ValueError("intensity must be >= 0, duration > 0")


def _impulsive_check(duration_ps: float, molecule: MoleculeParams) -> None:
    if duration_ps > 0.05 * molecule.revival_time_ps:
        warnings.warn(
            f"pulse duration {duration_ps} ps exceeds 5% of the revival "
            f"time {molecule.revival_time_ps} ps; the impulsive "
            "(delta-kick) approximation degrades",
            stacklevel=3,
        )


def kick_strength(pulse, molecule: MoleculeParams) -> float:
    """Dimensionless kick strength of a lab pulse on a molecule.

    HalfCyclePulse -> P_a (orienting), LaserPulse -> P_s magnitude
    (aligning; negate for an anti-aligning application).
    """
    if not isinstance(pulse, (HalfCyclePulse, LaserPulse)):
        raise TypeError(f"unknown pulse type: {type(pulse).__name__}")
    _impulsive_check(pulse.duration_ps, molecule)
    sigma = pulse.duration_ps * PS
    if isinstance(pulse, HalfCyclePulse):
        field = pulse.peak_field_kv_cm * KV_PER_CM
        return molecule.dipole_si * field * sigma * math.sqrt(math.pi) / HBAR
    intensity = pulse.peak_intensity_w_cm2 * W_PER_CM2
    e_sq = 2.0 * intensity / (C_LIGHT * EPSILON_0)
    return molecule.anisotropy_si * e_sq * sigma * math.sqrt(math.pi) \
        / (4.0 * HBAR)


def time_to_dimensionless(t_ps: float, molecule: MoleculeParams) -> float:
    """Lab time (ps) to rotor time (radians of revival phase)."""
    return 2.0 * math.pi * t_ps / molecule.revival_time_ps


def time_from_dimensionless(t: float, molecule: MoleculeParams) -> float:
    """Rotor time back to lab picoseconds."""
    return t * molecule.revival_time_ps / (2.0 * math.pi)
