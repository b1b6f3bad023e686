"""Momentum-space wave operator per constant-potential region.

The operator (E - V) eta + m eta^+ squares to the scalar 2m(E - V), which is
the whole content of the nonrelativistic dispersion relation: real momentum
p = sqrt(2m(E-V)) above the potential, imaginary +-i*kappa below it.
Energies are the kinetic (nonrelativistic) energies in eV, momenta come out
in eV, and spatial phases downstream divide by hbar_c.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import EtaSet, build_eta, build_standard_gammas, max_abs

# relative half-width of the band around E = V where the propagating and
# evanescent branches are bridged by the series limit
CRITICAL_BAND_RTOL = 1e-9

PROPAGATING = "propagating"
EVANESCENT = "evanescent"
CRITICAL = "critical"


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar*c in eV*nm and the particle rest energy in eV."""

    hbar_c: float = 197.0
    mass_c2: float = 0.5e6

    def __post_init__(self):
        if not (self.hbar_c > 0 and self.mass_c2 > 0):
            raise ValueError("hbar_c and mass_c2 must be strictly positive")


def critical_band_width(e_energy: float, v: float) -> float:
    return CRITICAL_BAND_RTOL * max(abs(e_energy), abs(v))


def classify_regime(e_energy: float, v: float) -> str:
    if abs(e_energy - v) <= critical_band_width(e_energy, v):
        return CRITICAL
    return PROPAGATING if e_energy > v else EVANESCENT


@dataclass(frozen=True)
class RegionOperator:
    """(E - V) eta + m eta^+ for one constant-potential region."""

    e_energy: float
    v: float
    m: float
    matrix: np.ndarray
    regime: str


def momentum_operator(e_energy: float, v: float, m: float, e: EtaSet) -> RegionOperator:
    if m <= 0:
        raise ValueError("mass must be positive")
    matrix = (e_energy - v) * e.eta + m * e.eta_dagger
    return RegionOperator(e_energy, v, m, matrix, classify_regime(e_energy, v))


@dataclass(frozen=True)
class DispersionResult:
    """regime plus the momentum magnitude: p (eV) when propagating,
    kappa (eV) when evanescent, 0 in the critical band."""

    regime: str
    value: float

    @property
    def is_zero(self) -> bool:
        return self.regime == CRITICAL


def dispersion(e_energy: float, v: float, m: float) -> DispersionResult:
    if m <= 0:
        raise ValueError("mass must be positive")
    regime = classify_regime(e_energy, v)
    if regime == CRITICAL:
        return DispersionResult(CRITICAL, 0.0)
    mag = float(np.sqrt(2.0 * m * abs(e_energy - v)))
    return DispersionResult(regime, mag)


def complex_momentum(e_energy: float, v: float, m: float) -> complex:
    """Principal branch sqrt(2m(E-V)): real and positive above the potential,
    +i*kappa below it."""
    return complex(np.sqrt(complex(2.0 * m * (e_energy - v))))


def general_a_check(a: float, e_energy: float, m: float, e: EtaSet | None = None) -> float:
    """Deviation of ((1/a) eta E + a eta^+ m)^2 from 2mE * I.

    The free parameter drops out through the completeness sum, so the
    deviation must sit at rounding level for every nonzero a.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if e is None:
        e = build_eta(build_standard_gammas())
    op = (e_energy / a) * e.eta + (a * m) * e.eta_dagger
    target = 2.0 * m * e_energy * np.eye(4, dtype=complex)
    return max_abs(op @ op - target)


def nonrel_limit_residual(e_kinetic: float, m: float) -> float:
    """|p_rel - p_nr| / p_rel for total energy E_kinetic + m.

    Quantifies how well sqrt(2mE') approximates the exact relativistic
    momentum; about E'/(4m) for small E'/m.
    """
    if e_kinetic <= 0:
        raise ValueError("kinetic energy must be positive")
    if m <= 0:
        raise ValueError("mass must be positive")
    # E'(E' + 2m) = (E'+m)^2 - m^2 without the cancellation
    p_rel = np.sqrt(e_kinetic * (e_kinetic + 2.0 * m))
    p_nr = np.sqrt(2.0 * m * e_kinetic)
    return float(abs(p_rel - p_nr) / p_rel)
