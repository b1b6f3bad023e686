"""Symmetric well on z in [-L, L] with periodic boundary conditions.

The identification psi(-L) = psi(L) quantizes the momentum through
exp(2 i p L / hbar_c) = 1, giving E_n = n^2 pi^2 hbar_c^2 / (2 m L^2).
The four mode amplitudes stay undetermined by the boundary conditions alone;
normalization only pins |A|^2 + |B|^2 + |A'|^2 + |B'|^2 = 1/(4L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from .waveop import PhysicalConstants

NORMALIZATION_RTOL = 1e-10
BISECTION_RTOL = 1e-12


@dataclass(frozen=True)
class WellProblem:
    length: float  # nm, well spans z in [-L, L]
    m: float  # eV
    n_max: int
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if not (self.length > 0 and self.m > 0):
            raise ValueError("L and m must be strictly positive")
        if self.n_max < 1:
            raise ValueError("n_max must be a positive integer")


@dataclass(frozen=True)
class LevelSet:
    levels: tuple  # ((n, E_n_eV), ...), strictly increasing

    # forward/backward x up/down modes share each E_n; listed once
    multiplicity: ClassVar[int] = 4

    def __post_init__(self):
        previous = 0.0
        for n, e_n in self.levels:
            if n < 1 or e_n <= previous:
                raise ValueError("levels must be strictly increasing with positive energies")
            previous = e_n

    def energies(self):
        return np.array([e_n for _, e_n in self.levels])


def level_energy(n: int, length: float, m: float, constants: PhysicalConstants) -> float:
    return n**2 * np.pi**2 * constants.hbar_c**2 / (2.0 * m * length**2)


def energy_levels(w: WellProblem) -> LevelSet:
    """E_n = n^2 pi^2 hbar_c^2 / (2 m L^2) for n = 1 .. n_max.

    Each level carries a 4-fold degeneracy (forward/backward x up/down); the
    listing reports each once.
    """
    return LevelSet(
        tuple(
            (n, level_energy(n, w.length, w.m, w.constants))
            for n in range(1, w.n_max + 1)
        )
    )


def periodic_residual(e_energy: float, w: WellProblem) -> float:
    """|exp(2 i p L / hbar_c) - 1| with p = sqrt(2 m E); zero exactly on the
    quantized levels.  Equals 2 |sin(p L / hbar_c)|, hence never above 2."""
    if e_energy <= 0:
        raise ValueError("E must be positive")
    p = np.sqrt(2.0 * w.m * e_energy)
    phase = 2.0 * p * w.length / w.constants.hbar_c
    return float(abs(np.exp(1j * phase) - 1.0))


def _phase_sin(e_energy: float, w: WellProblem) -> float:
    # sign-changing root function: sin(p L / hbar_c) crosses zero at each level
    p = np.sqrt(2.0 * w.m * e_energy)
    return float(np.sin(p * w.length / w.constants.hbar_c))


def find_levels_numerically(w: WellProblem, e_hi: float) -> LevelSet:
    """Bracket and bisect the zeros of the periodic residual in (0, e_hi].

    The residual itself is nonnegative, so bracketing runs on the
    sign-changing sin(p L / hbar_c).  Grid step is a quarter of the analytic
    n=1 spacing, which separates consecutive levels for every n; bisection
    refines to 1e-12 relative.
    """
    if e_hi <= 0:
        raise ValueError("e_hi must be positive")
    e_1 = level_energy(1, w.length, w.m, w.constants)
    step = e_1 / 4.0
    found = []
    e_lo = step * 1e-6  # stay off the p = 0 endpoint
    f_lo = _phase_sin(e_lo, w)
    e = e_lo
    while e < e_hi:
        e_next = min(e + step, e_hi)
        f_next = _phase_sin(e_next, w)
        if f_lo == 0.0:
            found.append(e)
        elif f_lo * f_next < 0.0:
            a, b = e, e_next
            fa = f_lo
            while (b - a) > BISECTION_RTOL * b:
                mid = 0.5 * (a + b)
                fm = _phase_sin(mid, w)
                if fm == 0.0:
                    a = b = mid
                    break
                if fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            found.append(0.5 * (a + b))
        e, f_lo = e_next, f_next
    return LevelSet(tuple((i + 1, e_n) for i, e_n in enumerate(found)))


def normalization_constraint(amplitudes, length: float):
    """Check |A|^2 + |B|^2 + |A'|^2 + |B'|^2 = 1/(4L).

    Returns (ok, relative deviation).  The individual amplitudes are not
    fixed by the problem; only this sum is.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.shape != (4,):
        raise ValueError("expected exactly four amplitudes")
    target = 1.0 / (4.0 * length)
    total = float(np.sum(np.abs(amps) ** 2))
    deviation = abs(total - target) / target
    return deviation <= NORMALIZATION_RTOL, deviation
