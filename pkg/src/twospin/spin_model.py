"""Hamiltonian of a pair of identical spin-1/2 nuclei in the triplet/singlet basis.

Basis order is ``(phi1, phi2, phi3, phi4) = (aa, (ab+ba)/sqrt2, bb, (ab-ba)/sqrt2)``.
Energies are angular frequencies in rad/s, fields in gauss (numerically equal
to oersted), lengths in cm; every ``gamma**2 / r**3`` coupling carries one
factor of hbar so that it has the same units as ``gamma * H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

NUCLEAR_MAGNETON = 5.0507837e-24  # erg/G
HBAR = 1.0545718e-27  # erg s
MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))


@dataclass(frozen=True)
class Nucleus:
    name: str
    mu: float  # nuclear magnetons
    spin: float = 0.5

    def __post_init__(self):
        if self.spin != 0.5:
            raise DomainError(f"only spin-1/2 nuclei are supported, got {self.spin}")
        if not math.isfinite(self.mu) or self.mu < 0:
            raise DomainError(f"magnetic moment must be finite and >= 0, got {self.mu}")


HYDROGEN_1 = Nucleus("H1", 2.7927)
CARBON_13 = Nucleus("C13", 0.702381)
NUCLEI = {n.name: n for n in (HYDROGEN_1, CARBON_13)}


@dataclass(frozen=True)
class SpinGeometry:
    """Internuclear vector: length ``r`` [cm], polar ``theta`` and azimuth ``phi`` [rad]."""

    r: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError(f"r must be positive, got {self.r}")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise DomainError(f"phi must lie in [0, 2pi), got {self.phi}")


@dataclass(frozen=True)
class FieldConfig:
    h_z: float  # static field [G]
    h_1: float = 0.0  # rotating field amplitude [G]

    def __post_init__(self):
        if not (self.h_z > 0 and math.isfinite(self.h_z)):
            raise DomainError(f"h_z must be positive, got {self.h_z}")
        if not (self.h_1 >= 0 and math.isfinite(self.h_1)):
            raise DomainError(f"h_1 must be >= 0, got {self.h_1}")


@dataclass(frozen=True)
class GeometricFactors:
    y0: float
    y1: complex
    y2: complex


@dataclass(frozen=True)
class SpectrumReport:
    gamma_n: float  # rad s^-1 G^-1
    dip: float  # gamma_n**2 * hbar / r**3, rad/s
    e1: float
    e2: float
    e3: float
    e4: float
    de12: float
    de23: float


def gyromagnetic_ratio(nucleus: Nucleus) -> float:
    """gamma_N = mu / I converted to rad s^-1 G^-1."""
    return nucleus.mu * NUCLEAR_MAGNETON / (nucleus.spin * HBAR)


def geometric_factors(g: SpinGeometry) -> GeometricFactors:
    if g.r <= 0:
        raise DomainError(f"r must be positive, got {g.r}")
    inv_r3 = g.r ** -3
    c, s = math.cos(g.theta), math.sin(g.theta)
    return GeometricFactors(
        y0=inv_r3 * (1.0 - 3.0 * c * c),
        y1=inv_r3 * s * c * complex(math.cos(g.phi), -math.sin(g.phi)),
        y2=inv_r3 * s * s * complex(math.cos(2 * g.phi), -math.sin(2 * g.phi)),
    )


def zeeman_matrix(gamma_n: float, h_z: float) -> np.ndarray:
    return -gamma_n * h_z * np.diag([1.0, 0.0, -1.0, 0.0])


def dipolar_matrix(gamma_n: float, g: SpinGeometry) -> np.ndarray:
    """Full dipolar coupling matrix, off-diagonal elements included.

    The energy levels in :func:`spectrum` keep only its diagonal.
    """
    y = geometric_factors(g)
    y0, y1, y2 = y.y0, y.y1, y.y2
    s2 = math.sqrt(2.0)
    m = np.array(
        [
            [y0, -3 * s2 * y1, -3 * y2, 0],
            [-3 * s2 * y1.conjugate(), -2 * y0, 3 * s2 * y1, 0],
            [-3 * y2.conjugate(), 3 * s2 * y1.conjugate(), y0, 0],
            [0, 0, 0, 0],
        ],
        dtype=complex,
    )
    return 0.25 * gamma_n**2 * HBAR * m


def rf_matrix(gamma_n: float, h_1: float, omega: float, t: float) -> np.ndarray:
    """Rotating-field perturbation at time ``t``; couples phi1-phi2 and phi2-phi3 only."""
    up = complex(math.cos(omega * t), math.sin(omega * t))
    down = up.conjugate()
    m = np.array(
        [
            [0, up, 0, 0],
            [down, 0, up, 0],
            [0, down, 0, 0],
            [0, 0, 0, 0],
        ],
        dtype=complex,
    )
    return -gamma_n * h_1 / math.sqrt(2.0) * m


def spectrum(nucleus: Nucleus, g: SpinGeometry, f: FieldConfig) -> SpectrumReport:
    """Energy levels in the diagonal (secular) approximation."""
    gamma = gyromagnetic_ratio(nucleus)
    y0 = geometric_factors(g).y0
    coupling = gamma**2 * HBAR
    zeeman = gamma * f.h_z
    e1 = -zeeman + 0.25 * coupling * y0
    e2 = -0.5 * coupling * y0
    e3 = zeeman + 0.25 * coupling * y0
    # written in the transition-energy form, not as level differences
    shift = 0.75 * gamma * HBAR * g.r**-3 * (3 * math.cos(g.theta) ** 2 - 1)
    return SpectrumReport(
        gamma_n=gamma,
        dip=coupling * g.r**-3,
        e1=e1,
        e2=e2,
        e3=e3,
        e4=0.0,
        de12=gamma * (f.h_z + shift),
        de23=gamma * (f.h_z - shift),
    )
