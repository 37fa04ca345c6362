"""Lorentzian lineshape, decay rate of the spin -1 level and its energy shift.

The squared coupling profile ``g(w)**2`` is taken to be the Lorentzian ``f(w)``
everywhere, not only at resonance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NumericError

PV_EXCISION_FRACTIONS = (1 / 10, 1 / 20, 1 / 40)


@dataclass(frozen=True)
class LineshapeParams:
    omega0: float  # centre [rad/s]
    delta: float  # half-width at half-maximum [rad/s]

    def __post_init__(self):
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not math.isfinite(self.omega0):
            raise DomainError(f"omega0 must be finite, got {self.omega0}")

    @classmethod
    def from_full_width(cls, omega0, width):
        return cls(omega0, 0.5 * width)


@dataclass(frozen=True)
class RateReport:
    gamma_minus1: float  # s^-1
    w_rate: float  # s^-1, at resonance
    e3_renormalized: float  # rad/s


def lorentzian(omega, p: LineshapeParams):
    """Normalised Lorentzian; accepts scalars or arrays."""
    x = np.asarray(omega, dtype=float) - p.omega0
    out = (p.delta / math.pi) / (p.delta**2 + x * x)
    return float(out) if out.ndim == 0 else out


def lorentzian_norm(p: LineshapeParams) -> float:
    """Integral of the lineshape over the whole real line (should be 1)."""
    # in units of the width, so a narrow line far from 0 is still resolved
    c, d = p.omega0, p.delta
    f = lambda s: d * lorentzian(c + d * s, p)
    edges = [-np.inf, -100.0, -1.0, 0.0, 1.0, 100.0, np.inf]
    parts = [integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-12, limit=200)[0] for lo, hi in zip(edges, edges[1:])]
    return math.fsum(parts)


def negative_frequency_mass(p: LineshapeParams) -> float:
    """Weight of the lineshape on w < 0.

    This is what the half-line normalisation over [0, inf) leaves out.
    """
    return 0.5 - math.atan(p.omega0 / p.delta) / math.pi


def decay_rate(gamma_n: float, h_1: float, p: LineshapeParams) -> float:
    """gamma_{-1} = (pi/2) gamma_N^2 H_1^2 g^2(omega0), with g^2 = f."""
    return 0.5 * math.pi * (gamma_n * h_1) ** 2 * lorentzian(p.omega0, p)


def rate_w(gamma_n: float, h_1: float, f_value: float, m: int, spin: int = 1) -> float:
    """Transition rate m -> m+1 for total spin ``spin`` (the triplet, I = 1)."""
    if m not in range(-spin, spin):
        raise DomainError(f"projection m must be in [-{spin}, {spin - 1}], got {m}")
    return 0.5 * math.pi * (gamma_n * h_1) ** 2 * (spin + m + 1) * (spin - m) * f_value


def principal_value(func, pole: float, scale: float, fractions=PV_EXCISION_FRACTIONS) -> float:
    """PV of the integral of ``func(w) / (w - pole)`` over the real line.

    The integral outside a symmetric window ``[pole - eta, pole + eta]`` is
    folded into one integrand over ``u = |w - pole| > eta``.  Its residual
    dependence on eta is odd (eta, eta**3, ...), so three window sizes give a
    Richardson estimate of the eta -> 0 limit.
    """
    # u is measured in units of ``scale``; the 1/u kernel is scale free
    folded = lambda u: (func(pole + scale * u) - func(pole - scale * u)) / u
    etas = list(fractions)
    # error floor for integrals that cancel to ~0 (odd integrand about the pole)
    floor = 1e-10 * max(abs(func(pole)), abs(func(pole + scale)), abs(func(pole - scale)))
    values = []
    for eta in etas:
        parts = []
        for lo, hi in ((eta, 1.0), (1.0, 100.0), (100.0, np.inf)):
            val, err, *rest = integrate.quad(
                folded, lo, hi, epsabs=0, epsrel=1e-12, limit=400, full_output=1
            )
            if len(rest) > 1 and err > max(1e-8 * abs(val), floor):
                raise NumericError(
                    "principal-value quadrature did not converge",
                    eta=eta * scale, interval=(lo * scale, hi * scale), value=val, abserr=err,
                )
            parts.append(val)
        values.append(math.fsum(parts))
    design = np.array([[1.0, e, e**3] for e in etas])
    return float(np.linalg.solve(design, np.array(values))[0])


def renormalized_energy(e3: float, gamma_n: float, h_1: float, p: LineshapeParams, e2=None) -> float:
    """Energy of the spin -1 level shifted by the principal-value self-energy.

    ``e2`` defaults to ``e3 - p.omega0``, i.e. a lineshape centred exactly on
    the E3 -> E2 transition.
    """
    if e2 is None:
        e2 = e3 - p.omega0
    kappa2 = (gamma_n * h_1) ** 2
    if kappa2 == 0:
        return e3
    pv = principal_value(lambda w: lorentzian(w, p), e3 - e2, p.delta)
    return e3 - 0.5 * kappa2 * pv


def rates(e3: float, gamma_n: float, h_1: float, p: LineshapeParams) -> RateReport:
    gamma = decay_rate(gamma_n, h_1, p)
    return RateReport(
        gamma_minus1=gamma,
        w_rate=rate_w(gamma_n, h_1, lorentzian(p.omega0, p), m=-1),
        e3_renormalized=renormalized_energy(e3, gamma_n, h_1, p),
    )
