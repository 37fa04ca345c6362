"""Survival element <-1|rho(t)|-1> of the upper (spin -1) level.

The element is the Markovian decay exp(-2 gamma t), dressed by a second-order
constant, plus a memory term.  After rotating the integration contour onto the
negative imaginary axis the memory term is a pair of Laplace-type integrals
A(t), B(t) plus the residue of the Lorentzian pole at omega0 - i delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_laguerre

from .errors import DomainError, NumericError
from .lineshape import LineshapeParams, decay_rate
from .spin_model import FieldConfig, Nucleus, SpinGeometry, spectrum

LAGUERRE_NODES = (16, 32, 64, 128, 256)  # roots_laguerre returns NaN beyond ~300
KERNEL_RTOL = 1e-8
FALLBACK_XI_MAX = 50.0
T_MIN_FACTOR = 1e-3  # t_min = T_MIN_FACTOR / omega0


@dataclass(frozen=True)
class EvolutionParams:
    gamma_minus1: float  # s^-1
    kappa: float  # gamma_N * H_1, rad/s
    omega0: float  # Delta E_23, rad/s
    delta: float  # rad/s

    def __post_init__(self):
        if not (self.omega0 > 0 and self.delta > 0):
            raise DomainError("omega0 and delta must be positive")
        if self.gamma_minus1 < 0 or self.kappa < 0:
            raise DomainError("gamma_minus1 and kappa must be non-negative")

    @classmethod
    def from_system(cls, nucleus: Nucleus, geometry: SpinGeometry, fields: FieldConfig, delta: float):
        """Resonant driving of the E3 -> E2 line with a Lorentzian of half-width ``delta``."""
        spec = spectrum(nucleus, geometry, fields)
        line = LineshapeParams(spec.de23, delta)
        return cls(
            gamma_minus1=decay_rate(spec.gamma_n, fields.h_1, line),
            kappa=spec.gamma_n * fields.h_1,
            omega0=spec.de23,
            delta=delta,
        )

    @property
    def t_min(self):
        return T_MIN_FACTOR / self.omega0


@dataclass(frozen=True)
class KernelEvaluation:
    t: float
    a_val: float  # omega0 * t
    b_val: float  # (omega0 / delta)**2
    d_min: float  # smallest D(xi) over the nodes used
    nodes: int
    method: str  # "laguerre" or "panels"


@dataclass(frozen=True)
class EvolutionSeries:
    times: np.ndarray
    rho_complete: np.ndarray
    rho_markov: np.ndarray


def markov_term(t, gamma_minus1):
    if np.ndim(t):
        return np.exp(-2.0 * gamma_minus1 * np.asarray(t, dtype=float))
    return math.exp(-2.0 * gamma_minus1 * t)


def second_order_constant(omega0: float, delta: float) -> float:
    """Closed form of  int_0^inf f(w) / (w - omega0 - i0)^2 dw + c.c."""
    if omega0 <= 0 or delta <= 0:
        raise DomainError("omega0 and delta must be positive")
    num = 2 * delta + math.pi * omega0 + 2 * omega0 * math.atan(omega0 / delta)
    return -num / (math.pi * delta**2 * omega0)


def kernel_denominator(xi, a, b):
    x2 = xi * xi
    return (
        a**8 * (1 + b) ** 2
        + a**6 * (2 + b * (2 + 4 * b)) * x2
        + a**4 * (1 + b * (-2 + 6 * b)) * x2**2
        + a**2 * b * (-2 + 4 * b) * x2**3
        + b * b * x2**4
    )


def kernel_integrands(xi, a, b):
    """Rational factors R_A, R_B multiplying exp(-xi), and D(xi)."""
    xi = np.asarray(xi, dtype=float)
    x2 = xi * xi
    d = kernel_denominator(xi, a, b)
    ra = a**4 * (a**4 * (1 + b) - a**2 * (1 + 6 * b) * x2 + b * x2 * x2) / d
    rb = (-(a**7) * (2 + 4 * b) * xi + 4 * a**5 * b * xi * x2) / d
    return ra, rb, d


@lru_cache(maxsize=None)
def _laguerre(n):
    x, w = roots_laguerre(n)
    keep = w > 0  # trailing weights underflow for large n
    return x[keep], w[keep]


@lru_cache(maxsize=None)
def _legendre(n):
    return leggauss(n)


def _laguerre_AB(a, b):
    prev = None
    d_min = math.inf
    for n in LAGUERRE_NODES:
        x, w = _laguerre(n)
        ra, rb, d = kernel_integrands(x, a, b)
        d_min = min(d_min, float(d.min()))
        est = (float(w @ ra), float(w @ rb))
        if prev is not None:
            scale = max(abs(est[0]), abs(est[1]))
            resid = max(abs(est[0] - prev[0]), abs(est[1] - prev[1]))
            if resid <= KERNEL_RTOL * scale:
                return est, d_min, n, resid
        prev = est
    return None, d_min, n, resid


def _panel_AB(a, b, xi_max=FALLBACK_XI_MAX, order=16, max_panels=4096):
    """Composite Gauss-Legendre on panels graded towards xi = 0.

    The rational factor changes on the scale of ``a``, so panel edges are
    geometric from ``1e-3 * min(a, 1)`` up to ``xi_max``; the panel count is
    doubled until two successive estimates agree.
    """
    gx, gw = _legendre(order)
    prev = None
    d_min = math.inf
    m = 32
    while m <= max_panels:
        edges = np.concatenate(([0.0], np.geomspace(1e-3 * min(a, 1.0), xi_max, m)))
        lo, hi = edges[:-1, None], edges[1:, None]
        half = 0.5 * (hi - lo)
        xi = (lo + half * (gx + 1.0)).ravel()
        wt = (half * gw).ravel()
        ra, rb, d = kernel_integrands(xi, a, b)
        d_min = min(d_min, float(d.min()))
        ew = wt * np.exp(-xi)
        est = (math.fsum(ew * ra), math.fsum(ew * rb))
        if prev is not None:
            scale = max(abs(est[0]), abs(est[1]))
            resid = max(abs(est[0] - prev[0]), abs(est[1] - prev[1]))
            if resid <= KERNEL_RTOL * scale:
                return est, d_min, m * order, resid
        prev = est
        m *= 2
    raise NumericError("kernel quadrature did not converge", a=a, b=b, nodes=m // 2 * order, residual=resid)


def kernel_AB(t: float, omega0: float, delta: float):
    """A(t), B(t) and diagnostics.

    Gauss-Laguerre absorbs the exp(-xi) weight; when node doubling stalls
    (small ``a = omega0 t``) the panel rule on [0, 50] takes over.
    """
    if not t > 0:
        raise DomainError(f"kernel_AB needs t > 0, got {t}")
    a = omega0 * t
    b = (omega0 / delta) ** 2
    est, d_min, nodes, resid = _laguerre_AB(a, b)
    method = "laguerre"
    if est is None:
        est, d_min2, nodes, resid = _panel_AB(a, b)
        d_min = min(d_min, d_min2)
        method = "panels"
    if not d_min > 0:
        raise NumericError("kernel denominator D(xi) is not positive", a=a, b=b, d_min=d_min)
    return est[0], est[1], KernelEvaluation(t, a, b, d_min, nodes, method)


def memory_integral(t: float, omega0: float, delta: float) -> float:
    """Closed form of  int_0^inf f(w) exp(-i(w-omega0)t) / (w - omega0 - i0)^2 dw + c.c.

    Contour part from A, B plus the Lorentzian residue, -2 exp(-delta t) / delta^2.
    """
    A, B, _ = kernel_AB(t, omega0, delta)
    a = omega0 * t
    contour = 2.0 / (delta * math.pi * omega0**2 * t) * (A * math.sin(a) + B * math.cos(a))
    return contour - 2.0 * math.exp(-delta * t) / delta**2


def _assemble(t, p: EvolutionParams):
    const = second_order_constant(p.omega0, p.delta)
    if not const < 0:
        raise NumericError("second-order constant must be negative", value=const)
    half_k2 = 0.5 * p.kappa**2
    return math.exp(-2 * p.gamma_minus1 * t) * (1.0 - half_k2 * const) + half_k2 * memory_integral(t, p.omega0, p.delta)


def rho_element(t: float, p: EvolutionParams) -> float:
    """<-1|rho(t)|-1> for an initial state fully in |-1>.

    Below ``t_min = 1e-3 / omega0`` the 1/t prefactor is not evaluated; the
    value is bridged linearly from the exact t = 0 limit (1) to rho(t_min).
    """
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if p.kappa == 0:
        return math.exp(-2 * p.gamma_minus1 * t)
    t_min = p.t_min
    if t >= t_min:
        return _assemble(t, p)
    return 1.0 + (_assemble(t_min, p) - 1.0) * (t / t_min)


def evolve_series(grid, p: EvolutionParams) -> EvolutionSeries:
    times = np.asarray(grid, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if times[0] < 0 or np.any(np.diff(times) <= 0):
        raise DomainError("grid must be strictly increasing and start at t >= 0")
    complete = np.array([rho_element(float(t), p) for t in times])
    return EvolutionSeries(times, complete, markov_term(times, p.gamma_minus1))
