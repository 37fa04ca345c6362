"""Brute-force reference values for the integrals behind the evolution formula.

Two routes are used for the memory integral, and neither touches the closed
forms in :mod:`twospin.evolution`:

* real axis: the pole at ``omega0 + i eps`` is kept at finite eps, the
  integral over ``w in [0, inf)`` is done by adaptive quadrature for a ladder
  of eps values, and the ladder is extrapolated to eps = 0;
* rotated contour: the ray ``w = -i y`` plus the residue of the lower
  Lorentzian pole, integrated directly in complex form.

Everything is done in units of delta: ``s = (w - omega0) / delta``,
``tau = delta t``, ``eta = eps / delta``, ``w0 = omega0 / delta``.  The
integrals scale as ``1 / delta**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NumericError
from .evolution import EvolutionParams

NEAR_HALF_WIDTH = 50.0  # |s| beyond this (or 20 periods) goes to the Fourier-weighted tail rules


@dataclass(frozen=True)
class OracleConfig:
    # eps ladder as multiples of delta, strictly decreasing
    epsilon_ladder: tuple = (1e-2, 1e-3, 1e-4)
    abs_tol: float = 1e-16
    rel_tol: float = 1e-5  # required agreement between the two routes
    quad_rtol: float = 1e-13
    max_panels: int = 500

    def __post_init__(self):
        lad = self.epsilon_ladder
        if len(lad) < 2 or any(e <= 0 for e in lad) or any(x <= y for x, y in zip(lad, lad[1:])):
            raise DomainError(f"epsilon ladder must be positive and strictly decreasing: {lad}")
        if lad[0] >= 0.1:
            raise DomainError("epsilon ladder must stay well below delta")


DEFAULT = OracleConfig()


def _ell(s):
    return (1.0 / math.pi) / (1.0 + s * s)


def _dell(s):
    return -(2.0 / math.pi) * s / (1.0 + s * s) ** 2


def _quad(func, lo, hi, cfg, **kw):
    val, err, *rest = integrate.quad(
        func, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.quad_rtol, limit=cfg.max_panels, full_output=1, **kw
    )
    # a QUADPACK warning is tolerated when the reported error is still
    # negligible on the scale of the O(1) dimensionless integrals
    if len(rest) > 1 and err > 1e-11:
        raise NumericError("oracle quadrature did not converge", interval=(lo, hi), value=val, abserr=err)
    return val


def _breakpoints(lo, hi, eta, tau):
    pts = {lo, hi, 0.0}
    k = eta
    while k < hi or -k > lo:
        pts.update((k, -k))
        k *= 10.0
    if tau > 0:
        step = math.pi / tau
        pts.update(np.arange(math.ceil(lo / step), math.floor(hi / step) + 1) * step)
    return sorted(p for p in pts if lo <= p <= hi)


def regularized_integral(tau: float, w0: float, eta: float, cfg: OracleConfig = DEFAULT) -> float:
    """Dimensionless  2 Re int_{-w0}^{inf} l(s) e^{-i s tau} / (s - i eta)^2 ds  at finite eta.

    One integration by parts (exact for eta > 0) turns the double pole into a
    simple one; what is left is split into cos(s tau) and sin(s tau) parts
    with smooth amplitudes.  Near the pole the panels are cut at decades of
    eta and at the zeros of the oscillation; far out the Fourier-weighted
    QUADPACK rules take over.
    """
    if tau < 0:
        raise DomainError("tau must be >= 0")
    boundary = _ell(-w0) * complex(math.cos(w0 * tau), math.sin(w0 * tau)) / complex(-w0, -eta)
    e2 = eta * eta
    amp_c = lambda s: (s * _dell(s) + eta * tau * _ell(s)) / (s * s + e2)
    amp_s = lambda s: (eta * _dell(s) - s * tau * _ell(s)) / (s * s + e2)
    whole = lambda s: amp_c(s) * math.cos(s * tau) + amp_s(s) * math.sin(s * tau)

    # the Fourier tail rules need several periods inside the panel region
    half = NEAR_HALF_WIDTH if tau == 0 else max(NEAR_HALF_WIDTH, 20 * math.pi / tau)
    lo, hi = max(-w0, -half), half
    edges = _breakpoints(lo, hi, eta, tau)
    parts = [_quad(whole, a, b, cfg) for a, b in zip(edges[:-1], edges[1:])]
    if tau > 0:
        if -w0 < lo:
            parts.append(_quad(amp_c, -w0, lo, cfg, weight="cos", wvar=tau))
            parts.append(_quad(amp_s, -w0, lo, cfg, weight="sin", wvar=tau))
        for amp, kind in ((amp_c, "cos"), (amp_s, "sin")):
            val, err, *rest = integrate.quad(
                amp, hi, np.inf, weight=kind, wvar=tau, epsabs=cfg.abs_tol, limlst=200, full_output=1
            )
            if len(rest) > 1 and err > 1e-11:
                raise NumericError("oracle tail quadrature did not converge", kind=kind, value=val, abserr=err)
            parts.append(val)
    else:
        if -w0 < lo:
            parts.append(_quad(amp_c, -w0, lo, cfg))
        parts.append(_quad(amp_c, hi, np.inf, cfg))
    return 2.0 * (boundary.real + math.fsum(parts))


def epsilon_ladder_values(tau, w0, cfg: OracleConfig = DEFAULT):
    return [regularized_integral(tau, w0, eta, cfg) for eta in cfg.epsilon_ladder]


def _extrapolate(ladder, values):
    # polynomial through all ladder points, evaluated at eps = 0
    coeffs = np.polyfit(np.asarray(ladder), np.asarray(values), len(ladder) - 1)
    return float(coeffs[-1])


def real_axis_integral(t: float, omega0: float, delta: float, cfg: OracleConfig = DEFAULT) -> float:
    """eps -> 0 limit of the real-axis memory integral (t = 0 allowed)."""
    _check(omega0, delta)
    tau, w0 = delta * t, omega0 / delta
    vals = epsilon_ladder_values(tau, w0, cfg)
    return _extrapolate(cfg.epsilon_ladder, vals) / delta**2


def contour_part(t: float, omega0: float, delta: float, cfg: OracleConfig = DEFAULT) -> float:
    """Contribution of the rotated ray  w = -i y,  y in [0, inf),  with its c.c."""
    _check(omega0, delta)
    tau, w0 = delta * t, omega0 / delta

    def h(v):
        z = complex(w0, v)
        return 1.0 / (math.pi * (1.0 + z * z) * z * z)

    edges = [0.0, w0, 10 * w0, np.inf]
    re = math.fsum(_quad(lambda v: math.exp(-v * tau) * h(v).real, a, b, cfg) for a, b in zip(edges, edges[1:]))
    im = math.fsum(_quad(lambda v: math.exp(-v * tau) * h(v).imag, a, b, cfg) for a, b in zip(edges, edges[1:]))
    ray = -1j * complex(math.cos(w0 * tau), math.sin(w0 * tau)) * complex(re, im)
    return 2.0 * ray.real / delta**2


def contour_integral(t: float, omega0: float, delta: float, cfg: OracleConfig = DEFAULT) -> float:
    residue = -2.0 * math.exp(-delta * t) / delta**2
    return contour_part(t, omega0, delta, cfg) + residue


def time_integral(t: float, omega0: float, delta: float, cfg: OracleConfig = DEFAULT) -> float:
    """int_0^inf f(w) exp(-i(w-omega0)t) / (w - omega0 - i eps)^2 dw + c.c.,  eps -> 0.

    Both routes are evaluated; a relative mismatch above ``cfg.rel_tol``
    raises :class:`NumericError` carrying the two values.
    """
    if not t > 0:
        raise DomainError(f"time_integral needs t > 0, got {t}")
    real = real_axis_integral(t, omega0, delta, cfg)
    rotated = contour_integral(t, omega0, delta, cfg)
    if abs(real - rotated) > cfg.rel_tol * max(abs(real), abs(rotated)):
        raise NumericError("oracle routes disagree", t=t, real_axis=real, rotated=rotated)
    return real


def constant_integral(omega0: float, delta: float, cfg: OracleConfig = DEFAULT) -> float:
    """int_0^inf f(w) / (w - omega0 - i eps)^2 dw + c.c.,  eps -> 0."""
    return real_axis_integral(0.0, omega0, delta, cfg)


def kernel_reference(a: float, b: float, cfg: OracleConfig = DEFAULT):
    """A and B by adaptive quadrature on [0, 37] (exp(-37) < 1e-16).

    The integrand is built from its factored complex form
    ``a^4 / ((a + i xi)^2 (a^2 (1+b) - b xi^2 + 2 i a b xi))``, not from the
    expanded polynomials used by the closed-form evaluator.
    """
    if not (a > 0 and b > 0):
        raise DomainError("a and b must be positive")

    def kernel(x):
        z = complex(a, x)
        return a**4 / (z * z * complex(a * a * (1 + b) - b * x * x, 2 * a * b * x))

    xi_max = 37.0
    pts = sorted({p for p in (0.1 * a, 0.5 * a, a, 2 * a, 5 * a) if 0 < p < xi_max})
    edges = [0.0, *pts, xi_max]
    A = math.fsum(_quad(lambda x: math.exp(-x) * kernel(x).real, lo, hi, cfg) for lo, hi in zip(edges, edges[1:]))
    B = math.fsum(_quad(lambda x: math.exp(-x) * kernel(x).imag, lo, hi, cfg) for lo, hi in zip(edges, edges[1:]))
    return A, B


def principal_value_reference(func, pole: float, scale: float, cfg: OracleConfig = DEFAULT) -> float:
    """PV of  int func(w) / (w - pole) dw  over the real line, by QUADPACK's Cauchy rule.

    The Cauchy-weighted rule covers ``[pole - 50 scale, pole + 50 scale]``;
    the pole-free tails are ordinary quadratures.
    """
    if not scale > 0:
        raise DomainError("scale must be positive")
    g = lambda u: func(pole + scale * u)  # u in units of scale
    h = NEAR_HALF_WIDTH
    val, err, *rest = integrate.quad(g, -h, h, weight="cauchy", wvar=0.0, epsabs=0, epsrel=1e-12, limit=400, full_output=1)
    if len(rest) > 1 and err > 1e-9 * max(abs(val), abs(func(pole))):
        raise NumericError("oracle PV quadrature did not converge", value=val, abserr=err)
    tail = lambda u: g(u) / u
    left = integrate.quad(tail, -np.inf, -h, epsabs=0, epsrel=1e-12, limit=200)[0]
    right = integrate.quad(tail, h, np.inf, epsabs=0, epsrel=1e-12, limit=200)[0]
    return math.fsum((left, val, right))


def rho_reference(t: float, p: EvolutionParams, cfg: OracleConfig = DEFAULT) -> float:
    """<-1|rho(t)|-1> built from the oracle integrals alone."""
    if t < 0:
        raise DomainError("t must be >= 0")
    if p.kappa == 0:
        return math.exp(-2 * p.gamma_minus1 * t)
    half_k2 = 0.5 * p.kappa**2
    const = constant_integral(p.omega0, p.delta, cfg)
    memory = const if t == 0 else time_integral(t, p.omega0, p.delta, cfg)
    return math.exp(-2 * p.gamma_minus1 * t) * (1.0 - half_k2 * const) + half_k2 * memory


def _check(omega0, delta):
    if not (omega0 > 0 and delta > 0):
        raise DomainError("omega0 and delta must be positive")
