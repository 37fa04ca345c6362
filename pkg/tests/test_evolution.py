import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twospin.errors import DomainError
from twospin.evolution import (
    EvolutionParams,
    evolve_series,
    kernel_AB,
    kernel_denominator,
    kernel_integrands,
    markov_term,
    memory_integral,
    rho_element,
    second_order_constant,
)
from twospin.oracle import kernel_reference
from twospin.spin_model import CARBON_13, HYDROGEN_1, FieldConfig, SpinGeometry

GEOM = SpinGeometry(2e-9, math.radians(30.0))


def params(nucleus=HYDROGEN_1, h_1=25.0):
    return EvolutionParams.from_system(nucleus, GEOM, FieldConfig(1e4, h_1), 1e6)


def test_params_validation():
    with pytest.raises(DomainError):
        EvolutionParams(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        EvolutionParams(-1.0, 1.0, 1.0, 1.0)


def test_params_from_system():
    p = params()
    assert p.omega0 == pytest.approx(1.7907163850e8, rel=1e-9)
    assert p.kappa == pytest.approx(25.0 * 26750.8, rel=1e-5)
    # gamma = kappa^2 / (2 delta) at resonance
    assert p.gamma_minus1 == pytest.approx(p.kappa**2 / 2e6, rel=1e-12)
    assert p.t_min == pytest.approx(1e-3 / p.omega0)


def test_markov_term():
    assert markov_term(0.0, 5.0) == 1.0
    assert markov_term(1.0, 0.5) == pytest.approx(math.exp(-1.0))
    out = markov_term(np.array([0.0, 1.0]), 0.5)
    np.testing.assert_allclose(out, [1.0, math.exp(-1.0)])


def test_second_order_constant():
    assert second_order_constant(1.0, 1.0) == pytest.approx(-(2 + 1.5 * math.pi) / math.pi, rel=1e-14)
    # omega0 >> delta: -2 / delta^2
    assert second_order_constant(1e12, 1.0) == pytest.approx(-2.0, rel=1e-9)
    # 1/delta^2 scaling at fixed ratio
    assert second_order_constant(300.0, 10.0) == pytest.approx(second_order_constant(30.0, 1.0) / 100, rel=1e-14)
    with pytest.raises(DomainError):
        second_order_constant(0.0, 1.0)


@given(st.floats(1e-3, 1e3), st.floats(1e-2, 1e5))
def test_kernel_integrands_at_origin(a, b):
    ra, rb, d = kernel_integrands(np.array([0.0]), a, b)
    assert ra[0] == pytest.approx(1 / (1 + b), rel=1e-12)
    assert rb[0] == 0.0
    assert d[0] > 0


@given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e5), st.floats(0.0, 50.0))
def test_kernel_denominator_is_modulus_squared(a, b, xi):
    # D = |(a + i xi)^2 (a^2 (1+b) - b xi^2 + 2 i a b xi)|^2
    z = complex(a, xi) ** 2 * complex(a * a * (1 + b) - b * xi * xi, 2 * a * b * xi)
    assert kernel_denominator(xi, a, b) == pytest.approx(abs(z) ** 2, rel=1e-9)


@pytest.mark.parametrize("a,b", [(1.0, 1.0), (5.0, 100.0), (0.05, 3.2e4), (40.0, 3805.0), (2e3, 3.2e4)])
def test_kernel_matches_reference(a, b):
    omega0 = math.sqrt(b)
    t = a / omega0
    A, B, info = kernel_AB(t, omega0, 1.0)
    A_ref, B_ref = kernel_reference(a, b)
    scale = max(abs(A_ref), abs(B_ref))
    assert abs(A - A_ref) <= 1e-7 * scale
    assert abs(B - B_ref) <= 1e-7 * scale
    assert info.d_min > 0
    assert info.a_val == pytest.approx(a)


def test_kernel_method_switch():
    _, _, fast = kernel_AB(10.0, 1.0, 1.0)
    _, _, slow = kernel_AB(1e-3, 1.0, 1.0)
    assert fast.method == "laguerre"
    assert slow.method == "panels"


def test_kernel_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        kernel_AB(0.0, 1.0, 1.0)


def test_memory_integral_far_from_origin_is_residue_dominated():
    # the contour part is O((delta/omega0)^3) relative to the residue
    t, w0, d = 2e-6, 1.79e8, 1e6
    assert memory_integral(t, w0, d) == pytest.approx(-2 * math.exp(-d * t) / d**2, rel=1e-5)


def test_rho_at_zero_and_without_drive():
    p = params()
    assert rho_element(0.0, p) == 1.0
    q = params(h_1=0.0)
    for t in (0.0, 1e-7, 1e-5):
        assert rho_element(t, q) == math.exp(-2 * q.gamma_minus1 * t)
    with pytest.raises(DomainError):
        rho_element(-1.0, p)


def test_bridge_is_continuous_at_t_min():
    p = params()
    below = rho_element(p.t_min * (1 - 1e-9), p)
    at = rho_element(p.t_min, p)
    assert below == pytest.approx(at, abs=1e-9)
    mid = rho_element(0.5 * p.t_min, p)
    assert mid == pytest.approx(0.5 * (1 + at), abs=1e-12)


@pytest.mark.parametrize("nucleus", [HYDROGEN_1, CARBON_13])
def test_zeno_region_slower_than_exponential(nucleus):
    p = params(nucleus, h_1=1.0)
    times = np.linspace(1e-9, 5e-6, 50)
    s = evolve_series(times, p)
    assert np.all(s.rho_complete >= s.rho_markov - 1e-6)
    assert np.all(s.rho_complete <= 1 + 1e-9)


# oracle (rho_reference) values at t_end = 5 / (2 gamma) for the 25 Oe and 37 Oe drives
@pytest.mark.parametrize(
    "h_1,t_end,expected",
    [(25.0, 1.11793407235252e-05, 0.009745274359437658), (37.0, 5.10378959255168e-06, 0.007388699760460077)],
)
def test_series_end_value_regression(h_1, t_end, expected):
    p = params(h_1=h_1)
    s = evolve_series(np.linspace(0.0, t_end, 5), p)
    assert s.rho_complete[0] == 1.0
    assert s.rho_complete[-1] == pytest.approx(expected, rel=1e-6)
    assert s.rho_markov[-1] == pytest.approx(math.exp(-5.0), rel=1e-12)


@pytest.mark.parametrize("grid", [[], [1.0, 0.5], [-1.0, 0.0], [0.0, 0.0], [[0.0, 1.0]]])
def test_series_rejects_bad_grids(grid):
    with pytest.raises(DomainError):
        evolve_series(grid, params())
