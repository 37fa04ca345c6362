import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twospin.errors import DomainError
from twospin.oracle import principal_value_reference
from twospin.lineshape import (
    LineshapeParams,
    decay_rate,
    lorentzian,
    lorentzian_norm,
    negative_frequency_mass,
    principal_value,
    rate_w,
    rates,
    renormalized_energy,
)
from twospin.spin_model import HYDROGEN_1, gyromagnetic_ratio

G_H = gyromagnetic_ratio(HYDROGEN_1)
W0 = 179071638.50009575


def test_params_validation():
    with pytest.raises(DomainError):
        LineshapeParams(1.0, 0.0)
    with pytest.raises(DomainError):
        LineshapeParams(float("nan"), 1.0)
    assert LineshapeParams.from_full_width(5.0, 2e6).delta == 1e6


def test_peak_and_half_maximum():
    p = LineshapeParams(W0, 1e6)
    peak = lorentzian(W0, p)
    assert peak == pytest.approx(1 / (math.pi * 1e6), rel=1e-15)
    assert lorentzian(W0 + 1e6, p) == pytest.approx(0.5 * peak, rel=1e-14)
    assert lorentzian(W0 - 3e6, p) == pytest.approx(lorentzian(W0 + 3e6, p), rel=1e-12)


def test_vectorised():
    p = LineshapeParams(0.0, 2.0)
    out = lorentzian([0.0, 2.0, -2.0], p)
    assert out.shape == (3,)
    assert out[1] == out[2]


@pytest.mark.parametrize("w0,delta", [(W0, 1e6), (61685831.0, 1e6), (0.0, 1.0), (3.0, 0.01)])
def test_norm(w0, delta):
    assert lorentzian_norm(LineshapeParams(w0, delta)) == pytest.approx(1.0, abs=1e-8)


def test_negative_frequency_mass():
    assert negative_frequency_mass(LineshapeParams(0.0, 1.0)) == pytest.approx(0.5)
    # ~ delta / (pi omega0) far from the origin
    assert negative_frequency_mass(LineshapeParams(179.0, 1.0)) == pytest.approx(1 / (179 * math.pi), rel=1e-4)


def test_decay_rate_figure_values():
    p = LineshapeParams(W0, 1e6)
    assert decay_rate(G_H, 25.0, p) == pytest.approx(2.236e5, rel=1e-3)
    assert decay_rate(G_H, 37.0, p) == pytest.approx(4.898e5, rel=1e-3)
    assert decay_rate(G_H, 0.0, p) == 0.0


@given(st.floats(1e2, 1e5), st.floats(0.1, 500.0), st.floats(1e3, 1e8), st.floats(1e7, 1e9))
def test_rate_identity_and_scaling(gamma_n, h_1, delta, w0):
    p = LineshapeParams(w0, delta)
    g = decay_rate(gamma_n, h_1, p)
    assert rate_w(gamma_n, h_1, lorentzian(w0, p), m=-1) == pytest.approx(2 * g, rel=1e-12)
    # H_1^2 / delta scaling at resonance
    assert decay_rate(gamma_n, 2 * h_1, LineshapeParams(w0, 2 * delta)) == pytest.approx(2 * g, rel=1e-12)


def test_rate_w_other_projection():
    # m = 0 -> 1 carries the same (I+m+1)(I-m) = 2 factor
    assert rate_w(1.0, 1.0, 1.0, m=0) == rate_w(1.0, 1.0, 1.0, m=-1)


@pytest.mark.parametrize("m", [1, -2, 3])
def test_rate_w_projection_out_of_range(m):
    with pytest.raises(DomainError):
        rate_w(1.0, 1.0, 1.0, m=m)


def test_principal_value_odd_integrand_vanishes():
    p = LineshapeParams(10.0, 1.0)
    assert abs(principal_value(lambda w: lorentzian(w, p), 10.0, 1.0)) < 1e-10


@pytest.mark.parametrize("c", [0.3, 1.0, 4.0, -2.0])
def test_principal_value_offset_lorentzian(c):
    # PV int f(w) / (w - pole) dw = c / (c^2 + delta^2) with c = centre - pole
    p = LineshapeParams(c, 1.0)
    # three excision radii leave an eta**5 residual of a few 1e-7
    assert principal_value(lambda w: lorentzian(w, p), 0.0, 1.0) == pytest.approx(c / (c * c + 1.0), rel=1e-6)


@pytest.mark.parametrize("offset", [0.5, 1.0, 3.0])
def test_principal_value_matches_cauchy_rule(offset):
    p = LineshapeParams(W0, 1e6)
    f = lambda w: lorentzian(w, p)
    pole = W0 - offset * 1e6
    assert principal_value(f, pole, 1e6) == pytest.approx(principal_value_reference(f, pole, 1e6), rel=1e-6)


def test_renormalized_energy_centred_is_unshifted():
    p = LineshapeParams(W0, 1e6)
    e3 = 2.675e8
    kappa2 = (G_H * 25.0) ** 2
    shift = renormalized_energy(e3, G_H, 25.0, p) - e3
    assert abs(shift) <= 1e-3 * kappa2 / p.delta


def test_renormalized_energy_shifted_centre():
    p = LineshapeParams(W0, 1e6)
    e3 = 2.675e8
    e2 = e3 - (W0 - 1e6)  # transition sits one half-width below the line centre
    kappa2 = (G_H * 25.0) ** 2
    shift = renormalized_energy(e3, G_H, 25.0, p, e2=e2) - e3
    assert shift == pytest.approx(-kappa2 / (4 * p.delta), rel=1e-6)


def test_renormalized_energy_without_drive():
    assert renormalized_energy(1.0, G_H, 0.0, LineshapeParams(W0, 1e6)) == 1.0


def test_rates_report():
    p = LineshapeParams(W0, 1e6)
    rep = rates(2.675e8, G_H, 25.0, p)
    assert rep.w_rate == pytest.approx(2 * rep.gamma_minus1, rel=1e-12)
    assert rep.e3_renormalized == pytest.approx(2.675e8, rel=1e-9)
