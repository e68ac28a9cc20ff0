from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sectiontomo.errors import DomainError, InvalidArgumentError, PoleError
from sectiontomo.fracderiv import (
    INTEGER_WINDOW,
    compact_polynomial,
    exponential,
    fractional_rows,
    fractional_section_derivative,
    gaussian,
    regularized_tplus,
    tplus_over_gamma_at_negative_integer,
    tplus_ratio,
    tplus_residue_check,
    truncated_pairing,
)
from sectiontomo.geometry import Ball, Direction, Ellipsoid, RevolutionQuartic
from sectiontomo.sections import section_derivative_at_zero, section_function

# <t_+^lam, phi> oracles: mpmath tanh-sinh quadrature of the subtracted integrand, 30 digits.
TPLUS_GAUSS_M15 = -2.0608970245899911515
TPLUS_BUMP_M25 = -64.0 / 15.0

# Unit-ball A^(q)(0): mpmath Beta continuation, confirmed by mpmath quadrature of the
# strip form with a series remainder near 0 (40 digits).
BALL_FRACTIONAL = {
    (3, -0.5): 2.8359261614488256437,
    (3, 0.5): 2.3632718012073547031,
    (4, -0.5): 3.540934102400736703,
    (4, 0.3): 3.9667971410998103114,
    (5, 1.5): -8.9093247949307325525,
    (5, 2.5): -22.273311987326831381,
    (6, 2.5): -32.023861503401819421,
}


def beta_oracle(n, q):
    kappa = math.pi ** ((n - 1) / 2) / math.gamma((n + 1) / 2)
    return kappa * math.sqrt(math.pi) * 2**q * math.gamma((n + 1) / 2) / (
        math.gamma((1 - q) / 2) * math.gamma((n + 1 - q) / 2)
    )


def ball_sf(n):
    return section_function(Ball(n), Direction.axis(n, n - 1))


def test_tplus_simple_pairing(cfg):
    assert regularized_tplus(1.0, exponential(), 0, cfg) == pytest.approx(1.0, rel=1e-12)
    assert regularized_tplus(-0.5, exponential(), 0, cfg) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_tplus_gaussian_strip(cfg):
    assert regularized_tplus(-1.5, gaussian(), 1, cfg) == pytest.approx(TPLUS_GAUSS_M15, rel=1e-10)
    assert truncated_pairing(-1.5, gaussian(), 1, cfg) == pytest.approx(TPLUS_GAUSS_M15, rel=1e-10)
    assert TPLUS_GAUSS_M15 == pytest.approx(2**-1.25 * math.gamma(-0.25), rel=1e-15)


def test_tplus_compact_bump(cfg):
    bump = compact_polynomial([1.0, 0.0, -2.0, 0.0, 1.0])
    assert regularized_tplus(-2.5, bump, 2, cfg) == pytest.approx(TPLUS_BUMP_M25, rel=1e-10)
    assert truncated_pairing(-2.5, bump, 2, cfg) == pytest.approx(TPLUS_BUMP_M25, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3.95, 0.9).filter(lambda x: abs(x - round(x)) > 0.05))
def test_tplus_independent_of_subtraction_order(lam):
    # The regularization with any m > -lam - 1 gives the same distribution.
    m0 = max(0, math.floor(-lam))
    a = regularized_tplus(lam, gaussian(), m0)
    b = regularized_tplus(lam, gaussian(), m0 + 1)
    c = regularized_tplus(lam, gaussian(), m0 + 2)
    assert b == pytest.approx(a, rel=1e-8, abs=1e-10)
    assert c == pytest.approx(a, rel=1e-8, abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.95, 3.0).filter(lambda x: abs(x - round(x)) > 0.05))
def test_tplus_ratio_on_exponential(lam):
    # <t_+^lam, e^-t> = Gamma(lam + 1), continued.
    assert tplus_ratio(lam, exponential()) == pytest.approx(1.0, rel=1e-9)


def test_tplus_below_strip_rejected(cfg):
    with pytest.raises(DomainError):
        regularized_tplus(-2.5, gaussian(), 1, cfg)
    with pytest.raises(PoleError):
        regularized_tplus(-2.0, gaussian(), 3, cfg)


@pytest.mark.parametrize("k, expected", [(1, 1.0), (2, 0.0), (3, -0.5)])
def test_residues_gaussian(cfg, k, expected):
    # Residue at -k is phi^(k-1)(0) / (k-1)!; the Gaussian has 1, 0, -1/2.
    assert tplus_residue_check(k, gaussian(), cfg) == pytest.approx(expected, abs=1e-5)


@pytest.mark.parametrize("k, expected", [(1, 1.0), (2, 0.0), (3, -1.0)])
def test_tplus_over_gamma_at_negative_integers(cfg, k, expected):
    assert tplus_over_gamma_at_negative_integer(k, gaussian(), cfg) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("n, q", sorted(BALL_FRACTIONAL))
def test_ball_fractional_derivative_oracle(cfg, n, q):
    value = fractional_section_derivative(ball_sf(n), q, cfg)
    assert value.value == pytest.approx(BALL_FRACTIONAL[(n, q)], rel=1e-9)
    assert value.value == pytest.approx(beta_oracle(n, q), rel=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("q", [-0.9, -0.5, -0.1, 0.25, 0.7, 1.3, 1.9, 2.4, 3.3])
def test_branches_agree(cfg, n, q):
    sf = ball_sf(n)
    strip = fractional_section_derivative(sf, q, cfg, branch="strip").value
    general = fractional_section_derivative(sf, q, cfg, branch="general").value
    deeper = fractional_section_derivative(sf, q, cfg, branch="general", m=math.floor(q) + 3).value
    assert general == pytest.approx(strip, rel=1e-9, abs=1e-11)
    assert deeper == pytest.approx(strip, rel=1e-9, abs=1e-11)


def test_integer_limit_branch(cfg):
    sf = ball_sf(3)
    v = fractional_section_derivative(sf, 2.0 + 0.1 * INTEGER_WINDOW, cfg)
    assert v.branch == "integer-limit"
    assert v.value == pytest.approx(-2 * math.pi, rel=1e-15)
    assert fractional_section_derivative(sf, 1.0, cfg).value == 0.0
    assert fractional_section_derivative(sf, 0.0, cfg).value == pytest.approx(math.pi)


@pytest.mark.parametrize("k", [0, 2])
@pytest.mark.parametrize("d", [1e-6, -1e-6, 2e-6, -2e-6])
def test_even_integer_consistency(cfg, k, d):
    # Offsets of 2e-6 are clear of the integer window and must go through quadrature.
    sf = section_function(Ellipsoid((1.0, 2.0, 1.5, 0.7)), np.array([1.0, 1.0, 1.0, 1.0]) / 2)
    classical = section_derivative_at_zero(sf, k)
    value = fractional_section_derivative(sf, k + d, cfg)
    if abs(d) > 1.5e-6:
        assert value.branch == "strip"
    assert abs(value.value - classical) <= 1e-5 * (1 + abs(classical))


def test_odd_taylor_terms_never_enter(cfg):
    sf = section_function(Ellipsoid((1.0, 2.0, 1.5)), np.array([2.0, 1.0, 2.0]) / 3)
    for q in (-0.5, 0.5, 1.5, 2.5):
        omitted = fractional_section_derivative(sf, q, cfg).value
        zeros = fractional_section_derivative(sf, q, cfg, include_odd=True).value
        assert omitted == zeros


@pytest.mark.parametrize("r", [0.5, 2.0])
@pytest.mark.parametrize("q", [-0.5, 0.3, 0.5, 1.5, 2.5])
def test_fractional_scaling(cfg, r, q):
    body = Ellipsoid((1.0, 2.0, 1.5))
    xi = np.array([1.0, -2.0, 2.0]) / 3
    base = fractional_section_derivative(section_function(body, xi), q, cfg).value
    scaled = fractional_section_derivative(section_function(Ellipsoid((r, 2 * r, 1.5 * r)), xi), q, cfg).value
    assert scaled == pytest.approx(r ** (3 - 1 - q) * base, rel=1e-8)


def test_domain_errors(cfg):
    with pytest.raises(DomainError):
        fractional_section_derivative(ball_sf(3), -1.0, cfg)
    with pytest.raises(InvalidArgumentError):
        fractional_section_derivative(ball_sf(3), 0.5, cfg, branch="sideways")
    with pytest.raises(InvalidArgumentError):
        tplus_residue_check(0, gaussian(), cfg)


def test_rows(cfg):
    rows = fractional_rows([fractional_section_derivative(ball_sf(3), -0.5, cfg)])
    assert rows[0][0] == -0.5 and rows[0][3] == "strip"


def test_fractional_scaling_through_numerical_engine(cfg):
    body = RevolutionQuartic(0.9)
    xi = np.array([1.0, 0.0, 0.0, 0.0, 1.0]) / math.sqrt(2)
    base = fractional_section_derivative(section_function(body, xi, cfg), 0.5, cfg)
    scaled = fractional_section_derivative(section_function(body.scaled(2.0), xi, cfg), 0.5, cfg)
    assert scaled.value == pytest.approx(2.0**3.5 * base.value, rel=1e-8)
