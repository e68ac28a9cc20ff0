from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sectiontomo.errors import InvalidArgumentError, UnsupportedError
from sectiontomo.geometry import Ball, Direction, Ellipsoid, RadialTable, RevolutionQuartic
from sectiontomo.numerics import QuadratureConfig, integrate_adaptive, unit_ball_volume
from sectiontomo.sections import (
    orthonormal_complement,
    section_derivative_at_zero,
    section_function,
    section_rows,
    section_scaling_check,
)

E5 = Direction.axis(5, 4)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_ball_section_closed_form(cfg):
    sf = section_function(Ball(5), E5, cfg)
    assert float(sf(0.0)) == pytest.approx(math.pi**2 / 2, rel=1e-15)
    assert float(sf(0.6)) == pytest.approx(math.pi**2 / 2 * 0.64**2, rel=1e-14)
    assert float(sf(1.2)) == 0.0
    assert sf.support_end == 1.0


def test_quartic_axis_section_value(cfg):
    sf = section_function(RevolutionQuartic(0.9), E5, cfg)
    assert float(sf(0.5)) == pytest.approx(math.pi**2 / 2 * (1 - 0.25 - 0.9 * 0.0625), rel=1e-14)
    assert float(sf(0.5)) == pytest.approx(3.4235190266288, rel=1e-12)
    assert float(sf(0.8)) == 0.0


@pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
def test_quartic_second_derivative_is_independent_of_eps(cfg, eps):
    sf = section_function(RevolutionQuartic(eps), E5, cfg)
    assert section_derivative_at_zero(sf, 2) == pytest.approx(-math.pi**2, rel=1e-15)
    assert section_derivative_at_zero(sf, 4) == pytest.approx(-12 * eps * math.pi**2, rel=1e-14)


def test_ball_second_derivative(cfg):
    sf = section_function(Ball(4), Direction.axis(4, 0), cfg)
    assert section_derivative_at_zero(sf, 2) == pytest.approx(-4 * math.pi, rel=1e-15)


def test_odd_derivatives_vanish(cfg):
    sf = section_function(Ellipsoid((1.0, 2.0, 3.0)), unit([1, 2, 3]), cfg)
    for k in (1, 3, 5):
        assert section_derivative_at_zero(sf, k) == 0.0
    with pytest.raises(InvalidArgumentError):
        section_derivative_at_zero(sf, -1)


def test_ellipsoid_support_end(cfg):
    a = np.array([1.0, 2.0, 3.0, 0.5])
    xi = unit([1, -1, 2, 3])
    sf = section_function(Ellipsoid(tuple(a)), xi, cfg)
    assert sf.support_end == pytest.approx(np.linalg.norm(a * xi), rel=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0.3, 3.0), min_size=3, max_size=5), st.integers(0, 10_000))
def test_section_integrates_to_volume(axes, seed):
    body = Ellipsoid(tuple(axes))
    n = body.dimension
    xi = unit(np.random.default_rng(seed).standard_normal(n))
    sf = section_function(body, xi)
    total = 2 * integrate_adaptive(lambda z: float(sf(z)), 0.0, sf.support_end, _cfg())[0]
    assert total == pytest.approx(unit_ball_volume(n) * math.prod(axes), rel=1e-9)


def _cfg():
    from sectiontomo.numerics import DEFAULT_CONFIG

    return DEFAULT_CONFIG


def test_section_is_even_in_z_and_xi(cfg):
    body = Ellipsoid((1.0, 2.0, 3.0))
    xi = unit([0.3, -0.5, 0.8])
    sf = section_function(body, xi, cfg)
    sg = section_function(body, -xi, cfg)
    for z in (0.0, 0.3, 1.1):
        assert float(sf(z)) == float(sf(-z)) == float(sg(z))


def test_numerical_engine_ball(cfg):
    sf = section_function(Ball(3), Direction.axis(3, 2), cfg, engine="numerical")
    assert sf.derivative_source == "finite-difference"
    assert float(sf(0.6)) == pytest.approx(math.pi * 0.64, rel=1e-9)


@pytest.mark.parametrize("axes", [(1.0, 2.0, 3.0), (1.0, 1.5, 0.7, 2.0), (1.2, 0.8, 1.0, 1.5, 2.0)])
def test_numerical_engine_matches_closed_form(cfg, axes):
    body = Ellipsoid(axes)
    xi = unit(np.arange(1, len(axes) + 1))
    exact = section_function(body, xi, cfg)
    num = section_function(body, xi, cfg, engine="numerical")
    assert num.support_end == pytest.approx(exact.support_end, rel=1e-10)
    for z in np.linspace(0, 0.95 * exact.support_end, 7):
        assert float(num(z)) == pytest.approx(float(exact(z)), rel=1e-6)
    assert section_derivative_at_zero(num, 2) == pytest.approx(section_derivative_at_zero(exact, 2), rel=1e-5)


def test_numerical_engine_converges_with_sphere_budget():
    body = Ellipsoid((1.2, 0.8, 1.0, 1.5, 2.0))
    xi = unit(np.arange(1, 6))
    exact = section_function(body, xi)
    num = section_function(body, xi, QuadratureConfig(sphere_nodes=20000), engine="numerical")
    for z in np.linspace(0, 0.95 * exact.support_end, 5):
        assert float(num(z)) == pytest.approx(float(exact(z)), rel=1e-9)


def test_numerical_quartic_on_axis_matches_closed_form(cfg):
    body = RevolutionQuartic(0.9)
    num = section_function(body, E5, cfg, engine="numerical")
    exact = section_function(body, E5, cfg)
    assert num.support_end == pytest.approx(exact.support_end, rel=1e-9)
    for z in (0.0, 0.3, 0.6):
        assert float(num(z)) == pytest.approx(float(exact(z)), rel=1e-7)


def test_numerical_section_off_axis_is_brunn_concave(cfg):
    sf = section_function(RevolutionQuartic(0.5), unit([1, 0, 0, 0, 1]), cfg)
    assert sf.derivative_source == "finite-difference"
    z = np.linspace(0, 0.9 * sf.support_end, 7)
    g = np.array([float(sf(t)) for t in z]) ** (1 / 4)
    assert np.all(np.diff(g, 2) <= 1e-9)


def test_engine_restrictions(cfg):
    with pytest.raises(UnsupportedError):
        section_function(RevolutionQuartic(0.5), unit([1, 0, 0, 0, 1]), cfg, engine="analytic")
    rng = np.random.default_rng(0)
    g = rng.standard_normal((50, 3))
    table = RadialTable(g, np.ones(50))
    with pytest.raises(UnsupportedError):
        section_function(table, [0, 0, 1], cfg)
    with pytest.raises(InvalidArgumentError):
        section_function(Ball(3), [0, 0, 1], cfg, engine="magic")


def test_scaling_for_non_unit_direction(cfg):
    assert section_scaling_check(Ball(3), [0, 0, 2], 0.0, cfg) == pytest.approx(math.pi / 2, rel=1e-15)
    assert section_scaling_check(Ball(3), [0, 0, 2], 1.0, cfg) == pytest.approx(0.5 * math.pi * 0.75, rel=1e-15)


def test_orthonormal_complement():
    xi = unit([1, 2, -2, 0.5])
    b = orthonormal_complement(xi)
    assert b.shape == (4, 3)
    assert np.allclose(b.T @ b, np.eye(3), atol=1e-14)
    assert np.allclose(xi @ b, 0, atol=1e-14)


def test_section_rows(cfg):
    rows = section_rows(section_function(Ball(3), [0, 0, 1], cfg), [0.0, 0.5])
    assert rows[0] == (0.0, pytest.approx(math.pi))
    assert rows[1][1] == pytest.approx(0.75 * math.pi)
