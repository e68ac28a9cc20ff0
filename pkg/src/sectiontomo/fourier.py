"""Fourier transforms of powers of the radial function, via section derivatives.

No n-dimensional transform is ever computed. The transform of
``rho_K^(n-q-1) = ||x||_K^(-n+q+1)`` at a unit ``xi`` is recovered from
the one-dimensional fractional derivative of ``A_xi`` at zero:

* ``thm2``  ``pi (n-q-1) / cos(q pi / 2) * A^(q)(0)`` for non-integer ``q``;
* ``thm1a`` ``(-1)^(k/2) pi (n-k-1) A^(k)(0)`` at even integers ``k``;
* ``thm1b`` ``c_k * int_0^inf z^(-k-1) (A - even Taylor terms) dz`` at odd
  ``k``, with ``c_k = (-1)^((k+1)/2) 2 (n-1-k) k!``.

Transforms use the convention ``f^(xi) = int f(x) exp(-i <x, xi>) dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, InvalidArgumentError, PoleError, RedirectError
from .fracderiv import INTEGER_WINDOW, fractional_section_derivative, truncated_moment
from .geometry import Ball, Direction, StarBody, as_direction
from .numerics import DEFAULT_CONFIG, QuadratureConfig, gamma_real, integrate_adaptive
from .sections import SectionFunction, section_derivative_at_zero, section_function

__all__ = [
    "FourierValue",
    "ft_abs_power",
    "homogeneous_power_ft",
    "ball_power_ft",
    "gaussian_slab_check",
    "lemma5_check",
    "radial_power_ft",
    "radial_power_ft_odd",
    "odd_constant",
    "slice_relation_check",
    "ball_indicator_ft",
    "fourier_rows",
]

ODD_WINDOW = INTEGER_WINDOW


@dataclass(frozen=True)
class FourierValue:
    """``(rho_K^exponent)^(xi)`` with ``exponent = n - q - 1``."""

    body: StarBody
    xi: Direction
    exponent: float
    q: float
    value: float
    method: str


def ft_abs_power(q: float, t: float) -> float:
    """One-dimensional transform of ``|z|^q``: ``-2 Gamma(1+q) sin(q pi / 2) |t|^(-q-1)``."""
    if q <= -1:
        raise DomainError("need q > -1")
    if abs(q - round(q)) < 1e-12:
        raise DomainError(f"|z|^q transform is not a function for integer q={q}", pole=int(round(q)))
    if t == 0:
        raise InvalidArgumentError("t must be non-zero")
    return -2.0 * gamma_real(1 + q) * math.sin(q * math.pi / 2) * abs(t) ** (-q - 1)


def homogeneous_power_ft(n: int, lam: float) -> float:
    """Transform of ``|x|^(-lam)`` on ``R^n`` at a unit vector.

    ``2^(n-lam) pi^(n/2) Gamma((n-lam)/2) / Gamma(lam/2)``, continued in
    ``lam`` (it vanishes where ``lam/2`` is a non-positive integer).
    """
    return 2.0 ** (n - lam) * math.pi ** (n / 2) * special.gamma((n - lam) / 2) * special.rgamma(lam / 2)


def ball_power_ft(n: int, q: float, radius: float = 1.0) -> float:
    """``(rho^(n-q-1))^`` for the ball of ``radius``, independent of section functions."""
    lam = n - q - 1
    return radius**lam * homogeneous_power_ft(n, lam)


def gaussian_slab_check(n: int, q: float, xi=None, cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Both sides of the slab identity for the standard Gaussian, ``-1 < q < 0``.

    ``lhs = int_{R^n} |<xi, x>|^(-q-1) exp(-|x|^2/2) dx`` in closed form,
    ``rhs = -1 / (2 Gamma(1+q) sin(q pi/2)) int |t|^q (2 pi)^(n/2) exp(-t^2/2) dt``
    by quadrature.
    """
    if not -1 < q < 0:
        raise DomainError(f"need -1 < q < 0, got {q}")
    if xi is not None:
        as_direction(xi, n)
    lhs = (2 * math.pi) ** ((n - 1) / 2) * 2.0 ** (-q / 2) * gamma_real(-q / 2)
    g = lambda t: math.exp(-t * t / 2)
    near, _ = integrate_adaptive(g, 0.0, 1.0, cfg, left_power=q)
    far, _ = integrate_adaptive(lambda t: t**q * g(t), 1.0, 40.0, cfg)
    one_d = 2.0 * (near + far)
    rhs = -1.0 / (2 * gamma_real(1 + q) * math.sin(q * math.pi / 2)) * (2 * math.pi) ** (n / 2) * one_d
    return lhs, rhs


lemma5_check = gaussian_slab_check


def odd_constant(n: int, k: int) -> float:
    """``c_k = (-1)^((k+1)/2) 2 (n-1-k) k!`` for odd ``k``."""
    return (-1) ** ((k + 1) // 2) * 2 * (n - 1 - k) * math.factorial(k)


def _section(body, xi, cfg, sf):
    if sf is not None:
        return sf
    return section_function(body, xi, cfg)


def radial_power_ft(
    body: StarBody,
    q: float,
    xi,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    sf: SectionFunction | None = None,
    branch: str = "strip",
    method: str = "auto",
) -> FourierValue:
    """``(||x||_K^(-n+q+1))^(xi)`` for real ``q > -1``.

    Even integer ``q`` (within ``1e-6``) uses the classical derivative
    (``thm1a``); odd integers raise :class:`RedirectError` naming ``thm1b``.
    ``method="thm2"`` forces the fractional formula, including its
    integer-limit at even ``q``, for cross-checking.
    """
    if method not in ("auto", "thm2"):
        raise InvalidArgumentError(f"method must be 'auto' or 'thm2', got {method!r}")
    n = body.dimension
    xi = as_direction(xi, n)
    q = float(q)
    if q <= -1:
        raise DomainError(f"need q > -1, got {q}")
    if abs(q - (n - 1)) < ODD_WINDOW:
        raise PoleError(f"q = n - 1 = {n - 1} is a pole of the transform", pole=n - 1)
    k = round(q)
    near_int = k >= 0 and abs(q - k) < ODD_WINDOW
    if near_int and k % 2:
        raise RedirectError(f"q = {q} is within {ODD_WINDOW} of the odd integer {k}; use thm1b", "thm1b")
    sf = _section(body, xi, cfg, sf)
    if near_int and method == "auto":
        value = (-1) ** (k // 2) * math.pi * (n - k - 1) * section_derivative_at_zero(sf, k)
        return FourierValue(body, sf.xi, n - q - 1, q, value, "thm1a")
    frac = fractional_section_derivative(sf, q, cfg, branch=branch)
    value = math.pi * (n - q - 1) / math.cos(q * math.pi / 2) * frac.value
    return FourierValue(body, sf.xi, n - q - 1, q, value, "thm2")


def radial_power_ft_odd(
    body: StarBody,
    k: int,
    xi,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    sf: SectionFunction | None = None,
) -> FourierValue:
    """``(rho_K^(n-k-1))^(xi)`` for odd ``k`` from the subtracted moment of ``A_xi``."""
    n = body.dimension
    if k != int(k) or k < 1 or k % 2 == 0:
        raise InvalidArgumentError(f"k must be a positive odd integer, got {k}")
    k = int(k)
    if k == n - 1:
        raise PoleError(f"k = n - 1 = {k} is a pole of the transform", pole=k)
    xi = as_direction(xi, n)
    sf = _section(body, xi, cfg, sf)
    moment, _ = truncated_moment(sf, k, k + 1, cfg)
    return FourierValue(body, sf.xi, n - k - 1, float(k), odd_constant(n, k) * moment, "thm1b")


def ball_indicator_ft(n: int, t: float) -> float:
    """Transform of the unit-ball indicator in ``R^n`` at ``|xi| = |t|``."""
    t = abs(t)
    if t == 0:
        return math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    if n == 3:
        return 4 * math.pi * (math.sin(t) - t * math.cos(t)) / t**3
    return (2 * math.pi) ** (n / 2) * t ** (-n / 2) * special.jv(n / 2, t)


def slice_relation_check(n: int = 3, t: float = math.pi, cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """One-dimensional transform of ``A_xi`` for the unit ball versus the n-D transform of its indicator.

    ``lhs = int A(z) exp(-i t z) dz = 2 int_0^1 A(z) cos(t z) dz`` by
    quadrature; ``rhs`` is the closed form (``4 pi (sin t - t cos t)/t^3``
    in ``R^3``). At ``t = 0`` both equal the volume of the ball.
    """
    sf = section_function(Ball(n), Direction.axis(n, n - 1), cfg)
    if t == 0:
        lhs = 2 * integrate_adaptive(lambda z: float(sf(z)), 0.0, sf.support_end, cfg)[0]
    else:
        lhs = 2 * integrate_adaptive(lambda z: float(sf(z)) * math.cos(t * z), 0.0, sf.support_end, cfg)[0]
    return lhs, ball_indicator_ft(n, t)


def fourier_rows(values, oracle: bool = True) -> list[tuple]:
    """Rows ``(q, lambda, method, value, oracle, rel_err)``; oracle only for balls."""
    rows = []
    for v in values:
        ref = rel = ""
        if oracle and isinstance(v.body, Ball):
            ref = ball_power_ft(v.body.dimension, v.q, v.body.radius)
            rel = abs(v.value - ref) / abs(ref) if ref != 0 else abs(v.value)
        rows.append((v.q, v.exponent, v.method, v.value, ref, rel))
    return rows
