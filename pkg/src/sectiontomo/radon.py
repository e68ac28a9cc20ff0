"""Spherical Radon transform and the three-dimensional inversion formula."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgumentError, UnsupportedError
from .fourier import radial_power_ft_odd
from .geometry import Direction, StarBody, as_direction, canonicalize
from .numerics import DEFAULT_CONFIG, QuadratureConfig, integrate_adaptive, sphere_rule
from .sections import orthonormal_complement, section_function

__all__ = [
    "SphericalFunction",
    "spherical_radon",
    "radon_duality_check",
    "inverse_radon_3d",
    "radon_fourier_relation_check",
    "random_frame",
]


@dataclass(frozen=True)
class SphericalFunction:
    """A function on ``S^(n-1)`` evaluated on rows of unit vectors."""

    dimension: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    even: bool = True

    def __call__(self, u) -> np.ndarray:
        u = np.atleast_2d(np.asarray(u, dtype=float))
        return np.asarray(self.evaluator(u), dtype=float) * np.ones(len(u))

    @classmethod
    def constant(cls, n: int, c: float) -> SphericalFunction:
        return cls(n, lambda u: np.full(len(u), float(c)))


def spherical_radon(f: SphericalFunction, xi, cfg: QuadratureConfig = DEFAULT_CONFIG, basis=None) -> float:
    """Integral of ``f`` over the great subsphere ``S^(n-1) cap xi^perp``.

    ``basis`` (``n x (n-1)``, orthonormal columns spanning ``xi^perp``)
    overrides the default frame built from the canonicalized ``xi``.
    """
    n = f.dimension
    xi = as_direction(xi, n)
    if basis is None:
        basis = orthonormal_complement(canonicalize(xi.coordinates)[0])
    basis = np.asarray(basis, dtype=float)
    rule = sphere_rule(n - 2, cfg.sphere_nodes)
    return float(np.dot(rule.weights, f(rule.nodes @ basis.T)))


def random_frame(xi, seed: int = 0) -> np.ndarray:
    """Orthonormal basis of ``xi^perp`` rotated by a seeded random orthogonal matrix."""
    xi = np.asarray(xi.coordinates if isinstance(xi, Direction) else xi, dtype=float)
    base = orthonormal_complement(xi)
    g = np.random.default_rng(seed).standard_normal((base.shape[1], base.shape[1]))
    q, _ = np.linalg.qr(g)
    return base @ q


def radon_duality_check(
    mu: Sequence[tuple], f: SphericalFunction, cfg: QuadratureConfig = DEFAULT_CONFIG, seed: int = 0
) -> tuple[float, float]:
    """``<R mu, f>`` against ``<mu, R f>`` for a discrete measure ``mu``.

    For atoms both sides are ``sum w_i Rf(xi_i)``; the left side is evaluated
    in a randomly rotated frame so the check guards frame independence.
    """
    lhs = rhs = 0.0
    for xi, w in mu:
        if w < 0:
            raise InvalidArgumentError("measure weights must be non-negative")
        xi = as_direction(xi, f.dimension)
        rhs += w * spherical_radon(f, xi, cfg)
        lhs += w * spherical_radon(f, xi, cfg, basis=random_frame(xi, seed))
    return lhs, rhs


def inverse_radon_3d(body: StarBody, xi, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``R^-1 rho_K(xi) = -(1 / 4 pi^2) int_0^inf A'(z) / z dz`` for ``n = 3``.

    ``A'(z) / z`` is replaced by its limit ``A''(0)`` at ``z = 0``.
    """
    if body.dimension != 3:
        raise InvalidArgumentError("the inversion formula is for n = 3")
    try:
        sf = section_function(body, xi, cfg, engine="analytic")
    except UnsupportedError:
        raise UnsupportedError(f"inverse_radon_3d needs a closed-form section; {body.kind} has none here") from None
    a2 = sf.derivative_at_zero(2)
    g = lambda z: a2 if z == 0.0 else float(sf.first_derivative(z)) / z
    integral, _ = integrate_adaptive(g, 0.0, sf.support_end, cfg)
    return -integral / (4 * math.pi**2)


def radon_fourier_relation_check(body: StarBody, xi, cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """``2^3 pi^2 R^-1 rho_K(xi)`` against ``rho_K^(xi)`` (odd formula with ``k = 1``)."""
    if body.dimension != 3:
        raise InvalidArgumentError("the relation is checked for n = 3")
    lhs = 8 * math.pi**2 * inverse_radon_3d(body, xi, cfg)
    rhs = radial_power_ft_odd(body, 1, xi, cfg).value
    return lhs, rhs
