"""Parallel section functions ``z -> A_xi(z)`` and their derivatives at zero.

Closed forms cover balls, axis-aligned ellipsoids in any direction and the
revolution-quartic body along its axis. Everything else convex goes through
a numerical engine: the section through height ``z`` is star-shaped about a
point on the segment to the support point, its radial profile is found by
bisection and its volume integrated with a sphere rule on ``S^(n-2)``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import optimize

from .errors import InvalidArgumentError, UnsupportedError
from .geometry import Ball, Direction, Ellipsoid, RevolutionQuartic, StarBody, as_direction, canonicalize
from .numerics import DEFAULT_CONFIG, QuadratureConfig, bisect_vectorized, sphere_rule, unit_ball_volume

__all__ = [
    "SectionFunction",
    "section_function",
    "section_derivative_at_zero",
    "section_scaling_check",
    "orthonormal_complement",
    "section_rows",
]

_SERIES_REL = 1e-18
_MAX_SERIES_TERMS = 400
_FD_MAX_ORDER = 4
_FD_LEVELS = 4


class SectionFunction:
    """The map ``z -> A_xi(z)`` for ``z >= 0`` (the function is even).

    Attributes
    ----------
    body, xi:
        The body and the (canonicalized) direction.
    support_end:
        ``A_xi(z) == 0`` for ``z > support_end``.
    derivative_source:
        ``"analytic"`` or ``"finite-difference"``.
    """

    derivative_source = "analytic"

    def __init__(self, body: StarBody, xi: Direction, support_end: float):
        self.body = body
        self.xi = xi
        self.support_end = float(support_end)

    @property
    def support(self) -> float:
        return self.support_end

    def __call__(self, z):
        z = np.abs(np.asarray(z, dtype=float))
        out = np.zeros_like(z)
        inside = z < self.support_end
        if np.any(inside):
            out[inside] = self._evaluate(z[inside])
        return out if out.ndim else float(out)

    def _evaluate(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def taylor(self, j: int) -> float:
        """Taylor coefficient ``A^(j)(0) / j!``; odd orders are exactly zero."""
        if j < 0:
            raise InvalidArgumentError("negative Taylor index")
        if j % 2:
            return 0.0
        return self._even_taylor(j // 2)

    def _even_taylor(self, i: int) -> float:
        raise NotImplementedError

    def derivative_at_zero(self, k: int) -> float:
        """Classical derivative ``d^k A / dz^k`` at 0."""
        return math.factorial(k) * self.taylor(k)

    def taylor_polynomial(self, t: float, m: int) -> float:
        """Sum of the first ``m`` Taylor terms (degrees ``0 .. m-1``) at ``t``."""
        return sum(self.taylor(j) * t**j for j in range(0, m, 2))

    def remainder(self, t: float, m: int) -> float:
        """``A(t)`` minus its Taylor polynomial of degree ``m - 1``, for ``t >= 0``.

        Computed from the series near 0 where direct subtraction would cancel.
        """
        return float(self(t)) - self.taylor_polynomial(t, m)

    def first_derivative(self, z):
        raise UnsupportedError(f"no analytic A' for {self.body.kind} bodies in this direction")


def _series_remainder(coeff, t: float, m: int, radius: float) -> float | None:
    """Tail ``sum_{j >= m} coeff(j) t^j`` of an even series, or None if it converges too slowly."""
    x = t * t
    i = (m + 1) // 2
    acc = 0.0
    for _ in range(_MAX_SERIES_TERMS):
        c = coeff(i)
        term = c * x**i
        acc += term
        if c == 0.0 and i > radius:
            return acc
        if term != 0.0 and abs(term) <= _SERIES_REL * abs(acc):
            return acc
        i += 1
    return None


class QuadricSection(SectionFunction):
    """``A(z) = C (1 - z^2 / w^2)_+^p`` (balls and ellipsoids)."""

    def __init__(self, body, xi, scale: float, width: float, power: float):
        super().__init__(body, xi, width)
        self.scale = scale
        self.width = width
        self.power = power
        self._coeffs = [scale]

    def _evaluate(self, z):
        return self.scale * (1.0 - (z / self.width) ** 2) ** self.power

    def _even_taylor(self, i):
        # generalized binomial: (1 - x)^p = sum_i binom(p, i) (-x)^i, x = z^2 / w^2
        while len(self._coeffs) <= i:
            j = len(self._coeffs) - 1
            self._coeffs.append(self._coeffs[-1] * -(self.power - j) / ((j + 1) * self.width**2))
        return self._coeffs[i]

    def remainder(self, t, m):
        t = abs(float(t))
        if t < 0.5 * self.width:
            tail = _series_remainder(self._even_taylor, t, m, self.power)
            if tail is not None:
                return tail
        return super().remainder(t, m)

    def first_derivative(self, z):
        z = np.asarray(z, dtype=float)
        inner = np.clip(1.0 - (z / self.width) ** 2, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            d = self.scale * self.power * inner ** (self.power - 1) * (-2 * z / self.width**2)
        d = np.where(np.abs(z) < self.width, d, 0.0)
        return d if d.ndim else float(d)


class QuarticAxisSection(SectionFunction):
    """Section function of the revolution-quartic body along ``e5``.

    For ``0 <= z <= a`` (``a`` the axis length) the section is a 4-ball of
    radius ``f(z) = (1 - z^2 - eps z^4)^(1/4)``, hence
    ``A(z) = (pi^2 / 2)(1 - z^2 - eps z^4)`` (with dilation ``s`` applied).
    """

    def __init__(self, body: RevolutionQuartic, xi):
        super().__init__(body, xi, body.axis_length)
        s = body.scale
        c = math.pi**2 / 2
        self._coeffs = (c * s**4, -c * s**2, -c * body.epsilon)

    def _evaluate(self, z):
        return self._coeffs[0] + self._coeffs[1] * z**2 + self._coeffs[2] * z**4

    def _even_taylor(self, i):
        return self._coeffs[i] if i < 3 else 0.0

    def remainder(self, t, m):
        t = abs(float(t))
        if t <= self.support_end:
            return sum(self._coeffs[i] * t ** (2 * i) for i in range((m + 1) // 2, 3))
        return -self.taylor_polynomial(t, m)

    def first_derivative(self, z):
        z = np.asarray(z, dtype=float)
        d = 2 * self._coeffs[1] * z + 4 * self._coeffs[2] * z**3
        d = np.where(np.abs(z) < self.support_end, d, 0.0)
        return d if d.ndim else float(d)


def orthonormal_complement(xi) -> np.ndarray:
    """An ``(n, n-1)`` matrix whose columns are an orthonormal basis of ``xi^perp``."""
    xi = np.asarray(xi, dtype=float)
    n = xi.size
    drop = int(np.argmax(np.abs(xi)))
    m = np.column_stack([xi] + [np.eye(n)[:, i] for i in range(n) if i != drop])
    q, _ = np.linalg.qr(m)
    return q[:, 1:]


class NumericalSection(SectionFunction):
    """Section volumes by ray bisection and sphere quadrature (convex bodies only).

    The section at height ``z`` is taken to be star-shaped about
    ``c(z) = (z / h) x*``, where ``x*`` is the support point of the body in
    direction ``xi`` and ``h = <x*, xi>``. For convex bodies ``c(z)`` lies in
    the relative interior of the section for ``0 <= z < h``.

    Accuracy is set by ``cfg.sphere_nodes``: the rule converges
    exponentially for smooth bodies, but elongated sections in ``n >= 5``
    need more than the default 5000 nodes to get below ``1e-7``.
    """

    derivative_source = "finite-difference"

    def __init__(self, body: StarBody, xi: Direction, cfg: QuadratureConfig = DEFAULT_CONFIG, basis=None):
        if not body.convex:
            raise UnsupportedError("the numerical section engine requires a convex body")
        n = body.dimension
        self.cfg = cfg
        self.basis = orthonormal_complement(xi.coordinates) if basis is None else np.asarray(basis, dtype=float)
        rule = sphere_rule(n - 2, cfg.sphere_nodes) if n > 2 else None
        if rule is None:
            self._dirs = np.array([self.basis[:, 0], -self.basis[:, 0]])
            self._weights = np.array([1.0, 1.0])
        else:
            self._dirs = rule.nodes @ self.basis.T
            self._weights = rule.weights
        self._support_point = self._find_support_point(body, xi.coordinates, cfg)
        h = float(self._support_point @ xi.coordinates)
        super().__init__(body, xi, h)
        self._cache: dict[float, float] = {}
        self._taylor_cache: dict[int, float] = {}

    @staticmethod
    def _find_support_point(body: StarBody, xi: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
        rule = sphere_rule(body.dimension - 1, min(cfg.sphere_nodes, 4000))
        u = rule.nodes
        heights = body.radial(u) * (u @ xi)
        best = u[int(np.argmax(heights))]

        def negative_height(v):
            nv = np.linalg.norm(v)
            if nv == 0:
                return 0.0
            w = v / nv
            return -float(body.radial(w[None, :])[0] * (w @ xi))

        # Powell's line searches converge reliably here; Nelder-Mead stalls in n >= 5.
        res = optimize.minimize(negative_height, best, method="Powell", options={"xtol": 1e-12, "ftol": 1e-15})
        w = res.x / np.linalg.norm(res.x)
        if -res.fun < heights.max():
            w = best
        return float(body.radial(w[None, :])[0]) * w

    def _volume(self, z: float) -> float:
        if z in self._cache:
            return self._cache[z]
        h = self.support_end
        n = self.body.dimension
        center = (z / h) * self._support_point
        hi = np.full(len(self._dirs), 2.0 * self.body.support_radius_bound * 1.01 + np.linalg.norm(center))
        r = bisect_vectorized(
            lambda rr: self.body.contains(center + rr[:, None] * self._dirs),
            np.zeros(len(self._dirs)),
            hi,
            1e-12 * max(1.0, self.body.support_radius_bound),
        )
        vol = float(np.dot(self._weights, r ** (n - 1))) / (n - 1)
        self._cache[z] = vol
        return vol

    def _evaluate(self, z):
        return np.array([self._volume(float(v)) for v in np.ravel(z)]).reshape(np.shape(z))

    def _even_taylor(self, i):
        k = 2 * i
        if k > _FD_MAX_ORDER:
            raise UnsupportedError(f"finite-difference derivatives are limited to order {_FD_MAX_ORDER}")
        if k not in self._taylor_cache:
            self._taylor_cache[k] = self._fd_derivative(k) / math.factorial(k)
        return self._taylor_cache[k]

    def _fd_derivative(self, k: int) -> float:
        a0 = self._volume(0.0)
        if k == 0:
            return a0
        h0 = 1e-2 * self.support_end
        # steps h0 * 2^j, coarsest first; the even extension A(-z) = A(z) is used
        steps = [h0 * 2.0 ** (_FD_LEVELS - 1 - j) for j in range(_FD_LEVELS)]
        if k == 2:
            table = [2.0 * (self._volume(h) - a0) / h**2 for h in steps]
        else:
            table = [(2.0 * self._volume(2 * h) - 8.0 * self._volume(h) + 6.0 * a0) / h**4 for h in steps]
        for level in range(1, _FD_LEVELS):
            factor = 4.0**level
            table = [table[i] + (table[i] - table[i - 1]) / (factor - 1) for i in range(1, len(table))]
        return table[-1]

    def remainder(self, t, m):
        t = abs(float(t))
        if t < 0.05 * self.support_end:
            orders = [j for j in range(m, _FD_MAX_ORDER + 1) if j % 2 == 0]
            if orders:
                return sum(self.taylor(j) * t**j for j in orders)
        return super().remainder(t, m)


def section_function(
    body: StarBody,
    xi,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    engine: str = "auto",
) -> SectionFunction:
    """Parallel section function of ``body`` orthogonal to ``xi``.

    ``engine`` is ``"auto"`` (closed form when available), ``"analytic"`` or
    ``"numerical"``.
    """
    n = body.dimension
    xi = as_direction(xi, n)
    xi = Direction(canonicalize(xi.coordinates)[0])
    if engine not in ("auto", "analytic", "numerical"):
        raise InvalidArgumentError(f"unknown engine {engine!r}")
    if engine != "numerical":
        sf = _analytic_section(body, xi)
        if sf is not None:
            return sf
        if engine == "analytic":
            raise UnsupportedError(f"no closed-form section for {body.kind} in direction {xi.coordinates.tolist()}")
    return NumericalSection(body, xi, cfg)


def _analytic_section(body: StarBody, xi: Direction) -> SectionFunction | None:
    n = body.dimension
    p = (n - 1) / 2
    kappa = unit_ball_volume(n - 1)
    if isinstance(body, Ball):
        r = body.radius
        return QuadricSection(body, xi, kappa * r ** (n - 1), r, p)
    if isinstance(body, Ellipsoid):
        a = np.asarray(body.semi_axes)
        w = float(np.linalg.norm(a * xi.coordinates))
        return QuadricSection(body, xi, kappa * float(np.prod(a)) / w, w, p)
    if isinstance(body, RevolutionQuartic):
        if np.max(np.abs(xi.coordinates - np.eye(5)[4])) <= 1e-12:
            return QuarticAxisSection(body, xi)
    return None


def section_derivative_at_zero(sf: SectionFunction, k: int) -> float:
    """``d^k A_xi / dz^k`` at 0; odd orders are exactly 0."""
    if k < 0:
        raise InvalidArgumentError("derivative order must be >= 0")
    if k % 2:
        return 0.0
    if sf.derivative_source != "analytic" and k > _FD_MAX_ORDER:
        raise UnsupportedError(f"finite-difference derivatives are limited to order {_FD_MAX_ORDER}")
    return sf.derivative_at_zero(k)


def section_scaling_check(body: StarBody, xi, z: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``A_xi(z)`` for a non-unit ``xi``: ``(1/|xi|) A_{xi/|xi|}(z/|xi|)``."""
    xi = np.asarray(xi, dtype=float)
    norm = float(np.linalg.norm(xi))
    if norm == 0:
        raise InvalidArgumentError("xi must be non-zero")
    sf = section_function(body, xi / norm, cfg)
    return float(sf(z / norm)) / norm


def section_rows(sf: SectionFunction, zs) -> list[tuple[float, float]]:
    """Rows ``(z, A(z))`` for the CSV emitter."""
    return [(float(z), float(sf(float(z)))) for z in zs]
