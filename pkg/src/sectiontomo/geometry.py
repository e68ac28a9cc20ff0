"""Origin-symmetric star bodies, their radial functions and gauges.

Every body evaluates its radial function on rows of an ``(N, n)`` array of
unit vectors. Directions are canonicalized (first non-zero coordinate made
positive) before evaluation, so ``rho(u) == rho(-u)`` holds bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvalidArgumentError
from .numerics import bisect_root, bisect_vectorized

__all__ = [
    "Direction",
    "as_direction",
    "canonicalize",
    "StarBody",
    "Ball",
    "Ellipsoid",
    "RevolutionQuartic",
    "RadialTable",
    "minkowski_functional",
    "quartic_axis_length",
    "make_counterexample_body",
    "profile_second_derivative",
    "profile_concavity_check",
    "body_from_config",
]

_UNIT_TOL = 1e-12
_BISECT_TOL = 1e-12


@dataclass(frozen=True)
class Direction:
    """A unit vector in ``R^n``, ``n >= 2``."""

    coordinates: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coordinates, dtype=float).copy()
        if c.ndim != 1 or c.size < 2:
            raise InvalidArgumentError("a direction needs n >= 2 coordinates")
        if abs(np.linalg.norm(c) - 1.0) > _UNIT_TOL:
            raise InvalidArgumentError(f"direction is not a unit vector (|xi| = {np.linalg.norm(c)!r})")
        c.setflags(write=False)
        object.__setattr__(self, "coordinates", c)

    @classmethod
    def from_vector(cls, v) -> Direction:
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidArgumentError("zero vector has no direction")
        return cls(v / norm)

    @classmethod
    def axis(cls, n: int, i: int) -> Direction:
        """The coordinate direction ``e_i`` (0-based) in ``R^n``."""
        e = np.zeros(n)
        e[i] = 1.0
        return cls(e)

    @property
    def dimension(self) -> int:
        return self.coordinates.size

    def canonical(self) -> Direction:
        return Direction(canonicalize(self.coordinates[None, :])[0])

    def __neg__(self) -> Direction:
        return Direction(-self.coordinates)

    def __eq__(self, other):
        return isinstance(other, Direction) and np.array_equal(self.coordinates, other.coordinates)

    def __hash__(self):
        return hash(self.coordinates.tobytes())


def as_direction(xi, n: int | None = None) -> Direction:
    """Coerce ``xi`` to a :class:`Direction`, normalizing plain vectors."""
    d = xi if isinstance(xi, Direction) else Direction.from_vector(xi)
    if n is not None and d.dimension != n:
        raise InvalidArgumentError(f"direction has dimension {d.dimension}, body has {n}")
    return d


def canonicalize(u: np.ndarray) -> np.ndarray:
    """Flip rows of ``u`` so that their first non-zero coordinate is positive."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    nz = u != 0
    first = np.argmax(nz, axis=1)
    lead = u[np.arange(len(u)), first]
    sign = np.where(lead < 0, -1.0, 1.0)
    return u * sign[:, None]


class StarBody:
    """Base class for origin-symmetric star bodies in ``R^n``.

    Subclasses implement :meth:`_radial` on canonical unit rows. The gauge
    (Minkowski functional) and membership test follow from it, though
    subclasses with an implicit equation override :meth:`contains` for speed.
    """

    kind: str = "star"
    dimension: int
    convex: bool = False

    def radial(self, u) -> np.ndarray:
        """Radial function on rows of ``u`` (normalized internally)."""
        u = np.atleast_2d(np.asarray(u, dtype=float))
        u = u / np.linalg.norm(u, axis=1, keepdims=True)
        return self._radial(canonicalize(u))

    def _radial(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def gauge(self, x) -> np.ndarray:
        """Minkowski functional on rows of ``x`` (rows must be non-zero)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        r = np.linalg.norm(x, axis=1)
        if np.any(r == 0):
            raise InvalidArgumentError("Minkowski functional of the zero vector")
        return r / self._radial(canonicalize(x / r[:, None]))

    def contains(self, x) -> np.ndarray:
        """Boolean membership ``||x||_K <= 1`` for rows of ``x``."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.ones(len(x), dtype=bool)
        nz = np.linalg.norm(x, axis=1) > 0
        if np.any(nz):
            out[nz] = self.gauge(x[nz]) <= 1.0
        return out

    @property
    def support_radius_bound(self) -> float:
        raise NotImplementedError

    def scaled(self, r: float) -> StarBody:
        """The dilate ``rK``."""
        raise NotImplementedError

    def config(self) -> dict:
        """Body-config mapping (``dimension``, ``kind``, ``params``)."""
        raise NotImplementedError


def minkowski_functional(body: StarBody, x) -> float:
    """``||x||_K = |x|_2 / rho_K(x / |x|_2)`` for a single vector."""
    x = np.asarray(x, dtype=float)
    if x.shape != (body.dimension,):
        raise InvalidArgumentError(f"expected a vector of length {body.dimension}")
    if not np.any(x):
        raise InvalidArgumentError("Minkowski functional of the zero vector")
    return float(body.gauge(x[None, :])[0])


@dataclass(frozen=True)
class Ball(StarBody):
    dimension: int
    radius: float = 1.0
    kind = "ball"
    convex = True

    def __post_init__(self):
        if self.dimension < 2:
            raise InvalidArgumentError("dimension must be >= 2")
        if not self.radius > 0:
            raise InvalidArgumentError("radius must be positive")

    def _radial(self, u):
        return np.full(len(u), float(self.radius))

    def gauge(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        r = np.linalg.norm(x, axis=1)
        if np.any(r == 0):
            raise InvalidArgumentError("Minkowski functional of the zero vector")
        return r / self.radius

    def contains(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.einsum("ij,ij->i", x, x) <= self.radius**2

    @property
    def support_radius_bound(self):
        return float(self.radius)

    def scaled(self, r):
        return Ball(self.dimension, self.radius * r)

    def config(self):
        return {"dimension": self.dimension, "kind": self.kind, "params": {"radius": self.radius}}


@dataclass(frozen=True)
class Ellipsoid(StarBody):
    """Axis-aligned ellipsoid ``sum (x_i / a_i)^2 <= 1``."""

    semi_axes: tuple[float, ...]
    kind = "ellipsoid"
    convex = True

    def __post_init__(self):
        a = tuple(float(v) for v in self.semi_axes)
        if len(a) < 2:
            raise InvalidArgumentError("dimension must be >= 2")
        if min(a) <= 0:
            raise InvalidArgumentError("semi-axes must be positive")
        object.__setattr__(self, "semi_axes", a)

    @property
    def dimension(self):
        return len(self.semi_axes)

    def _radial(self, u):
        return 1.0 / np.sqrt(np.sum((u / np.asarray(self.semi_axes)) ** 2, axis=1))

    def contains(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.sum((x / np.asarray(self.semi_axes)) ** 2, axis=1) <= 1.0

    @property
    def support_radius_bound(self):
        return max(self.semi_axes)

    def scaled(self, r):
        return Ellipsoid(tuple(a * r for a in self.semi_axes))

    def config(self):
        return {"dimension": self.dimension, "kind": self.kind, "params": {"semi_axes": list(self.semi_axes)}}


def quartic_axis_length(epsilon: float) -> float:
    """Positive root ``a`` of ``1 - a^2 - epsilon a^4``, in closed form."""
    return math.sqrt((math.sqrt(1 + 4 * epsilon) - 1) / (2 * epsilon))


@dataclass(frozen=True)
class RevolutionQuartic(StarBody):
    """The body ``{x in R^5 : |x'|^4 + x5^2 + eps x5^4 <= 1}`` dilated by ``scale``.

    Here ``x' = (x1, ..., x4)``. Its sections orthogonal to ``e5`` are
    4-balls of radius ``(1 - z^2 - eps z^4)^(1/4)``.
    """

    epsilon: float
    scale: float = 1.0
    kind = "revolution-quartic"
    convex = True
    dimension = 5

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InvalidArgumentError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.scale > 0:
            raise InvalidArgumentError("scale must be positive")

    def level(self, x) -> np.ndarray:
        """Boundary polynomial ``|x'|^4 + x5^2 + eps x5^4`` of the unscaled body."""
        x = np.atleast_2d(np.asarray(x, dtype=float)) / self.scale
        s2 = np.sum(x[:, :4] ** 2, axis=1)
        z2 = x[:, 4] ** 2
        return s2**2 + z2 + self.epsilon * z2**2

    def _radial(self, u):
        # level(r u / scale) is increasing in r > 0, and the unscaled rho is <= 1,
        # so bisecting the unscaled radius on [0, 2] is safe.
        return self.scale * bisect_vectorized(
            lambda r: self.level(u * (self.scale * r)[:, None]) <= 1.0,
            np.zeros(len(u)),
            np.full(len(u), 2.0),
            _BISECT_TOL,
        )

    def contains(self, x):
        return self.level(x) <= 1.0

    @property
    def axis_length(self) -> float:
        return self.scale * bisect_root(lambda a: 1 - a * a - self.epsilon * a**4, 0.0, 1.0, _BISECT_TOL)

    @property
    def support_radius_bound(self):
        return float(self.scale)

    def scaled(self, r):
        return RevolutionQuartic(self.epsilon, self.scale * r)

    def config(self):
        params = {"epsilon": self.epsilon}
        if self.scale != 1.0:
            params["scale"] = self.scale
        return {"dimension": 5, "kind": self.kind, "params": params}


@dataclass(frozen=True, eq=False)
class RadialTable(StarBody):
    """Star body interpolated from radial samples on the sphere.

    The interpolant is a normalized kernel average with weights
    ``exp(kappa (|<u, u_i>| - 1))``. Using ``|<u, u_i>|`` makes it even,
    and a convex combination of positive samples stays positive. It is only
    continuous in a practical sense, so high-order section derivatives of
    tabulated bodies are not meaningful.
    """

    directions: np.ndarray
    values: np.ndarray
    concentration: float = 50.0
    convex: bool = False
    source: str | None = None
    kind = "radial-table"

    def __post_init__(self):
        d = np.atleast_2d(np.asarray(self.directions, dtype=float))
        v = np.asarray(self.values, dtype=float).ravel()
        if d.shape[0] != v.size or d.shape[1] < 2:
            raise InvalidArgumentError("need one radial value per sample direction, n >= 2")
        if np.any(v <= 0):
            raise InvalidArgumentError("radial samples must be positive")
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "values", v)

    @property
    def dimension(self):
        return self.directions.shape[1]

    def _radial(self, u):
        cos = np.abs(u @ self.directions.T)
        w = np.exp(self.concentration * (cos - 1.0))
        return (w @ self.values) / w.sum(axis=1)

    @property
    def support_radius_bound(self):
        return float(self.values.max())

    def scaled(self, r):
        return RadialTable(self.directions, self.values * r, self.concentration, self.convex, None)

    def config(self):
        params = {"samples": self.source, "concentration": self.concentration, "convex": self.convex}
        return {"dimension": self.dimension, "kind": self.kind, "params": params}


def make_counterexample_body(epsilon: float) -> RevolutionQuartic:
    """Convex body in ``R^5`` whose ``e5``-sections are 4-balls of radius ``f_eps(z)``."""
    return RevolutionQuartic(epsilon)


def profile_second_derivative(epsilon: float, x) -> np.ndarray:
    """Closed-form second derivative of ``f(x) = (1 - x^2 - eps x^4)^(1/4)``."""
    x = np.asarray(x, dtype=float)
    g = 1 - x**2 - epsilon * x**4
    return -(0.5 + 3 * epsilon * x**2) * g ** (-0.75) - 3 * (-0.5 * x - epsilon * x**3) ** 2 * g ** (-1.75)


def profile_concavity_check(epsilon: float, grid: int = 101) -> bool:
    """True iff the profile's second derivative is negative on an interior grid of ``(0, a_eps)``."""
    if not 0 < epsilon < 1:
        raise InvalidArgumentError("epsilon must lie in (0, 1)")
    if grid < 3:
        raise InvalidArgumentError("grid must have at least 3 points")
    a = quartic_axis_length(epsilon)
    x = np.linspace(0.0, a, grid)[1:-1]
    return bool(np.all(profile_second_derivative(epsilon, x) < 0))


def body_from_config(cfg: dict, base_dir: str | Path | None = None) -> StarBody:
    """Build a body from a mapping with keys ``dimension``, ``kind``, ``params``."""
    if not isinstance(cfg, dict):
        raise ConfigError("body config must be a mapping")
    for key in ("dimension", "kind"):
        if key not in cfg:
            raise ConfigError(f"missing key {key!r}", key)
    try:
        n = int(cfg["dimension"])
    except (TypeError, ValueError):
        raise ConfigError("'dimension' must be an integer", "dimension") from None
    kind = cfg["kind"]
    params = cfg.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError("'params' must be a mapping", "params")
    try:
        if kind == "ball":
            return Ball(n, float(params.get("radius", 1.0)))
        if kind == "ellipsoid":
            if "semi_axes" not in params:
                raise ConfigError("ellipsoid needs params.semi_axes", "semi_axes")
            body = Ellipsoid(tuple(float(a) for a in params["semi_axes"]))
            if body.dimension != n:
                raise ConfigError(f"len(semi_axes) = {body.dimension} does not match dimension {n}", "semi_axes")
            return body
        if kind == "revolution-quartic":
            if n != 5:
                raise ConfigError("revolution-quartic bodies live in dimension 5", "dimension")
            if "epsilon" not in params:
                raise ConfigError("revolution-quartic needs params.epsilon", "epsilon")
            return RevolutionQuartic(float(params["epsilon"]), float(params.get("scale", 1.0)))
        if kind == "radial-table":
            if "samples" not in params:
                raise ConfigError("radial-table needs params.samples", "samples")
            path = Path(params["samples"])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            if not path.exists():
                raise ConfigError(f"samples file {str(path)!r} not found", "samples")
            data = np.loadtxt(path, delimiter=",", ndmin=2)
            if data.shape[1] != n + 1:
                raise ConfigError(f"samples need {n + 1} columns (u_1..u_n, rho)", "samples")
            return RadialTable(
                data[:, :n],
                data[:, n],
                float(params.get("concentration", 50.0)),
                bool(params.get("convex", False)),
                str(params["samples"]),
            )
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), "params") from None
    raise ConfigError(f"unknown body kind {kind!r}", "kind")
