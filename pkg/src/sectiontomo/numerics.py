"""Special functions, quadrature and root finding used throughout the package."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize, special

from .errors import AccuracyError, DomainError, InvalidArgumentError

__all__ = [
    "QuadratureConfig",
    "SphereRule",
    "gamma_real",
    "beta_real",
    "unit_ball_volume",
    "sphere_area",
    "integrate_adaptive",
    "sphere_rule",
    "bisect_root",
    "bisect_vectorized",
]

_POLE_WINDOW = 1e-12


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets shared by every numerical routine."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    sphere_nodes: int = 5000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidArgumentError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise InvalidArgumentError("max_subdivisions must be >= 1")
        if self.sphere_nodes < 2:
            raise InvalidArgumentError("sphere_nodes must be >= 2")


DEFAULT_CONFIG = QuadratureConfig()


def _check_pole(x: float) -> None:
    if x <= 0:
        k = round(x)
        if abs(x - k) < _POLE_WINDOW:
            raise DomainError(f"Gamma has a pole at {k}", pole=int(-k))


def gamma_real(x: float) -> float:
    """Gamma function of a real argument.

    Uses the C library ``tgamma`` (via :func:`math.gamma`), which covers
    negative non-integer arguments directly. Arguments within ``1e-12`` of
    a non-positive integer raise :class:`DomainError` carrying the pole
    index ``k`` for the pole at ``-k``.
    """
    x = float(x)
    _check_pole(x)
    return math.gamma(x)


def beta_real(a: float, b: float) -> float:
    """Beta function ``Gamma(a) Gamma(b) / Gamma(a + b)``."""
    for v in (a, b, a + b):
        _check_pole(float(v))
    return gamma_real(a) * gamma_real(b) / gamma_real(a + b)


def unit_ball_volume(n: int) -> float:
    """Volume of the Euclidean unit ball in ``R^n``."""
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def sphere_area(d: int) -> float:
    """Surface area of the unit sphere ``S^d`` in ``R^(d+1)``."""
    return (d + 1) * unit_ball_volume(d + 1)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    left_power: float | None = None,
    points=None,
) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``(a, b)``.

    With ``left_power=alpha`` the integrand is ``(t - a)**alpha * f(t)`` and
    the algebraic factor is integrated exactly (QUADPACK's QAWS), which is
    how callers hand over a known endpoint singularity.

    Returns ``(value, err_est)``. Raises :class:`AccuracyError` when the
    subdivision budget runs out.
    """
    if not a < b:
        raise InvalidArgumentError(f"need a < b, got a={a}, b={b}")
    kwargs = dict(epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions, full_output=1)
    if left_power is not None:
        if left_power <= -1:
            raise InvalidArgumentError("left_power must exceed -1")
        kwargs.update(weight="alg", wvar=(left_power, 0.0))
    elif points is not None:
        kwargs["points"] = points
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, **kwargs)
    value, err = float(out[0]), float(out[1])
    if len(out) == 4 and "maximum number of subdivisions" in out[3]:
        raise AccuracyError(f"subdivision budget exhausted on ({a}, {b})", value, err)
    return value, err


@dataclass(frozen=True)
class SphereRule:
    """Quadrature rule on the unit sphere ``S^d`` (nodes are rows)."""

    dimension: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Apply the rule to a function vectorized over rows of nodes."""
        return float(np.dot(self.weights, f(self.nodes)))


def _circle_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    m += m % 2
    theta = 2 * np.pi * np.arange(m) / m
    nodes = np.column_stack([np.cos(theta), np.sin(theta)])
    return nodes, np.full(m, 2 * np.pi / m)


def _gauss_rule(d: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    # S^d = {(t, sqrt(1-t^2) v) : v in S^(d-1)}, dsigma_d = (1-t^2)^((d-2)/2) dt dsigma_(d-1)
    if d == 1:
        return _circle_rule(2 * p)
    sub_nodes, sub_weights = _gauss_rule(d - 1, p)
    beta = (d - 2) / 2
    t, wt = special.roots_jacobi(p, beta, beta)
    # Gauss-Jacobi nodes/weights are symmetric up to rounding; make it exact.
    t = 0.5 * (t - t[::-1])
    wt = 0.5 * (wt + wt[::-1])
    s = np.sqrt(1.0 - t**2)
    nodes = np.concatenate([np.column_stack([np.full(len(sub_nodes), ti), si * sub_nodes]) for ti, si in zip(t, s)])
    weights = np.concatenate([wi * sub_weights for wi in wt])
    return nodes, weights


def _equal_weight_rule(d: int, n: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    from scipy.stats import qmc

    half = max(1, n // 2)
    pts = qmc.Halton(d=d + 1, scramble=True, seed=seed).random(half)
    g = special.ndtri(np.clip(pts, 1e-12, 1 - 1e-12))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    nodes = np.concatenate([g, -g])
    return nodes, np.full(len(nodes), sphere_area(d) / len(nodes))


def sphere_rule(d: int, nodes: int, method: str = "gauss") -> SphereRule:
    """Antipodally symmetric quadrature rule on ``S^d`` with about ``nodes`` points.

    ``d == 1`` always gives the uniform trapezoidal circle rule. For
    ``d >= 2`` the default ``"gauss"`` method is a tensor rule: Gauss-Jacobi
    in each polar coordinate and the uniform rule in the azimuth.
    ``"equal"`` gives a symmetrized scrambled-Halton point set with equal
    weights.
    """
    if d < 1:
        raise InvalidArgumentError("sphere dimension must be >= 1")
    if d == 1:
        pts, w = _circle_rule(max(2, nodes))
    elif method == "gauss":
        p = max(2, round((nodes / 2) ** (1 / d)))
        pts, w = _gauss_rule(d, p)
    elif method == "equal":
        pts, w = _equal_weight_rule(d, nodes)
    else:
        raise InvalidArgumentError(f"unknown sphere rule method {method!r}")
    return SphereRule(d, pts, w)


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of ``f`` in ``[lo, hi]`` by bisection; requires a sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise InvalidArgumentError(f"no sign change on [{lo}, {hi}]")
    return optimize.bisect(f, lo, hi, xtol=tol, maxiter=500)


def bisect_vectorized(
    inside: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: float = 1e-12,
) -> np.ndarray:
    """Elementwise bisection for the boundary of a monotone predicate.

    ``inside(r)`` must be true at ``lo`` and false at ``hi`` (elementwise)
    and switch exactly once in between.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    width = float(np.max(hi - lo)) if lo.size else 0.0
    steps = max(1, math.ceil(math.log2(max(width, tol) / tol)) + 1)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        ok = inside(mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return 0.5 * (lo + hi)
