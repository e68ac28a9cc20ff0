"""Intersection-body certification from the ``(n-2)``-nd section derivative.

A star body is an intersection body exactly when ``rho_K`` is a positive
definite distribution, i.e. when ``rho_K^`` is non-negative on the sphere.
With ``k = n - 2`` the transform ``rho_K^(xi)`` is a section-function
quantity, so positivity can be probed direction by direction. Probing a
finite sample is evidence, never proof, and verdicts say so.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistencyError, InvalidArgumentError
from .fourier import ball_power_ft, radial_power_ft, radial_power_ft_odd
from .fracderiv import truncated_moment
from .geometry import Direction, RevolutionQuartic, StarBody, as_direction, canonicalize, quartic_axis_length
from .numerics import DEFAULT_CONFIG, QuadratureConfig, bisect_root, integrate_adaptive
from .sections import SectionFunction, section_function

__all__ = [
    "Certificate",
    "intersection_test_value",
    "bp_integral",
    "bp_integral_parts",
    "bp_integral_closed_form",
    "bp_threshold",
    "certify_intersection",
    "sample_directions",
]

REFUTED = "refuted"
POSITIVE = "positive-on-sample"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Certificate:
    """Outcome of probing ``rho_K^`` on a direction sample."""

    body: StarBody
    verdict: str
    witness_xi: Direction | None
    witness_value: float | None
    directions_tested: int
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_xi": None if self.witness_xi is None else self.witness_xi.coordinates.tolist(),
            "witness_value": self.witness_value,
            "directions_tested": self.directions_tested,
            "tolerance": self.tolerance,
            "body": self.body.config(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def intersection_test_value(
    body: StarBody, xi, cfg: QuadratureConfig = DEFAULT_CONFIG, sf: SectionFunction | None = None
) -> float:
    """``rho_K^(xi)`` from the section derivative of order ``k = n - 2``.

    Even ``n``: ``(-1)^((n-2)/2) pi A^(n-2)(0)``. Odd ``n``: the subtracted
    moment of order ``n - 2`` times ``c_(n-2)``.
    """
    n = body.dimension
    if n < 3:
        raise InvalidArgumentError("intersection test needs n >= 3")
    k = n - 2
    if k % 2 == 0:
        return radial_power_ft(body, k, xi, cfg, sf=sf).value
    return radial_power_ft_odd(body, k, xi, cfg, sf=sf).value


def bp_integral_closed_form(epsilon: float) -> float:
    """``(pi^2 / a^3)(a^2 - 2/3)``, ``a`` the positive root of ``1 - a^2 - eps a^4``."""
    a = quartic_axis_length(epsilon)
    return math.pi**2 / a**3 * (a * a - 2.0 / 3.0)


def _axis_section(epsilon: float, cfg) -> SectionFunction:
    if not 0 < epsilon < 1:
        raise InvalidArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")
    return section_function(RevolutionQuartic(epsilon), Direction.axis(5, 4), cfg)


def bp_integral(epsilon: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^inf z^-4 (A(z) - A(0) - A''(0) z^2 / 2) dz`` along ``e5`` of the quartic body.

    ``A`` vanishes past the axis length ``a``; that tail is integrated in
    closed form.
    """
    return truncated_moment(_axis_section(epsilon, cfg), 3, 4, cfg)[0]


def bp_integral_parts(epsilon: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> dict:
    """The integral split at ``a``.

    ``inner`` covers ``[0, a]``, where the integrand is the constant
    ``-eps pi^2 / 2``. ``tail`` covers ``(a, inf)``, where ``A = 0``.
    ``inner_closed_form = -eps a pi^2 / 2`` is the ``[0, a]`` part alone.
    """
    sf = _axis_section(epsilon, cfg)
    a = sf.support_end
    inner = integrate_adaptive(lambda z: sf.remainder(z, 4) / z**4 if z > 0 else sf.taylor(4), 0.0, a, cfg)[0]
    tail = sum(sf.taylor(j) * a ** (j - 3) / (j - 3) for j in (0, 2))
    return {
        "epsilon": epsilon,
        "axis_length": a,
        "inner": inner,
        "tail": tail,
        "total": truncated_moment(sf, 3, 4, cfg)[0],
        "inner_closed_form": -epsilon * a * math.pi**2 / 2,
        "total_closed_form": bp_integral_closed_form(epsilon),
    }


def bp_threshold(cfg: QuadratureConfig = DEFAULT_CONFIG, lo: float = 0.01, hi: float = 0.99) -> float:
    """The ``epsilon`` in ``(lo, hi)`` where :func:`bp_integral` changes sign."""
    f = lambda e: bp_integral(e, cfg)
    flo, fhi = f(lo), f(hi)
    if flo * fhi >= 0:
        raise InconsistencyError(f"bp_integral does not change sign on [{lo}, {hi}] ({flo}, {fhi})")
    eps = bisect_root(f, lo, hi, 1e-13)
    if abs(f(eps)) >= 1e-8:
        raise InconsistencyError(f"bisection ended at eps={eps} with bp_integral={f(eps)}")
    return eps


def sample_directions(n: int, count: int, seed: int = 0) -> list[Direction]:
    """``count`` seeded random directions, canonicalized (each stands for ``+-u``)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return [Direction(u) for u in canonicalize(g)]


def _distinguished(body: StarBody) -> list[Direction]:
    n = body.dimension
    axes = [Direction.axis(n, i) for i in range(n)]
    if isinstance(body, RevolutionQuartic):
        axes = [axes[4]] + axes[:4]
    return axes


def certify_intersection(
    body: StarBody,
    num_directions: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    seed: int = 0,
    tol: float | None = None,
    extra_directions=(),
) -> Certificate:
    """Probe ``rho_K^`` on coordinate axes, symmetry axes and a seeded sample.

    The first value below ``-tol`` refutes. If every value exceeds ``tol``
    the verdict is ``positive-on-sample``; anything else is
    ``inconclusive``. The default ``tol`` is ``1e-6`` times the value for
    the ball of radius ``body.support_radius_bound``.
    """
    n = body.dimension
    if n < 3:
        raise InvalidArgumentError("certification needs n >= 3")
    if num_directions < 1:
        raise InvalidArgumentError("num_directions must be >= 1")
    if tol is None:
        tol = 1e-6 * abs(ball_power_ft(n, n - 2, body.support_radius_bound))
    directions = [as_direction(d, n) for d in extra_directions] + _distinguished(body)
    directions += sample_directions(n, num_directions, seed)
    lowest: tuple[float, Direction] | None = None
    tested = 0
    for xi in directions:
        value = intersection_test_value(body, xi, cfg)
        tested += 1
        if value < -tol:
            return Certificate(body, REFUTED, xi, value, tested, tol)
        if lowest is None or value < lowest[0]:
            lowest = (value, xi)
    if lowest[0] > tol:
        return Certificate(body, POSITIVE, None, None, tested, tol)
    return Certificate(body, INCONCLUSIVE, lowest[1], lowest[0], tested, tol)
