r"""Regularized pairings with :math:`t_+^\lambda` and fractional derivatives at zero.

For a function :math:`\varphi` on :math:`[0, \infty)` with Taylor
coefficients :math:`a_j = \varphi^{(j)}(0)/j!`, the pairing
:math:`\langle t_+^\lambda, \varphi\rangle` is continued to
:math:`\lambda > -m-1`, :math:`\lambda \notin \{-1, \dots, -m\}` by
subtracting the first ``m`` Taylor terms on :math:`(0, 1)` and adding back
:math:`\sum_k a_{k-1}/(\lambda+k)`. Inside a strip
:math:`-m-1 < \lambda < -m` the subtracted integral over the whole half-line
converges on its own and no correction terms are needed.

The fractional derivative of a section function is the pairing with
:math:`t_+^{-q-1}/\Gamma(-q)`.

Anything passed as ``phi`` must provide ``support``, ``__call__``,
``taylor(j)``, ``taylor_polynomial(t, m)`` and ``remainder(t, m)``.
:class:`~sectiontomo.sections.SectionFunction` and :class:`TaylorFunction`
both do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InconsistencyError, InvalidArgumentError, PoleError
from .numerics import DEFAULT_CONFIG, QuadratureConfig, gamma_real, integrate_adaptive
from .sections import SectionFunction, section_derivative_at_zero

__all__ = [
    "TaylorFunction",
    "gaussian",
    "exponential",
    "compact_polynomial",
    "FractionalValue",
    "regularized_tplus",
    "truncated_pairing",
    "tplus_ratio",
    "tplus_residue_check",
    "tplus_over_gamma_at_negative_integer",
    "fractional_section_derivative",
    "truncated_moment",
    "fractional_rows",
    "INTEGER_WINDOW",
]

INTEGER_WINDOW = 1e-6
_SERIES_REL = 1e-17


class TaylorFunction:
    """A test function with known Taylor coefficients at 0.

    ``func`` is evaluated on ``[0, support]`` and taken to vanish beyond.
    ``coefficients[j]`` is ``phi^(j)(0) / j!``. With ``polynomial=True``
    the function equals its Taylor polynomial on the support.
    """

    def __init__(self, func: Callable, coefficients: Sequence[float], support: float, polynomial: bool = False):
        self.func = func
        self.coefficients = tuple(float(c) for c in coefficients)
        self.support = float(support)
        self.polynomial = polynomial

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.where(np.abs(t) <= self.support, self.func(t), 0.0)
        return out if out.ndim else float(out)

    def taylor(self, j: int) -> float:
        if j < len(self.coefficients):
            return self.coefficients[j]
        if self.polynomial:
            return 0.0
        raise InvalidArgumentError(f"derivative of order {j} at 0 not supplied")

    def taylor_polynomial(self, t: float, m: int, include_odd: bool = True) -> float:
        return sum(self.taylor(j) * t**j for j in range(m) if include_odd or j % 2 == 0)

    def remainder(self, t: float, m: int) -> float:
        t = float(t)
        if t > self.support:
            return -self.taylor_polynomial(t, m)
        tail = [c * t**j for j, c in enumerate(self.coefficients) if j >= m]
        if self.polynomial:
            return math.fsum(tail)
        if tail:
            acc = math.fsum(tail)
            last = next((v for v in reversed(tail) if v != 0.0), 0.0)
            if acc != 0.0 and abs(last) <= _SERIES_REL * abs(acc):
                return acc
        return float(self.func(t)) - self.taylor_polynomial(t, m)


def gaussian(terms: int = 60, cutoff: float = 40.0) -> TaylorFunction:
    """``exp(-t^2 / 2)`` truncated at ``cutoff`` (where it is below 1e-300)."""
    coeffs = [0.0] * (2 * terms)
    for i in range(terms):
        coeffs[2 * i] = (-0.5) ** i / math.factorial(i)
    return TaylorFunction(lambda t: np.exp(-np.square(t) / 2), coeffs, cutoff)


def exponential(terms: int = 60, cutoff: float = 800.0) -> TaylorFunction:
    """``exp(-t)`` truncated at ``cutoff``."""
    coeffs = [(-1.0) ** j / math.factorial(j) for j in range(terms)]
    return TaylorFunction(lambda t: np.exp(-np.asarray(t)), coeffs, cutoff)


def compact_polynomial(coefficients: Sequence[float], support: float = 1.0) -> TaylorFunction:
    """Polynomial on ``[0, support]``, zero beyond; e.g. ``(1 - t^2)_+^2`` is ``[1, 0, -2, 0, 1]``."""
    coeffs = tuple(coefficients)
    return TaylorFunction(lambda t: np.polyval(coeffs[::-1], t), coeffs, support, polynomial=True)


@dataclass(frozen=True)
class FractionalValue:
    """``A_xi^(q)(0)`` with the bookkeeping of how it was obtained."""

    q: float
    m: int
    value: float
    err_est: float
    branch: str


def _integrate_remainder(lam, phi, m, upper, cfg, include_odd=False):
    """``int_0^upper t^lam (phi - T_m)(t) dt`` where ``T_m`` has degrees ``< m``.

    ``(0, end/2)`` carries the ``t^(lam+m)`` singularity as an exact weight,
    ``(end/2, end)`` is plain adaptive quadrature, and beyond the support
    the integrand is a sum of powers integrated in closed form.
    """
    L = phi.support
    end = min(upper, L)
    alpha = lam + m
    if alpha <= -1:
        raise DomainError(f"t^{lam} (phi - T_{m}) is not integrable at 0")
    value = err = 0.0
    lead = phi.taylor(m) if m >= 0 else 0.0

    def scaled(t):
        if t == 0.0:
            return lead
        return phi.remainder(t, m) / t**m

    split = 0.5 * end
    v, e = integrate_adaptive(scaled, 0.0, split, cfg, left_power=alpha)
    value += v
    err += e
    v, e = integrate_adaptive(lambda t: t**lam * phi.remainder(t, m), split, end, cfg)
    value += v
    err += e
    if upper > L:
        for j in range(m):
            if j % 2 and not include_odd:
                continue
            a = phi.taylor(j)
            if a == 0.0 and not include_odd:
                continue
            beta = lam + j + 1
            if beta == 0:
                raise DomainError("logarithmic tail")
            if math.isinf(upper):
                if beta > 0:
                    if a == 0.0:
                        continue
                    raise DomainError(f"tail of t^{lam} * t^{j} diverges")
                value += a * L**beta / beta
            else:
                value -= a * (upper**beta - L**beta) / beta
    return value, err


def _check_lambda(lam: float, m: int):
    if m < 0:
        raise InvalidArgumentError("regularization order m must be >= 0")
    if not lam > -m - 1:
        raise DomainError(f"need lambda > -m-1 = {-m - 1}, got {lam}")
    k = round(-lam)
    if 1 <= k <= m and abs(lam + k) < 1e-14:
        raise PoleError(f"t_+^lambda has a pole at lambda = {-k}", pole=k)


def _regularized(lam, phi, m, cfg, include_odd=False):
    _check_lambda(lam, m)
    for j in range(m):
        phi.taylor(j)
    value, err = _integrate_remainder(lam, phi, m, 1.0, cfg, include_odd)
    if phi.support > 1.0:
        v, e = integrate_adaptive(lambda t: t**lam * float(phi(t)), 1.0, phi.support, cfg)
        value += v
        err += e
    value += sum(phi.taylor(k - 1) / (lam + k) for k in range(1, m + 1))
    return value, err


def regularized_tplus(lam: float, phi, m: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    r"""The regularized pairing :math:`\langle t_+^\lambda, \varphi\rangle` with ``m`` subtracted terms."""
    return _regularized(lam, phi, m, cfg)[0]


def truncated_pairing(lam: float, phi, m: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^inf t^lam (phi - T_m) dt``, the strip form valid for ``-m-1 < lam < -m``."""
    return _integrate_remainder(lam, phi, m, math.inf, cfg)[0]


def tplus_ratio(lam: float, phi, m: int | None = None, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    r""":math:`\langle t_+^\lambda, \varphi\rangle / \Gamma(\lambda + 1)` away from the poles."""
    if m is None:
        m = max(0, math.floor(-lam))
    return regularized_tplus(lam, phi, m, cfg) / gamma_real(lam + 1)


def tplus_residue_check(k: int, phi, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Residue of the pairing at ``lambda = -k``, extrapolated from nearby lambdas.

    Evaluates ``(lam + k) <t_+^lam, phi>`` at ``lam = -k +- 1e-4`` and
    ``-k +- 1e-5``; the symmetric means cancel the linear term and a
    Richardson step the quadratic one.
    """
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")

    def sym(d):
        return 0.5 * (d * regularized_tplus(-k + d, phi, k, cfg) - d * regularized_tplus(-k - d, phi, k, cfg))

    s4, s5 = sym(1e-4), sym(1e-5)
    return (100.0 * s5 - s4) / 99.0


def tplus_over_gamma_at_negative_integer(
    k: int, phi, cfg: QuadratureConfig = DEFAULT_CONFIG, check: bool = True
) -> float:
    r"""Value of :math:`t_+^\lambda/\Gamma(\lambda+1)` at ``lambda = -k``: ``(-1)^(k-1) phi^(k-1)(0)``.

    With ``check`` the closed form is compared against the mean of the
    ratio at ``lambda = -k +- 1e-5``, where both poles cancel.
    """
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    value = (-1) ** (k - 1) * math.factorial(k - 1) * phi.taylor(k - 1)
    if check:
        near = 0.5 * (tplus_ratio(-k + 1e-5, phi, k, cfg) + tplus_ratio(-k - 1e-5, phi, k, cfg))
        if abs(near - value) > 1e-4 * (1 + abs(value)):
            raise InconsistencyError(f"pole cancellation failed at lambda={-k}: {near} vs {value}")
    return value


def _scaled_cfg(cfg: QuadratureConfig, gamma: float) -> QuadratureConfig:
    return replace(cfg, abs_tol=cfg.abs_tol * max(abs(gamma), 1e-300))


def truncated_moment(sf, q: float, m: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """``int_0^inf t^(-q-1) (A(t) - T_m(t)) dt`` and its error estimate.

    Equals ``Gamma(-q) A^(q)(0)`` in the strip ``m-2 < q < m`` (``m`` even)
    and stays finite at odd integers ``q = m - 1``.
    """
    return _integrate_remainder(-q - 1, sf, m, math.inf, cfg)


def fractional_section_derivative(
    sf: SectionFunction,
    q: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    branch: str = "strip",
    m: int | None = None,
    include_odd: bool = False,
) -> FractionalValue:
    """Fractional derivative ``A_xi^(q)(0)`` for real ``q > -1``.

    ``branch="strip"`` subtracts only even Taylor terms with the even ``m``
    satisfying ``m - 2 < q < m`` and integrates over the whole half-line.
    ``branch="general"`` subtracts ``m`` terms on ``(0, 1)`` (default
    ``m = floor(q) + 2``) and adds the pole terms back explicitly. Within
    ``1e-6`` of a non-negative integer ``k`` the classical derivative is
    returned (0 for odd ``k``).
    """
    q = float(q)
    if q <= -1:
        raise DomainError(f"fractional derivative needs q > -1, got {q}")
    k = round(q)
    if k >= 0 and abs(q - k) < INTEGER_WINDOW:
        value = section_derivative_at_zero(sf, k)
        return FractionalValue(q, k, value, 0.0, "integer-limit")
    g = gamma_real(-q)
    qcfg = _scaled_cfg(cfg, g)
    lam = -q - 1
    if branch == "strip":
        mm = 2 * math.floor(q / 2) + 2
        raw, err = _integrate_remainder(lam, sf, mm, math.inf, qcfg, include_odd)
    elif branch == "general":
        mm = math.floor(q) + 2 if m is None else int(m)
        if not q < mm:
            raise InvalidArgumentError(f"general branch needs q < m, got q={q}, m={mm}")
        raw, err = _regularized(lam, sf, mm, qcfg, include_odd)
    else:
        raise InvalidArgumentError(f"unknown branch {branch!r}")
    return FractionalValue(q, mm, raw / g, err / abs(g), branch)


def fractional_rows(values: Sequence[FractionalValue]) -> list[tuple]:
    """Rows ``(q, value, err_est, branch)`` for the CSV emitter."""
    return [(v.q, v.value, v.err_est, v.branch) for v in values]
