"""Oracle cross-validation: every routine checked against an independent value.

Oracles are closed forms (Gamma/Beta expressions, elementary integrals,
polynomial roots) computed here without the code path under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from . import certify, fourier, fracderiv, geometry, numerics, radon, sections
from .geometry import Ball, Direction, Ellipsoid, RevolutionQuartic
from .numerics import DEFAULT_CONFIG, QuadratureConfig

__all__ = ["Check", "ball_fractional_oracle", "run_selfcheck", "CHECKS"]


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    expected: float
    tol: float
    relative: bool = False

    @property
    def error(self) -> float:
        diff = abs(self.value - self.expected)
        return diff / abs(self.expected) if self.relative and self.expected != 0 else diff

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        kind = "rel" if self.relative else "abs"
        return (
            f"{status}  {self.name}: got {self.value:.12g}, expected {self.expected:.12g} "
            f"({kind} err {self.error:.2e} <= {self.tol:.0e})"
        )


def ball_fractional_oracle(n: int, q: float) -> float:
    """``A^(q)(0)`` of the unit ``n``-ball by Beta-function continuation.

    ``kappa_(n-1) sqrt(pi) 2^q Gamma((n+1)/2) / (Gamma((1-q)/2) Gamma((n+1-q)/2))``.
    """
    kappa = math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2 + 1)
    return (
        kappa * math.sqrt(math.pi) * 2.0**q * math.gamma((n + 1) / 2)
        * special.rgamma((1 - q) / 2) * special.rgamma((n + 1 - q) / 2)
    )


def _quartic_radial_by_roots(epsilon: float, u) -> float:
    """Radius along ``u`` from the roots of the boundary polynomial in ``s = r^2``."""
    u = np.asarray(u, dtype=float)
    a = float(np.sum(u[:4] ** 2)) ** 2 + epsilon * u[4] ** 4
    b = u[4] ** 2
    roots = np.roots([a, b, -1.0])
    s = max(r.real for r in roots if abs(r.imag) < 1e-14 and r.real > 0)
    return math.sqrt(s)


def _checks_geometry(cfg):
    a09 = geometry.quartic_axis_length(0.9)
    body = RevolutionQuartic(0.9)
    e5 = Direction.axis(5, 4)
    u = np.array([1, 0, 0, 0, 1]) / math.sqrt(2)
    yield Check("quartic gauge at (0,0,0,0,a_0.9) = 1", float(body.gauge([0, 0, 0, 0, a09])[0]), 1.0, 1e-10)
    yield Check("quartic radial e5, eps=0.9 = a_0.9", float(body.radial(e5.coordinates)[0]), a09, 1e-10)
    yield Check(
        "quartic radial (e1+e5)/sqrt2, eps=0.5 vs polynomial roots",
        float(RevolutionQuartic(0.5).radial(u)[0]),
        _quartic_radial_by_roots(0.5, u),
        1e-10,
    )
    yield Check("profile concavity eps=0.5, 101 points", float(geometry.profile_concavity_check(0.5, 101)), 1.0, 0)


def _checks_numerics(cfg):
    yield Check("vol(B^4) = pi^2/2", numerics.unit_ball_volume(4), math.pi**2 / 2, 1e-14, True)
    rule = numerics.sphere_rule(2, cfg.sphere_nodes)
    yield Check("int_{S^2} u1^2 = 4 pi/3", rule.integrate(lambda x: x[:, 0] ** 2), 4 * math.pi / 3, 1e-12, True)
    for eps in (0.9, 0.5):
        a = numerics.bisect_root(lambda t: 1 - t * t - eps * t**4, 0.0, 1.0, 1e-13)
        closed = math.sqrt((math.sqrt(1 + 4 * eps) - 1) / (2 * eps))
        yield Check(f"bisection root of 1-a^2-{eps}a^4", a, closed, 1e-11)


def _checks_sections(cfg):
    sf = sections.section_function(RevolutionQuartic(0.9), Direction.axis(5, 4), cfg)
    yield Check(
        "quartic A(0.5), eps=0.9", float(sf(0.5)), math.pi**2 / 2 * (1 - 0.25 - 0.9 * 0.0625), 1e-12, True
    )
    num = sections.section_function(Ball(3), Direction.axis(3, 2), cfg, engine="numerical")
    yield Check("ball n=3 numerical engine A(0.6)", float(num(0.6)), math.pi * 0.64, 1e-7, True)
    sf4 = sections.section_function(Ball(4), Direction.axis(4, 3), cfg)
    yield Check("ball n=4 A''(0) = -4 pi", sections.section_derivative_at_zero(sf4, 2), -4 * math.pi, 1e-12, True)
    for eps in (0.2, 0.9):
        sq = sections.section_function(RevolutionQuartic(eps), Direction.axis(5, 4), cfg)
        yield Check(f"quartic A''(0) = -pi^2, eps={eps}", sections.section_derivative_at_zero(sq, 2), -math.pi**2, 1e-12, True)
    yield Check("scaling xi=2e3, z=0", sections.section_scaling_check(Ball(3), [0, 0, 2], 0.0, cfg), math.pi / 2, 1e-12, True)
    yield Check(
        "scaling xi=2e3, z=1", sections.section_scaling_check(Ball(3), [0, 0, 2], 1.0, cfg), 0.5 * math.pi * 0.75, 1e-12, True
    )


def _checks_fracderiv(cfg):
    gauss = fracderiv.gaussian()
    yield Check(
        "<t_+^-1.5, gaussian>", fracderiv.regularized_tplus(-1.5, gauss, 1, cfg), 2**-1.25 * math.gamma(-0.25), 1e-9, True
    )
    bump = fracderiv.compact_polynomial([1.0, 0.0, -2.0, 0.0, 1.0])
    # -2 int_0^1 t^-0.5 + int_0^1 t^1.5 - int_1^inf t^-2.5
    yield Check("<t_+^-2.5, (1-t^2)_+^2>", fracderiv.regularized_tplus(-2.5, bump, 2, cfg), -4 + 0.4 - 2 / 3, 1e-9, True)
    yield Check("residue k=1, gaussian", fracderiv.tplus_residue_check(1, gauss, cfg), 1.0, 1e-5)
    yield Check("residue k=3, gaussian", fracderiv.tplus_residue_check(3, gauss, cfg), -0.5, 1e-5)
    yield Check("t_+^lam/Gamma at -1, gaussian", fracderiv.tplus_over_gamma_at_negative_integer(1, gauss, cfg), 1.0, 1e-12)
    yield Check("t_+^lam/Gamma at -3, gaussian", fracderiv.tplus_over_gamma_at_negative_integer(3, gauss, cfg), -1.0, 1e-12)
    for n, q, tol in ((3, -0.5, 1e-9), (3, 2.0, 1e-12), (5, 1.5, 1e-7)):
        sf = sections.section_function(Ball(n), Direction.axis(n, n - 1), cfg)
        value = fracderiv.fractional_section_derivative(sf, q, cfg).value
        yield Check(f"ball n={n} A^({q})(0) vs Beta oracle", value, ball_fractional_oracle(n, q), tol, True)


def _checks_fourier(cfg):
    yield Check("FT |z|^-0.5 at t=1", fourier.ft_abs_power(-0.5, 1.0), math.sqrt(2 * math.pi), 1e-14, True)
    yield Check("FT |z|^-0.5 at t=4", fourier.ft_abs_power(-0.5, 4.0), math.sqrt(2 * math.pi) / 2, 1e-14, True)
    yield Check("FT |z|^0.5 at t=1", fourier.ft_abs_power(0.5, 1.0), -math.sqrt(2 * math.pi) / 2, 1e-14, True)
    for n in (2, 3):
        lhs, rhs = fourier.gaussian_slab_check(n, -0.5, cfg=cfg)
        closed = (2 * math.pi) ** ((n - 1) / 2) * 2**0.25 * math.gamma(0.25)
        yield Check(f"Gaussian slab identity n={n}, q=-0.5: lhs", lhs, closed, 1e-14, True)
        yield Check(f"Gaussian slab identity n={n}, q=-0.5: rhs", rhs, closed, 1e-8, True)
    e = lambda n: Direction.axis(n, n - 1)
    yield Check("thm1a ball n=4, q=2", fourier.radial_power_ft(Ball(4), 2, e(4), cfg).value, 4 * math.pi**2, 1e-10, True)
    classical = 2**0.5 * math.pi**1.5 * math.gamma(0.25) / math.gamma(1.25)
    yield Check("thm2 ball n=3, q=-0.5", fourier.radial_power_ft(Ball(3), -0.5, e(3), cfg).value, classical, 1e-8, True)
    yield Check("thm1a ball n=5, q=0", fourier.radial_power_ft(Ball(5), 0, e(5), cfg).value, 2 * math.pi**3, 1e-10, True)
    yield Check("thm1b ball n=3, k=1", fourier.radial_power_ft_odd(Ball(3), 1, e(3), cfg).value, 4 * math.pi, 1e-10, True)
    yield Check("thm1b ball n=5, k=3", fourier.radial_power_ft_odd(Ball(5), 3, e(5), cfg).value, 16 * math.pi**2, 1e-10, True)
    yield Check(
        "thm1b quartic eps=0.9, k=3",
        fourier.radial_power_ft_odd(RevolutionQuartic(0.9), 3, e(5), cfg).value,
        12 * certify.bp_integral_closed_form(0.9),
        1e-9,
        True,
    )
    for t in (math.pi, 2 * math.pi):
        lhs, _ = fourier.slice_relation_check(3, t, cfg)
        expected = 4 * math.pi * (math.sin(t) - t * math.cos(t)) / t**3
        yield Check(f"slice relation n=3, t={t:.6g}", lhs, expected, 1e-9)


def _checks_certify(cfg):
    xi4 = np.ones(4) / 2
    xi5 = np.ones(5) / math.sqrt(5)
    yield Check("intersection test ball n=4", certify.intersection_test_value(Ball(4), xi4, cfg), 4 * math.pi**2, 1e-10, True)
    yield Check("intersection test ball n=5", certify.intersection_test_value(Ball(5), xi5, cfg), 16 * math.pi**2, 1e-10, True)
    yield Check(
        "intersection test quartic eps=0.9, e5",
        certify.intersection_test_value(RevolutionQuartic(0.9), Direction.axis(5, 4), cfg),
        12 * certify.bp_integral_closed_form(0.9),
        1e-9,
        True,
    )
    for eps in (0.9, 0.5):
        yield Check(f"bp_integral({eps}) vs closed form", certify.bp_integral(eps, cfg), certify.bp_integral_closed_form(eps), 1e-10)
    yield Check("bp_integral(0.75) = 0", certify.bp_integral(0.75, cfg), 0.0, 1e-6)
    threshold = certify.bp_threshold(cfg)
    yield Check("bp_threshold = 3/4", threshold, 0.75, 1e-3)
    yield Check("bp_integral(threshold + 0.1) < 0", float(certify.bp_integral(threshold + 0.1, cfg) < 0), 1.0, 0)
    yield Check("bp_integral(threshold - 0.1) > 0", float(certify.bp_integral(threshold - 0.1, cfg) > 0), 1.0, 0)
    cert = certify.certify_intersection(RevolutionQuartic(0.9), 10, cfg)
    ok = cert.verdict == "refuted" and cert.witness_xi == Direction.axis(5, 4)
    yield Check("certify quartic eps=0.9: refuted at e5", float(ok), 1.0, 0)
    cert = certify.certify_intersection(Ellipsoid((1.0, 1.0, 1.0, 2.0)), 50, cfg)
    yield Check("certify ellipsoid (1,1,1,2): positive-on-sample", float(cert.verdict == "positive-on-sample"), 1.0, 0)


def _checks_radon(cfg):
    f = radon.SphericalFunction(3, lambda u: u[:, 0] ** 2)
    lhs, rhs = radon.radon_duality_check([([0, 0, 1], 1.0)], f, cfg)
    yield Check("duality delta_e3, u1^2: <R mu, f>", lhs, math.pi, 1e-12, True)
    yield Check("duality delta_e3, u1^2: <mu, R f>", rhs, math.pi, 1e-12, True)
    e3 = Direction.axis(3, 2)
    yield Check("inverse Radon, unit ball", radon.inverse_radon_3d(Ball(3), e3, cfg), 1 / (2 * math.pi), 1e-12, True)
    yield Check("inverse Radon, ball radius 2", radon.inverse_radon_3d(Ball(3, 2.0), e3, cfg), 1 / math.pi, 1e-12, True)
    lhs, rhs = radon.radon_fourier_relation_check(Ball(3), e3, cfg)
    yield Check("8 pi^2 R^-1 rho, unit ball", lhs, 4 * math.pi, 1e-10, True)
    yield Check("rho^ by thm1b, unit ball", rhs, 4 * math.pi, 1e-10, True)
    lhs2, rhs2 = radon.radon_fourier_relation_check(Ball(3, 2.0), e3, cfg)
    yield Check("Radon relation scales by 2 (lhs)", lhs2, 2 * lhs, 1e-10, True)
    yield Check("Radon relation scales by 2 (rhs)", rhs2, 2 * rhs, 1e-10, True)
    density = radon.SphericalFunction.constant(3, 1 / (2 * math.pi))
    yield Check("R of density 1/(2 pi) = 1", radon.spherical_radon(density, e3, cfg), 1.0, 1e-9)


CHECKS: tuple[Callable, ...] = (
    _checks_geometry,
    _checks_numerics,
    _checks_sections,
    _checks_fracderiv,
    _checks_fourier,
    _checks_certify,
    _checks_radon,
)


def run_selfcheck(cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[Check]:
    results = []
    for group in CHECKS:
        results.extend(group(cfg))
    return results
