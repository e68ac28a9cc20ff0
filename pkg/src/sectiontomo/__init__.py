"""Fourier analysis of star bodies through parallel section functions."""

from __future__ import annotations

from .certify import Certificate, bp_integral, bp_threshold, certify_intersection, intersection_test_value
from .errors import (
    AccuracyError,
    ConfigError,
    DomainError,
    InconsistencyError,
    InvalidArgumentError,
    PoleError,
    RedirectError,
    SectionTomoError,
    UnsupportedError,
)
from .fourier import FourierValue, ball_power_ft, radial_power_ft, radial_power_ft_odd
from .fracderiv import FractionalValue, fractional_section_derivative, regularized_tplus
from .geometry import Ball, Direction, Ellipsoid, RadialTable, RevolutionQuartic, StarBody, body_from_config
from .numerics import DEFAULT_CONFIG, QuadratureConfig
from .radon import SphericalFunction, inverse_radon_3d, spherical_radon
from .sections import SectionFunction, section_function

__all__ = [
    "AccuracyError",
    "Ball",
    "Certificate",
    "ConfigError",
    "DEFAULT_CONFIG",
    "Direction",
    "DomainError",
    "Ellipsoid",
    "FourierValue",
    "FractionalValue",
    "InconsistencyError",
    "InvalidArgumentError",
    "PoleError",
    "QuadratureConfig",
    "RadialTable",
    "RedirectError",
    "RevolutionQuartic",
    "SectionFunction",
    "SectionTomoError",
    "SphericalFunction",
    "StarBody",
    "UnsupportedError",
    "ball_power_ft",
    "body_from_config",
    "bp_integral",
    "bp_threshold",
    "certify_intersection",
    "fractional_section_derivative",
    "intersection_test_value",
    "inverse_radon_3d",
    "radial_power_ft",
    "radial_power_ft_odd",
    "regularized_tplus",
    "section_function",
    "spherical_radon",
]
