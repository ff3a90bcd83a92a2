"""Exact-arithmetic construction and verification of a quasianalytic Swiss cheese."""

from .bounds import BoundQuery, DerivativeBound, InvalidQuery, cauchy_bound, derivative_oracle, star_block_check
from .brackets import PrecisionExhausted
from .certificates import ContinuityCertificate, NotFound, find_certificate, validate_certificate
from .cheesefile import InvariantViolation, MalformedDocument, UnsupportedVersion, emit, parse
from .geometry import QDisc, QPoint, delta, disc_avoids_capsule, enumerate_rational_discs, nth_rational_disc
from .jensen import DiscreteMeasure, TestFamily, jensen_deficit, lp_search, representing_deficit
from .render import RenderOptions, render_svg
from .schedule import CheeseDescription, build_cheese, verify_schedule

__version__ = "0.1.0"

__all__ = [
    "BoundQuery",
    "CheeseDescription",
    "ContinuityCertificate",
    "DerivativeBound",
    "DiscreteMeasure",
    "InvalidQuery",
    "InvariantViolation",
    "MalformedDocument",
    "NotFound",
    "PrecisionExhausted",
    "QDisc",
    "QPoint",
    "RenderOptions",
    "TestFamily",
    "UnsupportedVersion",
    "build_cheese",
    "cauchy_bound",
    "delta",
    "derivative_oracle",
    "disc_avoids_capsule",
    "emit",
    "enumerate_rational_discs",
    "find_certificate",
    "jensen_deficit",
    "lp_search",
    "nth_rational_disc",
    "parse",
    "render_svg",
    "representing_deficit",
    "star_block_check",
    "validate_certificate",
    "verify_schedule",
]
