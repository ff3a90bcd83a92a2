"""Point-of-continuity certificates for points of the cheese off I.

For z off I choose the first stage n with dist(z, I) > delta_n; then a disc
D_{n,k} of S_n containing z whose closure misses w separates the two points.
The function attached to D_{n,k} by the construction is referenced by (n, k)
only, so certificates stay small and exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (
    QDisc,
    QPoint,
    delta,
    disc_avoids_capsule,
    dist_sq_to_segment,
    first_separating_disc,
    in_open_unit_disc,
    nth_rational_disc,
)
from .schedule import CheeseDescription

DEFAULT_SEARCH_BUDGET = 10_000_000


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class ContinuityCertificate:
    z: QPoint
    w: QPoint
    stage: int
    disc: QDisc
    enumeration_index: int


@dataclass(frozen=True)
class NotFound:
    stage: int
    budget: int


def first_stage(z: QPoint) -> int:
    """Smallest n with dist(z, I) > delta_n (z must be off I)."""
    d2 = dist_sq_to_segment(z)
    if d2 == 0:
        raise InvalidInput(f"{z} lies on I")
    n = 1
    while not d2 > delta(n) ** 2:
        n += 1
    return n


def find_certificate(c: CheeseDescription, z: QPoint, w: QPoint,
                     search_budget: int = DEFAULT_SEARCH_BUDGET) -> ContinuityCertificate | NotFound:
    if z == w:
        raise InvalidInput("z and w coincide")
    if not c.contains(z):
        raise InvalidInput(f"{z} is not in the cheese")
    n = first_stage(z)
    hit = first_separating_disc(n, z, w, search_budget)
    if hit is None:
        return NotFound(n, search_budget)
    index, disc = hit
    return ContinuityCertificate(z, w, n, disc, index)


def validate_certificate(c: CheeseDescription, cert: ContinuityCertificate) -> bool:
    """Exact re-check of a certificate against ``c``."""
    n, disc = cert.stage, cert.disc
    if n < 1 or cert.enumeration_index < 1 or not disc.is_open:
        return False
    return (
        nth_rational_disc(n, cert.enumeration_index) == disc
        and disc.contains_open(cert.z)
        and not disc.contains_closed(cert.w)
        and disc_avoids_capsule(disc, n)
        and in_open_unit_disc(disc)
        and dist_sq_to_segment(cert.z) > delta(n) ** 2
        and c.contains(cert.z)
    )
