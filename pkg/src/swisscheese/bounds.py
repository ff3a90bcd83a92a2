"""Cauchy derivative bounds on a cheese, an exact derivative oracle, and the
block checker for divergence of sum A_k^(-1/k).

For a cheese X obtained by deleting open discs (c_j, r_j) from the closed
unit disc, Cauchy's formula over the boundary circles gives, for z in X,

    |f^(k)(z)| <= k! * sum_{j>=0} r_j / s_j^(k+1) * |f|_X

with r_0 = 1, s_0 = 1 - |z| and s_j = |z - c_j| - r_j.  Note the radius
factor r_j: each circle contributes its length 2 pi r_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .brackets import DEFAULT_PRECISION, MAX_PRECISION, PrecisionExhausted, inverse_root_bracket, sqrt_bracket
from .geometry import QPoint
from .rational import PoleAtPoint, QComplex, RationalFunction
from .report import VerificationReport
from .schedule import BoundTable, accumulated_term

__all__ = [
    "BoundQuery",
    "DerivativeBound",
    "InvalidQuery",
    "PrecisionExhausted",
    "cauchy_bound",
    "derivative_oracle",
    "derivative_function",
    "stage_bound_formula",
    "star_block_check",
]


class InvalidQuery(ValueError):
    pass


@dataclass(frozen=True)
class BoundQuery:
    z: QPoint
    k: int
    root_precision: int = DEFAULT_PRECISION


@dataclass(frozen=True)
class DerivativeBound:
    value_upper: Fraction
    terms_used: int
    tail_note: str
    precision: int


def _lower_distance(sq: Fraction, radius: Fraction, t: int) -> tuple[Fraction, int]:
    """Positive lower bracket of sqrt(sq) - radius, refining t as needed."""
    while t <= MAX_PRECISION:
        lo, _ = sqrt_bracket(sq, t)
        s = lo - radius
        if s > 0:
            return s, t
        t *= 2
    raise PrecisionExhausted(f"distance {float(sq) ** 0.5 - float(radius):.3e} too small to bracket")


def cauchy_bound(c, q: BoundQuery) -> DerivativeBound:
    """Certified upper bound on k! * sum_j r_j / s_j^(k+1) at ``q.z``."""
    z, k = q.z, q.k
    if k < 0:
        raise InvalidQuery("derivative order must be >= 0")
    nz = z.norm_sq()
    if nz >= 1:
        raise InvalidQuery(f"{z} is not inside the open unit disc")
    t_used = q.root_precision
    # s_0 = 1 - |z|, bracketing |z| from above
    while True:
        _, hi = sqrt_bracket(nz, t_used)
        s0 = 1 - hi
        if s0 > 0:
            break
        t_used *= 2
        if t_used > MAX_PRECISION:
            raise PrecisionExhausted("|z| too close to 1")
    total = 1 / s0 ** (k + 1)
    for i, d in enumerate(c.deletions):
        disc = d.disc
        sq = z.dist_sq(disc.center)
        if sq <= disc.radius * disc.radius:
            raise InvalidQuery(f"{z} lies in the closure of deletion {i}")
        s, t = _lower_distance(sq, disc.radius, q.root_precision)
        t_used = max(t_used, t)
        total += disc.radius / s ** (k + 1)
    note = (f"{len(c.deletions)} materialised deletions plus the outer circle; "
            f"deletions beyond the truncation are not included")
    return DerivativeBound(factorial(k) * total, 1 + len(c.deletions), note, t_used)


def derivative_function(f: RationalFunction, k: int) -> RationalFunction:
    """f^(k) by repeated quotient rule, kept in the form P_k / D^(k+1).

    With f = N/D: P_0 = N and P_{j+1} = P_j' D - (j+1) P_j D'.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if k == 0:
        return f
    d = f.denominator
    dd = d.derivative()
    p = f.numerator
    for j in range(k):
        p = p.derivative() * d - p * dd * (j + 1)
    return RationalFunction(p, d ** (k + 1))


def derivative_oracle(f: RationalFunction, z: QPoint, k: int) -> QComplex:
    """Exact f^(k)(z) in Q + iQ."""
    zc = QComplex.of(z)
    if not f.denominator(zc):
        raise PoleAtPoint(f"denominator vanishes at {z}")
    return derivative_function(f, k).exact(zc)


def stage_bound_formula(state, m: int, n: int) -> Fraction:
    """n! T_m(n): the closed-form bound valid at points of I after stage m."""
    return factorial(n) * accumulated_term(state, n, m)


def star_block_check(table: BoundTable, precision: int = DEFAULT_PRECISION) -> VerificationReport:
    """Certify, block by block, that sum A_k^(-1/k) >= 1 over (N_{j-1}, N_j]."""
    report = VerificationReport("condition (*) blocks")
    if not table.block_boundaries:
        raise ValueError("table has no complete block")
    for j, (start, end) in enumerate(table.blocks(), start=1):
        t = precision
        while True:
            lower = upper = Fraction(0)
            for n in range(start + 1, end + 1):
                lo, hi = inverse_root_bracket(table.entries[n], n, t)
                lower += lo
                upper += hi
            if lower >= 1 or upper < 1:
                break
            t *= 2
            if t > MAX_PRECISION:
                raise PrecisionExhausted(f"block {j} undecided at precision {MAX_PRECISION}")
        report.add(f"block {j} ({start}, {end}]", lower >= 1,
                   f"certified lower sum {lower.numerator}/{lower.denominator} ~ {float(lower):.9f} (t={t})")
    return report
