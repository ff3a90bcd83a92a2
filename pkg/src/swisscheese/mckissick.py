"""Disc systems inside a parent disc, with an optional analytic witness.

The geometric part is exact: a family of pairwise disjoint open discs whose
closures sit inside the open parent and whose radii sum to less than a
budget.  The analytic part (a sequence of rational functions with poles in
the family) is pluggable and only ever checked numerically through
:func:`convergence_report`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .geometry import QDisc, QPoint, Relation, closed_inside_open, disc_relation, separation_exceeds
from .rational import (  # re-exported: the evaluation backend lives beside the witness
    Evaluation,
    PoleAtPoint,
    PoleProximity,
    Poly,
    QComplex,
    RationalFunction,
    eval_rational,
)
from .report import VerificationReport

__all__ = [
    "AnalyticWitness",
    "ConvergenceReport",
    "DiscSystem",
    "Evaluation",
    "GridTouchesUnion",
    "PoleAtPoint",
    "PoleCertificate",
    "PoleProximity",
    "RationalFunction",
    "build_disc_system",
    "check_pole_certificates",
    "convergence_report",
    "eval_rational",
    "geometric_series_witness",
    "spiral_point",
    "validate_disc_system",
]


class GridTouchesUnion(ValueError):
    """A grid point lies in, or too close to, one of the deleted discs."""


@dataclass(frozen=True)
class DiscSystem:
    parent: QDisc
    budget: Fraction
    discs: tuple[QDisc, ...]
    radius_sum: Fraction


def spiral_point(k: int) -> tuple[Fraction, Fraction]:
    """Rational point on the unit circle for the k-th disc of a system."""
    t = Fraction(k - 1, 3)
    s = 1 + t * t
    return (1 - t * t) / s, 2 * t / s


def build_disc_system(parent: QDisc, budget: Fraction, count: int) -> DiscSystem:
    """Place ``count`` disjoint open discs inside ``parent`` with radius sum < ``budget``.

    Disc k sits on the circle of radius R(1 - 3/2^(k+1)) about the parent's
    centre, in the direction :func:`spiral_point` (k), with radius
    min(budget/2^(k+1), R/2^(k+2)).  Consecutive shells are 3R/2^(k+2) apart,
    which keeps discs disjoint whatever their angles; the exact checks below
    halve a radius if that ever failed.
    """
    budget = Fraction(budget)
    if budget <= 0:
        raise ValueError("budget must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    R = parent.radius
    c = parent.center
    opened = parent.interior()
    discs: list[QDisc] = []
    for k in range(1, count + 1):
        shell = R * (1 - Fraction(3, 2 ** (k + 1)))
        cos, sin = spiral_point(k)
        center = QPoint(c.x + shell * cos, c.y + shell * sin)
        r = min(budget / 2 ** (k + 1), R / 2 ** (k + 2))
        while True:
            d = QDisc(center, r, "open")
            if closed_inside_open(d, opened) and all(
                disc_relation(d.closure(), e.closure()) == Relation.DISJOINT for e in discs
            ):
                break
            r /= 2
        discs.append(d)
    return DiscSystem(parent, budget, tuple(discs), sum((d.radius for d in discs), Fraction(0)))


def validate_disc_system(s: DiscSystem) -> VerificationReport:
    report = VerificationReport("disc system")
    total = sum((d.radius for d in s.discs), Fraction(0))
    report.add("radius sum recorded", total == s.radius_sum, f"{total} vs {s.radius_sum}")
    report.add("budget", total < s.budget, f"sum {total} < {s.budget}")
    opened = s.parent.interior()
    outside = [i for i, d in enumerate(s.discs, 1) if not closed_inside_open(d, opened)]
    report.add("containment", not outside, f"outside parent: {outside}" if outside else "all inside")
    clashes = [
        (i, j)
        for (i, a), (j, b) in combinations(enumerate(s.discs, 1), 2)
        if disc_relation(a.interior(), b.interior()) != Relation.DISJOINT
    ]
    report.add("disjointness", not clashes, f"overlapping pairs: {clashes}" if clashes else "pairwise disjoint")
    return report


# -- analytic witness ---------------------------------------------------------


@dataclass(frozen=True)
class PoleCertificate:
    """An exact box [x0, x1] x [y0, y1] holding a pole of given multiplicity."""

    box: tuple[Fraction, Fraction, Fraction, Fraction]
    disc_index: int
    multiplicity: int = 1


@dataclass
class AnalyticWitness:
    system: DiscSystem
    sequence: list[RationalFunction]
    pole_certificates: list[list[PoleCertificate]] = field(default_factory=list)


def _box_corners(box):
    x0, x1, y0, y1 = box
    return [QPoint(x, y) for x in (x0, x1) for y in (y0, y1)]


def check_pole_certificates(w: AnalyticWitness) -> VerificationReport:
    """Every certified box lies in its disc; degenerate boxes are exact roots
    whose multiplicities account for the whole denominator."""
    report = VerificationReport("pole certificates")
    if len(w.pole_certificates) != len(w.sequence):
        report.add("coverage", False, "one certificate list per approximant required")
        return report
    for n, (f, certs) in enumerate(zip(w.sequence, w.pole_certificates)):
        ok = True
        notes = []
        for cert in certs:
            if not 1 <= cert.disc_index <= len(w.system.discs):
                ok = False
                notes.append(f"bad disc index {cert.disc_index}")
                continue
            disc = w.system.discs[cert.disc_index - 1]
            # discs are convex, so corners suffice
            if not all(disc.contains_open(p) for p in _box_corners(cert.box)):
                ok = False
                notes.append(f"box {cert.box} not inside disc {cert.disc_index}")
        degenerate = all(c.box[0] == c.box[1] and c.box[2] == c.box[3] for c in certs)
        if degenerate:
            den = f.denominator
            for cert in certs:
                root = Poly.linear_root(QComplex(cert.box[0], cert.box[2])) ** cert.multiplicity
                den, rem = den.divmod(root)
                if not rem.is_zero():
                    ok = False
                    notes.append(f"{cert.box[0]}+{cert.box[2]}i is not a root of that multiplicity")
            if den.degree > 0:
                ok = False
                notes.append("denominator has uncertified roots")
        report.add(f"approximant {n}", ok, "; ".join(notes) or "poles certified")
    return report


def geometric_series_witness(system: DiscSystem, terms: int, index: int = 1,
                             ratio: Fraction = Fraction(1, 2)) -> AnalyticWitness:
    """Partial sums of sum_j (q r / (z - c))^j for the disc (c, r) = Delta_index.

    Off the disc the terms have modulus <= q = ``ratio`` < 1, so the partial
    sums converge uniformly on C minus that disc to 1/(1 - q r/(z - c)).
    This is a demonstration witness for the numerical machinery, not a
    vanishing/nonvanishing function of the kind the construction needs.
    """
    disc = system.discs[index - 1]
    a = QComplex.of(ratio * disc.radius)
    lin = Poly.linear_root(QComplex.of(disc.center))
    box = (disc.center.x, disc.center.x, disc.center.y, disc.center.y)
    seq = [RationalFunction(Poly.const(1))]
    certs: list[list[PoleCertificate]] = [[]]
    for n in range(1, terms):
        # sum_{j<=n} a^j (z-c)^(n-j) over (z-c)^n
        num = Poly()
        for j in range(n + 1):
            num = num + (lin ** (n - j)) * (a ** j)
        seq.append(RationalFunction(num, lin ** n))
        certs.append([PoleCertificate(box, index, n)])
    return AnalyticWitness(system, seq, certs)


@dataclass
class ConvergenceReport:
    successive_differences: list[float]
    max_outside_parent: float | None
    min_inside_parent: float | None
    points_outside_parent: int
    points_inside_parent: int

    def to_dict(self) -> dict:
        return {
            "successive_differences": self.successive_differences,
            "max_outside_parent": self.max_outside_parent,
            "min_inside_parent": self.min_inside_parent,
            "points_outside_parent": self.points_outside_parent,
            "points_inside_parent": self.points_inside_parent,
        }


def convergence_report(w: AnalyticWitness, grid: list[QPoint], margin: Fraction = Fraction(0)) -> ConvergenceReport:
    """Numerical diagnostics of a witness on a grid.

    Every grid point must be farther than ``margin`` from each closed disc
    of the system.  Nothing is asserted here; thresholds belong to callers.
    """
    for z in grid:
        for i, d in enumerate(w.system.discs, 1):
            if not separation_exceeds(z, d, margin):
                raise GridTouchesUnion(f"grid point {z} within {margin} of disc {i}")
    if not grid:
        return ConvergenceReport([], None, None, 0, 0)
    values = [[eval_rational(f, z).value for z in grid] for f in w.sequence]
    diffs = [max(abs(b - a) for a, b in zip(u, v)) for u, v in zip(values, values[1:])]
    last = values[-1] if values else []
    outside = [abs(v) for z, v in zip(grid, last) if not w.system.parent.contains_closed(z)]
    inside = [abs(v) for z, v in zip(grid, last) if w.system.parent.contains_open(z)]
    return ConvergenceReport(
        diffs,
        max(outside) if outside else None,
        min(inside) if inside else None,
        len(outside),
        len(inside),
    )

