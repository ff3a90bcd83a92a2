"""Numerical probe for Jensen and representing measures on a cheese.

A probability measure mu is Jensen for evaluation at x when
log|f(x)| <= integral of log|f| dmu for every f in the algebra.  Here mu is
discrete, f ranges over a finite test family, and non-trivial candidates are
searched for with an exact rational LP.  A zero optimum is evidence, never a
proof, that only the point mass qualifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import QPoint, as_rational
from .lp import Infeasible, simplex_max
from .rational import Poly, QComplex, RationalFunction
from .schedule import CheeseDescription

ROUNDING_SLACK = Fraction(1, 2**40)
_ULP = 2.0**-52


class PoleOnSupport(ZeroDivisionError):
    pass


class InfeasibleGrid(ValueError):
    pass


class InvalidMeasure(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteMeasure:
    support: tuple[QPoint, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", tuple(as_rational(w) for w in self.weights))
        if len(self.support) != len(self.weights):
            raise InvalidMeasure("support and weights differ in length")
        if any(w < 0 for w in self.weights):
            raise InvalidMeasure("negative weight")
        if sum(self.weights, Fraction(0)) != 1:
            raise InvalidMeasure("weights must sum to exactly 1")
        if len(set(self.support)) != len(self.support):
            raise InvalidMeasure("support points must be distinct")

    @classmethod
    def point_mass(cls, x: QPoint) -> DiscreteMeasure:
        return cls((x,), (Fraction(1),))

    @classmethod
    def uniform(cls, points) -> DiscreteMeasure:
        points = tuple(points)
        w = Fraction(1, len(points))
        return cls(points, (w,) * len(points))

    def check_support(self, c: CheeseDescription) -> None:
        outside = [z for z in self.support if not c.contains(z)]
        if outside:
            raise InvalidMeasure(f"{len(outside)} support points outside the cheese, e.g. {outside[0]}")

    def off_mass(self, x: QPoint) -> Fraction:
        return sum((w for z, w in zip(self.support, self.weights) if z != x), Fraction(0))


@dataclass(frozen=True)
class TestFamily:
    functions: tuple[RationalFunction, ...]
    pole_clearance: Fraction = Fraction(1)

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.pole_clearance <= 0:
            raise ValueError("pole clearance must be positive")

    @classmethod
    def translates(cls, centers) -> TestFamily:
        """The polynomials z - a; having no poles, any positive clearance holds."""
        return cls(tuple(RationalFunction(Poly.linear_root(a)) for a in centers))


@dataclass(frozen=True)
class Deficit:
    value: float
    error: float


def uniform_circle_grid(m: int, denominator_limit: int = 2**24) -> list[QPoint]:
    """``m`` rational points on the unit circle near the m-th roots of unity.

    Points in the first quadrant come from t = tan(theta/2) rounded to a
    rational and mapped to ((1-t^2)/(1+t^2), 2t/(1+t^2)); the other quadrants
    are exact quarter turns, so the grid is invariant under z -> iz.
    """
    if m < 4 or m % 4:
        raise ValueError("grid size must be a positive multiple of 4")
    quarter = []
    for j in range(m // 4):
        t = Fraction(math.tan(math.pi * j / m)).limit_denominator(denominator_limit)
        s = 1 + t * t
        quarter.append(((1 - t * t) / s, 2 * t / s))
    points = []
    for x, y in quarter:
        points.append(QPoint(x, y))
    for x, y in quarter:
        points.append(QPoint(-y, x))
    for x, y in quarter:
        points.append(QPoint(-x, -y))
    for x, y in quarter:
        points.append(QPoint(y, -x))
    return points


def _value(f: RationalFunction, z: QPoint) -> QComplex:
    zc = QComplex.of(z)
    den = f.denominator(zc)
    if not den:
        raise PoleOnSupport(f"pole at {z}")
    return f.numerator(zc) / den


def _log_abs(v: QComplex) -> float:
    n2 = v.abs_sq()
    return 0.5 * (math.log(n2.numerator) - math.log(n2.denominator))


def jensen_deficit(mu: DiscreteMeasure, x: QPoint, f: RationalFunction) -> Deficit:
    """sum_i w_i log|f(z_i)| - log|f(x)|; nonnegative means the inequality holds for f."""
    fx = _value(f, x)
    vals = [_value(f, z) for z in mu.support]
    if not fx:
        return Deficit(math.inf, 0.0)
    lx = _log_abs(fx)
    total = 0.0
    scale = abs(lx)
    for v, w in zip(vals, mu.weights):
        if not w:
            continue
        if not v:
            return Deficit(-math.inf, 0.0)
        lv = _log_abs(v)
        total += float(w) * lv
        scale += float(w) * abs(lv)
    return Deficit(total - lx, 8 * _ULP * (scale + len(vals)))


def representing_deficit(mu: DiscreteMeasure, x: QPoint, f: RationalFunction) -> float:
    """|sum_i w_i f(z_i) - f(x)|, accumulated exactly and rounded once."""
    acc = -_value(f, x)
    for z, w in zip(mu.support, mu.weights):
        if w:
            acc = acc + _value(f, z) * w
    return math.sqrt(acc.abs_sq())


@dataclass
class SearchResult:
    optimum: Fraction
    witness: DiscreteMeasure
    constraints: int
    vacuous: int
    evidence: str
    rounding_slack: Fraction = field(default=ROUNDING_SLACK)

    def to_dict(self) -> dict:
        return {
            "optimum": str(self.optimum),
            "constraints": self.constraints,
            "vacuous_constraints": self.vacuous,
            "rounding_slack": str(self.rounding_slack),
            "evidence": self.evidence,
            "witness": [
                {"x": str(z.x), "y": str(z.y), "weight": str(w)}
                for z, w in zip(self.witness.support, self.witness.weights)
                if w
            ],
        }


def lp_search(c: CheeseDescription, x: QPoint, grid: list[QPoint], family: TestFamily,
              objective: str = "max_mass_off_x") -> SearchResult:
    """Maximise the mass off ``x`` over discrete Jensen candidates on ``grid``.

    Each test function f contributes sum_i w_i D_i >= 0 with
    D_i = log|f(z_i)| - log|f(x)| replaced by a rational lower bracket
    (the constraint is made harder), so a positive optimum survives rounding.
    The column of x itself has D = 0 exactly, keeping the point mass feasible.
    """
    if objective != "max_mass_off_x":
        raise ValueError(f"unknown objective {objective!r}")
    grid = list(grid)
    if len(set(grid)) != len(grid):
        raise InvalidMeasure("grid points must be distinct")
    if x not in grid:
        raise InfeasibleGrid("x is not a grid point, so the point mass is not available")
    for z in grid:
        if not c.contains(z):
            raise InvalidMeasure(f"grid point {z} is not in the cheese")
    allowed = [True] * len(grid)
    rows: list[list[Fraction]] = []
    vacuous = 0
    for f in family.functions:
        fx = _value(f, x)
        vals = [_value(f, z) for z in grid]
        if not fx:
            vacuous += 1
            continue
        lx = _log_abs(fx)
        row = []
        for i, (z, v) in enumerate(zip(grid, vals)):
            if z == x:
                row.append(Fraction(0))
            elif not v:
                allowed[i] = False  # log|f| = -inf there
                row.append(Fraction(0))
            else:
                lv = _log_abs(v)
                row.append(Fraction(lv - lx) - ROUNDING_SLACK * (1 + Fraction(abs(lv)) + Fraction(abs(lx))))
        rows.append(row)
    cols = [i for i, ok in enumerate(allowed) if ok]
    k = len(rows)
    A = []
    for j, row in enumerate(rows):
        surplus = [Fraction(0)] * k
        surplus[j] = Fraction(-1)
        A.append([row[i] for i in cols] + surplus)
    A.append([Fraction(1)] * len(cols) + [Fraction(0)] * k)
    b = [Fraction(0)] * k + [Fraction(1)]
    cost = [Fraction(0) if grid[i] == x else Fraction(1) for i in cols] + [Fraction(0)] * k
    try:
        sol = simplex_max(cost, A, b)
    except Infeasible as exc:  # cannot happen while x is a grid point
        raise InfeasibleGrid(str(exc)) from exc
    weights = [Fraction(0)] * len(grid)
    for pos, i in enumerate(cols):
        weights[i] = sol.x[pos]
    witness = DiscreteMeasure(tuple(grid), tuple(weights))
    if sol.value == 0:
        evidence = ("optimum 0: only the point mass passes this grid and family; "
                    "evidence toward triviality, not a proof")
    else:
        evidence = (f"optimum {sol.value}: a measure with mass {sol.value} off x satisfies every "
                    f"rounded constraint; non-trivial for this grid and family")
    return SearchResult(sol.value, witness, k, vacuous, evidence)
