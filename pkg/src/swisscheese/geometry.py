"""Exact rational plane geometry.

Points, discs, the interval I = [-1/2, 1/2] x {0}, the protected capsules
K_n = {z : dist(z, I) <= delta_n}, and the enumeration of the disc families
S_n.  Every predicate is decided with squared-distance comparisons over
:class:`fractions.Fraction`; no floating point is used.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from bisect import bisect_left, bisect_right
from math import gcd
from typing import Iterator, Literal

HALF = Fraction(1, 2)
SEGMENT_LEFT = -HALF
SEGMENT_RIGHT = HALF


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and exact decimal strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; pass an int, Fraction or string")
    return Fraction(value)


def height(q: Fraction) -> int:
    """Naive height max(|numerator|, denominator) of a reduced fraction."""
    return max(abs(q.numerator), q.denominator)


def delta(n: int) -> Fraction:
    """Capsule margin 1/(n+2) for stage ``n``."""
    if n < 1:
        raise ValueError(f"stage index must be >= 1, got {n}")
    return Fraction(1, n + 2)


@dataclass(frozen=True, order=True)
class QPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __sub__(self, other: QPoint) -> QPoint:
        return QPoint(self.x - other.x, self.y - other.y)

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def dist_sq(self, other: QPoint) -> Fraction:
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + dy * dy

    def __complex__(self) -> complex:
        return complex(float(self.x), float(self.y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = QPoint(0, 0)


@dataclass(frozen=True)
class QDisc:
    center: QPoint
    radius: Fraction
    kind: Literal["open", "closed"] = "open"

    def __post_init__(self):
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius <= 0:
            raise ValueError(f"disc radius must be positive, got {self.radius}")
        if self.kind not in ("open", "closed"):
            raise ValueError(f"disc kind must be 'open' or 'closed', got {self.kind!r}")

    @property
    def is_open(self) -> bool:
        return self.kind == "open"

    def closure(self) -> QDisc:
        return QDisc(self.center, self.radius, "closed")

    def interior(self) -> QDisc:
        return QDisc(self.center, self.radius, "open")

    def contains(self, z: QPoint) -> bool:
        """Membership respecting the disc's own open/closed semantics."""
        d2 = z.dist_sq(self.center)
        r2 = self.radius * self.radius
        return d2 < r2 if self.is_open else d2 <= r2

    def contains_open(self, z: QPoint) -> bool:
        return z.dist_sq(self.center) < self.radius * self.radius

    def contains_closed(self, z: QPoint) -> bool:
        return z.dist_sq(self.center) <= self.radius * self.radius

    def __str__(self) -> str:
        return f"{self.kind} disc c={self.center} r={self.radius}"


UNIT_DISC = QDisc(ORIGIN, Fraction(1), "closed")


@dataclass(frozen=True)
class Capsule:
    """The closed region K_n of points within delta_n of I."""

    level: int

    @property
    def margin(self) -> Fraction:
        return delta(self.level)

    def contains(self, z: QPoint) -> bool:
        m = self.margin
        return dist_sq_to_segment(z) <= m * m


class Relation(str, Enum):
    DISJOINT = "disjoint"
    A_INSIDE_B = "a_inside_b"
    B_INSIDE_A = "b_inside_a"
    OVERLAPPING = "overlapping"


def dist_sq_to_segment(z: QPoint) -> Fraction:
    """Squared distance from ``z`` to I."""
    cx = min(max(z.x, SEGMENT_LEFT), SEGMENT_RIGHT)
    dx = z.x - cx
    return dx * dx + z.y * z.y


def separation_exceeds(z: QPoint, d: QDisc, q: Fraction) -> bool:
    """True iff dist(z, closed d) > q, i.e. |z - c| > q + r."""
    q = as_rational(q)
    if q < 0:
        raise ValueError("separation threshold must be nonnegative")
    s = q + d.radius
    return z.dist_sq(d.center) > s * s


def disc_avoids_capsule(d: QDisc, n: int) -> bool:
    """True iff the closed disc ``d`` misses K_n: dist(center, I) > r + delta_n."""
    s = d.radius + delta(n)
    return dist_sq_to_segment(d.center) > s * s


def _inside(d2: Fraction, a: QDisc, b: QDisc) -> bool:
    # a subset of b; internal tangency is allowed unless a is closed and b open
    gap = b.radius - a.radius
    if gap < 0:
        return False
    g2 = gap * gap
    if d2 < g2:
        return True
    return d2 == g2 and (a.is_open or not b.is_open)


def disc_relation(a: QDisc, b: QDisc) -> Relation:
    """Classify two discs exactly, resolving tangencies by open/closed semantics."""
    d2 = a.center.dist_sq(b.center)
    if _inside(d2, a, b):
        return Relation.A_INSIDE_B
    if _inside(d2, b, a):
        return Relation.B_INSIDE_A
    s = a.radius + b.radius
    s2 = s * s
    if d2 > s2 or (d2 == s2 and (a.is_open or b.is_open)):
        return Relation.DISJOINT
    return Relation.OVERLAPPING


def closed_inside_open(inner: QDisc, outer: QDisc) -> bool:
    """True iff the closure of ``inner`` lies in the open disc ``outer``."""
    gap = outer.radius - inner.radius
    return gap > 0 and inner.center.dist_sq(outer.center) < gap * gap


def in_open_unit_disc(d: QDisc) -> bool:
    return closed_inside_open(d, QDisc(ORIGIN, Fraction(1), "open"))


# -- enumeration of S_n -------------------------------------------------------
#
# Discs are ordered by height H = max(|num|, den) over (x, y, radius), then by
# (radius, x, y).  Within a level, a fixed (radius, x) is a "row"; its admissible
# y values satisfy Q < y^2 < P for rationals P, Q, so rows are counted by
# bisection instead of materialised.  This makes enumeration indices cheap.


def _coords_of_height(h: int) -> list[Fraction]:
    if h == 1:
        return [Fraction(0)]
    return [Fraction(p, h) for p in range(-h + 1, h) if gcd(p, h) == 1]


def _radii_of_height(h: int) -> list[Fraction]:
    return [Fraction(p, h) for p in range(1, h) if gcd(p, h) == 1]


class _YList:
    """A symmetric sorted list of coordinates, stored by its positive half."""

    def __init__(self, values: list[Fraction]):
        self.pos = sorted(v for v in values if v > 0)
        self.pos_sq = [v * v for v in self.pos]
        self.has_zero = any(v == 0 for v in values)

    def window(self, p: Fraction, q: Fraction) -> tuple[int, int, bool]:
        """Slice bounds of positives with q < y^2 < p, and whether 0 qualifies."""
        hi = bisect_left(self.pos_sq, p)
        lo = bisect_right(self.pos_sq, q) if q >= 0 else 0
        return lo, max(lo, hi), self.has_zero and q < 0 < p

    def ordered(self, lo: int, hi: int, zero: bool) -> list[Fraction]:
        neg = [-v for v in reversed(self.pos[lo:hi])]
        return neg + ([Fraction(0)] if zero else []) + self.pos[lo:hi]


@dataclass
class _Row:
    radius: Fraction
    x: Fraction
    ys: _YList
    lo: int
    hi: int
    zero: bool

    @property
    def count(self) -> int:
        return 2 * (self.hi - self.lo) + int(self.zero)

    def values(self) -> list[Fraction]:
        return self.ys.ordered(self.lo, self.hi, self.zero)


class _Level:
    def __init__(self, n: int, h: int):
        dn = delta(n)
        r_cap = (1 - dn) / 2
        radii = sorted(r for k in range(2, h + 1) for r in _radii_of_height(k) if r < r_cap)
        coords = sorted(c for k in range(1, h + 1) for c in _coords_of_height(k))
        every = _YList(coords)
        top = _YList(_coords_of_height(h))
        self.rows: list[_Row] = []
        self.offsets: list[int] = []
        total = 0
        for r in radii:
            room = 1 - r
            room2 = room * room
            need = r + dn
            need2 = need * need
            r_top = r.denominator == h
            for x in coords:
                ax = abs(x)
                if ax >= room:
                    continue
                ys = every if (r_top or x.denominator == h) else top
                ex = ax - HALF if ax > HALF else Fraction(0)
                lo, hi, zero = ys.window(room2 - x * x, need2 - ex * ex)
                row = _Row(r, x, ys, lo, hi, zero)
                if row.count:
                    self.offsets.append(total)
                    self.rows.append(row)
                    total += row.count
        self.total = total

    def disc(self, i: int) -> QDisc:
        """The ``i``-th (0-based) disc of this level."""
        j = bisect_right(self.offsets, i) - 1
        row = self.rows[j]
        y = row.values()[i - self.offsets[j]]
        return QDisc(QPoint(row.x, y), row.radius, "open")

    def discs(self) -> Iterator[QDisc]:
        for row in self.rows:
            for y in row.values():
                yield QDisc(QPoint(row.x, y), row.radius, "open")


class _Enumeration:
    """Lazily built level tables for one stage index ``n``."""

    def __init__(self, n: int):
        self.n = n
        self.levels: list[_Level] = []
        self.starts: list[int] = []
        self._lock = threading.Lock()

    def level(self, h: int) -> tuple[_Level, int]:
        """Level ``h`` (1-based) and the number of discs in lower levels."""
        with self._lock:
            while len(self.levels) < h:
                start = self.starts[-1] + self.levels[-1].total if self.levels else 0
                self.levels.append(_Level(self.n, len(self.levels) + 1))
                self.starts.append(start)
            return self.levels[h - 1], self.starts[h - 1]

    def disc(self, index: int) -> QDisc:
        """Disc with 1-based enumeration index."""
        h = 1
        while True:
            lvl, start = self.level(h)
            if index <= start + lvl.total:
                return lvl.disc(index - start - 1)
            h += 1

    def __iter__(self) -> Iterator[QDisc]:
        h = 1
        while True:
            lvl, _ = self.level(h)
            yield from lvl.discs()
            h += 1


_ENUMS: dict[int, _Enumeration] = {}
_ENUMS_LOCK = threading.Lock()


def _enumeration(n: int) -> _Enumeration:
    delta(n)
    with _ENUMS_LOCK:
        if n not in _ENUMS:
            _ENUMS[n] = _Enumeration(n)
        return _ENUMS[n]


def iter_rational_discs(n: int) -> Iterator[QDisc]:
    """Infinite enumeration of S_n restricted to the open unit disc.

    Discs are listed by increasing height (the largest numerator or
    denominator among centre coordinates and radius), ties broken by
    (radius, x, y).  Each admissible disc appears exactly once.
    """
    return iter(_enumeration(n))


def enumerate_rational_discs(n: int, count: int) -> list[QDisc]:
    """First ``count`` members of the fixed enumeration of S_n."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    it = iter_rational_discs(n)
    return [next(it) for _ in range(count)]


def nth_rational_disc(n: int, k: int) -> QDisc:
    """The disc D_{n,k} (``k`` is 1-based)."""
    if k < 1:
        raise ValueError("enumeration index is 1-based")
    return _enumeration(n).disc(k)


def first_separating_disc(n: int, z: QPoint, w: QPoint, budget: int) -> tuple[int, QDisc] | None:
    """First disc of S_n with ``z`` inside and ``w`` outside its closure.

    Returns ``(index, disc)`` with the 1-based enumeration index, or None if
    no such disc has index <= ``budget``.
    """
    enum = _enumeration(n)
    h = 1
    while True:
        lvl, start = enum.level(h)
        if start >= budget:
            return None
        for offset, row in zip(lvl.offsets, lvl.rows):
            r2 = row.radius * row.radius
            dzx = row.x - z.x
            wz = r2 - dzx * dzx
            if wz <= 0:
                continue
            dwx = row.x - w.x
            ww = r2 - dwx * dwx
            ys = row.values()
            # only ys within radius of z_y can work
            i = bisect_right(ys, z.y - row.radius)
            stop = z.y + row.radius
            while i < len(ys) and ys[i] < stop:
                y = ys[i]
                dz = y - z.y
                dw = y - w.y
                if dz * dz < wz and dw * dw > ww:
                    index = start + offset + i + 1
                    if index > budget:
                        return None
                    return index, QDisc(QPoint(row.x, y), row.radius, "open")
                i += 1
        h += 1
