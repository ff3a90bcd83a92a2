"""Exact arithmetic in Q + iQ, polynomials over it, and rational functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import QPoint, as_rational

POLE_PROXIMITY_THRESHOLD = 2.0**-40


class PoleAtPoint(ZeroDivisionError):
    """The denominator vanishes exactly at the evaluation point."""


class PoleProximity(ArithmeticError):
    """Floating evaluation requested too close to a pole."""


@dataclass(frozen=True)
class QComplex:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def of(cls, value) -> QComplex:
        if isinstance(value, QComplex):
            return value
        if isinstance(value, QPoint):
            return cls(value.x, value.y)
        if isinstance(value, complex):
            raise TypeError("refusing inexact complex value")
        return cls(as_rational(value))

    def __add__(self, other) -> QComplex:
        o = QComplex.of(other)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> QComplex:
        o = QComplex.of(other)
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> QComplex:
        return QComplex.of(other) - self

    def __neg__(self) -> QComplex:
        return QComplex(-self.re, -self.im)

    def __mul__(self, other) -> QComplex:
        o = QComplex.of(other)
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QComplex:
        o = QComplex.of(other)
        n = o.abs_sq()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return QComplex((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other) -> QComplex:
        return QComplex.of(other) / self

    def __pow__(self, k: int) -> QComplex:
        result = QComplex(1)
        base = self
        if k < 0:
            base, k = 1 / self, -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        try:
            o = QComplex.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> QComplex:
        return QComplex(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


ZERO = QComplex(0)
ONE = QComplex(1)


def _trim(coeffs) -> tuple[QComplex, ...]:
    c = [QComplex.of(a) for a in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients in Q + iQ, lowest degree first."""

    coeffs: tuple[QComplex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def linear_root(cls, a) -> Poly:
        """The monic polynomial z - a."""
        return cls((-QComplex.of(a), ONE))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            s = QComplex.of(other)
            return Poly(tuple(c * s for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> Poly:
        return Poly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def __call__(self, z) -> QComplex:
        z = QComplex.of(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_float(self, z):
        """Horner evaluation on floats or numpy arrays."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        q = [ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + other.degree] / lead
            q[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(tuple(q)), Poly(tuple(rem[: other.degree]) if other.degree > 0 else ())

    def monic(self) -> Poly:
        return self * (1 / self.coeffs[-1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over the field Q + iQ)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


@dataclass(frozen=True)
class RationalFunction:
    numerator: Poly
    denominator: Poly = field(default_factory=lambda: Poly.const(1))
    reduced: bool = False

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("denominator is identically zero")

    @classmethod
    def polynomial(cls, coeffs) -> RationalFunction:
        return cls(Poly(tuple(coeffs)))

    @classmethod
    def simple_pole(cls, pole, coefficient=1, order: int = 1) -> RationalFunction:
        """``coefficient / (z - pole) ** order``."""
        return cls(Poly.const(coefficient), Poly.linear_root(pole) ** order)

    @classmethod
    def identity(cls) -> RationalFunction:
        return cls(Poly((ZERO, ONE)))

    def __add__(self, other: RationalFunction) -> RationalFunction:
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + RationalFunction(-other.numerator, other.denominator)

    def __mul__(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)
        return RationalFunction(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def reduce(self) -> RationalFunction:
        """Cancel the polynomial gcd and normalise the denominator to be monic."""
        if self.numerator.is_zero():
            return RationalFunction(Poly(), Poly.const(1), True)
        g = poly_gcd(self.numerator, self.denominator)
        num = self.numerator.divmod(g)[0]
        den = self.denominator.divmod(g)[0]
        lead = den.coeffs[-1]
        return RationalFunction(num * (1 / lead), den * (1 / lead), True)

    def derivative(self) -> RationalFunction:
        n, d = self.numerator, self.denominator
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def exact(self, z) -> QComplex:
        den = self.denominator(z)
        if not den:
            raise PoleAtPoint(f"denominator vanishes at {z}")
        return self.numerator(z) / den

    def eval_float(self, z):
        return self.numerator.eval_float(z) / self.denominator.eval_float(z)


@dataclass(frozen=True)
class Evaluation:
    value: complex
    rel_error: float
    exact: QComplex | None = None


# float(Fraction) rounds correctly, so each component is within 2^-53 relatively.
_ROUNDING_REL = 2.0**-52


def eval_rational(f: RationalFunction, z: QPoint, exact: bool = False,
                  threshold: float = POLE_PROXIMITY_THRESHOLD) -> Evaluation:
    """Evaluate ``f`` at a rational point.

    The value is always computed exactly and then rounded, so the floating
    result carries a relative error bound of ``2**-52``.  With
    ``exact=False`` a denominator modulus below ``threshold`` raises
    :class:`PoleProximity`.
    """
    zc = QComplex.of(z)
    den = f.denominator(zc)
    if not den:
        raise PoleAtPoint(f"denominator vanishes at {z}")
    if not exact:
        d2 = den.abs_sq()
        if d2 < Fraction(threshold) ** 2:
            raise PoleProximity(f"|denominator| = {math.sqrt(float(d2)):.3e} at {z}")
    value = f.numerator(zc) / den
    return Evaluation(complex(value), _ROUNDING_REL, value if exact else None)
