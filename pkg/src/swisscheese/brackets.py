"""Rational brackets for irrational roots.

Every bracket is computed from an exact integer root, so ``lo <= root < hi``
holds unconditionally and ``hi - lo == 2**-t`` unless the root is rational,
in which case ``lo == hi``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

DEFAULT_PRECISION = 32
MAX_PRECISION = 4096


class PrecisionExhausted(ArithmeticError):
    """A comparison stayed undecided up to the maximum bracket precision."""


def iroot(m: int, n: int) -> int:
    """floor(m ** (1/n)) for integers m >= 0, n >= 1."""
    if m < 0 or n < 1:
        raise ValueError("iroot needs m >= 0 and n >= 1")
    if n == 1 or m < 2:
        return m
    if n == 2:
        return isqrt(m)
    x = 1 << -(-m.bit_length() // n)  # >= true root
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def _exact_root(q: Fraction, n: int) -> Fraction | None:
    a = iroot(q.numerator, n)
    b = iroot(q.denominator, n)
    if a**n == q.numerator and b**n == q.denominator:
        return Fraction(a, b)
    return None


def root_bracket(q: Fraction, n: int, t: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Bracket the real n-th root of ``q >= 0`` to width ``2**-t``."""
    if q < 0:
        raise ValueError("root of a negative rational")
    exact = _exact_root(q, n)
    if exact is not None:
        return exact, exact
    # floor(2^t q^(1/n)) == iroot(floor(2^(t n) q), n)
    s = iroot((q.numerator << (t * n)) // q.denominator, n)
    return Fraction(s, 1 << t), Fraction(s + 1, 1 << t)


def sqrt_bracket(q: Fraction, t: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    return root_bracket(q, 2, t)


def inverse_root_bracket(a: Fraction, n: int, t: int = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Bracket ``a ** (-1/n)`` for ``a > 0``."""
    if a <= 0:
        raise ValueError("inverse root needs a positive argument")
    return root_bracket(1 / a, n, t)
