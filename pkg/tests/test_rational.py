from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swisscheese.geometry import QPoint
from swisscheese.rational import (
    Poly,
    PoleAtPoint,
    PoleProximity,
    QComplex,
    RationalFunction,
    eval_rational,
    poly_gcd,
)

F = Fraction
q = st.fractions(min_value=-4, max_value=4, max_denominator=16)
qc = st.builds(QComplex, q, q)
polys = st.lists(qc, min_size=0, max_size=5).map(lambda cs: Poly(tuple(cs)))


def test_eval_examples():
    f = RationalFunction.simple_pole(2)
    assert eval_rational(f, QPoint(0, 0), exact=True).exact == F(-1, 2)
    assert eval_rational(RationalFunction.identity(), QPoint(F(1, 3), 0), exact=True).exact == F(1, 3)
    with pytest.raises(PoleAtPoint):
        eval_rational(f, QPoint(2, 0))


def test_pole_proximity_only_in_float_mode():
    f = RationalFunction.simple_pole(QComplex(0))
    z = QPoint(F(1, 2**50), 0)
    with pytest.raises(PoleProximity):
        eval_rational(f, z)
    assert eval_rational(f, z, exact=True).exact == 2**50


def test_float_value_within_stated_error():
    f = RationalFunction(Poly((QComplex(1), QComplex(0, 3))), Poly.linear_root(QComplex(F(1, 7), F(2, 9))) ** 2)
    z = QPoint(F(5, 11), F(-3, 13))
    ev = eval_rational(f, z, exact=True)
    assert abs(ev.value - complex(ev.exact)) <= ev.rel_error * abs(ev.value)
    direct = f.eval_float(complex(z))
    assert abs(direct - ev.value) < 1e-12 * abs(ev.value)


def test_qcomplex_hash_and_equality():
    assert QComplex(1) == 1
    assert hash(QComplex(F(1, 2), 0)) == hash(QComplex(F(2, 4), 0))
    assert len({QComplex(1, 2), QComplex(1, 2)}) == 1
    with pytest.raises(TypeError):
        QComplex.of(1j)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Poly.const(1), Poly())


def test_reduce_cancels_common_factor():
    a = Poly.linear_root(QComplex(F(1, 3)))
    b = Poly.linear_root(QComplex(0, 1))
    f = RationalFunction(a * b, a * a).reduce()
    assert f.reduced
    assert f.denominator == a
    assert f.numerator == b


@given(qc, qc, qc)
def test_arithmetic_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    if b:
        assert (a / b) * b == a


@given(polys, polys, qc)
def test_poly_product_evaluates_pointwise(p, r, z):
    assert (p * r)(z) == p(z) * r(z)
    assert (p + r)(z) == p(z) + r(z)


@given(polys, polys)
def test_divmod_identity(p, d):
    if d.is_zero():
        return
    quo, rem = p.divmod(d)
    assert quo * d + rem == p
    assert rem.degree < d.degree or rem.is_zero()


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert a.divmod(g)[1].is_zero()
    assert b.divmod(g)[1].is_zero()


@given(polys, qc)
def test_derivative_matches_power_rule(p, z):
    expected = sum((c * i * z ** (i - 1) for i, c in enumerate(p.coeffs) if i), QComplex(0))
    assert p.derivative()(z) == expected


@given(polys, polys.filter(lambda d: not d.is_zero()), qc)
def test_quotient_derivative(n, d, z):
    f = RationalFunction(n, d)
    if not d(z):
        return
    expected = (n.derivative()(z) * d(z) - n(z) * d.derivative()(z)) / (d(z) * d(z))
    assert f.derivative().exact(z) == expected
