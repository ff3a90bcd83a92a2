from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_iroot
from swisscheese.brackets import inverse_root_bracket, iroot, root_bracket, sqrt_bracket

F = Fraction
positive = st.fractions(min_value=F(1, 10**6), max_value=10**6, max_denominator=10**6)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_iroot_matches_brute_force(n):
    for m in range(0, 3000, 7):
        assert iroot(m, n) == brute_force_iroot(m, n)


@given(st.integers(0, 10**80), st.integers(1, 40))
def test_iroot_defining_inequality(m, n):
    r = iroot(m, n)
    assert r**n <= m < (r + 1) ** n


def test_iroot_rejects_bad_arguments():
    with pytest.raises(ValueError):
        iroot(-1, 2)
    with pytest.raises(ValueError):
        iroot(4, 0)


def test_perfect_powers_are_exact():
    assert root_bracket(F(8, 27), 3) == (F(2, 3), F(2, 3))
    assert sqrt_bracket(F(1, 4)) == (F(1, 2), F(1, 2))
    assert inverse_root_bracket(F(1), 9) == (1, 1)


@given(positive, st.integers(1, 12), st.integers(1, 64))
def test_bracket_encloses_root(q, n, t):
    lo, hi = root_bracket(q, n, t)
    assert lo**n <= q <= hi**n
    assert hi - lo <= F(1, 2**t)


@given(positive, st.integers(1, 12), st.integers(4, 40))
def test_refinement_nests(q, n, t):
    lo1, hi1 = root_bracket(q, n, t)
    lo2, hi2 = root_bracket(q, n, 2 * t)
    assert lo1 <= lo2 <= hi2 <= hi1


@given(positive, st.integers(1, 12))
def test_inverse_root_encloses(a, n):
    lo, hi = inverse_root_bracket(a, n, 40)
    assert lo**n * a <= 1 <= hi**n * a


def test_float_agreement():
    lo, hi = inverse_root_bracket(F(45, 2), 1, 32)
    assert float(lo) <= 2 / 45 <= float(hi)
    lo, hi = root_bracket(F(2), 2, 50)
    assert abs(float(lo) - 2**0.5) < 1e-14
