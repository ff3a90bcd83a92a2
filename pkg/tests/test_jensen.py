import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from swisscheese.geometry import QPoint
from swisscheese.jensen import (
    ROUNDING_SLACK,
    DiscreteMeasure,
    InfeasibleGrid,
    InvalidMeasure,
    PoleOnSupport,
    TestFamily,
    jensen_deficit,
    lp_search,
    representing_deficit,
    uniform_circle_grid,
)
from swisscheese.rational import QComplex, RationalFunction

F = Fraction
ORIGIN = QPoint(0, 0)
HALF = QPoint(F(1, 2), 0)


def translate(a: QPoint):
    return TestFamily.translates([a]).functions[0]


def circle_log_average(a: complex) -> float:
    val, _ = quad(lambda t: math.log(abs(complex(math.cos(t), math.sin(t)) - a)), 0, 2 * math.pi,
                  limit=200, epsabs=1e-12)
    return val / (2 * math.pi)


def test_quadrature_oracle_itself():
    assert circle_log_average(0.5) == pytest.approx(0.0, abs=1e-10)
    assert circle_log_average(2.0) == pytest.approx(math.log(2), abs=1e-10)


def test_log_average_example():
    mu = DiscreteMeasure.uniform(uniform_circle_grid(1024))
    d = jensen_deficit(mu, ORIGIN, translate(HALF))
    oracle = circle_log_average(0.5) - math.log(0.5)
    assert d.value == pytest.approx(oracle, abs=1e-3)
    assert d.value == pytest.approx(math.log(2), abs=1e-6)


def test_point_mass_neutral():
    f = RationalFunction.simple_pole(QComplex(2, 1), QComplex(1, 3), 2) + RationalFunction.polynomial([1, 1])
    x = QPoint(F(1, 3), F(-1, 4))
    mu = DiscreteMeasure.point_mass(x)
    assert jensen_deficit(mu, x, f).value == 0
    assert representing_deficit(mu, x, f) == 0


def test_zero_at_x_is_vacuous():
    mu = DiscreteMeasure.uniform(uniform_circle_grid(8))
    assert jensen_deficit(mu, HALF, translate(HALF)).value == math.inf


def test_pole_on_support():
    mu = DiscreteMeasure.uniform([QPoint(1, 0), QPoint(-1, 0)])
    with pytest.raises(PoleOnSupport):
        jensen_deficit(mu, ORIGIN, RationalFunction.simple_pole(1))
    with pytest.raises(PoleOnSupport):
        representing_deficit(mu, ORIGIN, RationalFunction.simple_pole(1))


def test_representing_symmetry():
    grid = uniform_circle_grid(64)
    mu = DiscreteMeasure.uniform(grid)
    assert representing_deficit(mu, ORIGIN, RationalFunction.identity()) == 0.0
    assert representing_deficit(mu, ORIGIN, RationalFunction.polynomial([0, 0, 1])) == 0.0


@pytest.mark.parametrize("degree", [1, 2, 3, 5, 6, 7])
def test_representing_low_degree_against_direct_sum(degree):
    # z^j for j not a multiple of 4 cancels exactly on a C4-symmetric grid
    grid = uniform_circle_grid(32)
    mu = DiscreteMeasure.uniform(grid)
    f = RationalFunction.polynomial([0] * degree + [1])
    direct = sum((QComplex.of(z) ** degree for z in grid), QComplex(0)) / len(grid)
    got = representing_deficit(mu, ORIGIN, f)
    assert got == pytest.approx(math.sqrt(direct.abs_sq()), abs=1e-15)
    if degree % 4:
        assert got == 0.0
    else:
        assert got < 1e-6


def test_grid_is_c4_symmetric_and_on_circle():
    grid = uniform_circle_grid(24)
    assert len(set(grid)) == 24
    assert all(z.norm_sq() == 1 for z in grid)
    assert set(grid) == {QPoint(-z.y, z.x) for z in grid}
    with pytest.raises(ValueError):
        uniform_circle_grid(10)


def test_measure_validation():
    with pytest.raises(InvalidMeasure):
        DiscreteMeasure((ORIGIN,), (F(1, 2),))
    with pytest.raises(InvalidMeasure):
        DiscreteMeasure((ORIGIN, HALF), (F(3, 2), F(-1, 2)))
    with pytest.raises(InvalidMeasure):
        DiscreteMeasure((ORIGIN, ORIGIN), (F(1, 2), F(1, 2)))
    with pytest.raises(TypeError):
        DiscreteMeasure((ORIGIN,), (1.0,))


def test_support_check(cheese1):
    inside = cheese1.deletions[0].disc.center
    with pytest.raises(InvalidMeasure):
        DiscreteMeasure.point_mass(inside).check_support(cheese1)
    DiscreteMeasure.point_mass(ORIGIN).check_support(cheese1)


def test_family_clearance():
    with pytest.raises(ValueError):
        TestFamily((), F(0))


def _family(count, seed=0):
    rng = random.Random(seed)
    centers = set()
    while len(centers) < count:
        a = QPoint(F(rng.randint(-7, 7), 8), F(rng.randint(-7, 7), 8))
        if a.norm_sq() < 1:
            centers.add(a)
    return TestFamily.translates(sorted(centers))


@pytest.fixture(scope="module")
def circle_search(empty_cheese):
    grid = uniform_circle_grid(32) + [ORIGIN]
    return grid, _family(8), lp_search(empty_cheese, ORIGIN, grid, _family(8))


def test_uniform_measure_feasible_directly(circle_search):
    grid, family, _ = circle_search
    mu = DiscreteMeasure.uniform(grid[:-1])
    for f in family.functions:
        d = jensen_deficit(mu, ORIGIN, f)
        assert d.value >= -d.error


def test_lp_optimum_one_on_disc(circle_search):
    grid, family, res = circle_search
    assert res.optimum == 1
    assert res.constraints == 8
    for f in family.functions:
        d = jensen_deficit(res.witness, ORIGIN, f)
        assert d.value >= -(d.error + 1e-9)


def test_lp_single_point_grid(empty_cheese):
    res = lp_search(empty_cheese, ORIGIN, [ORIGIN], _family(8))
    assert res.optimum == 0
    assert res.witness == DiscreteMeasure.point_mass(ORIGIN)
    assert "not a proof" in res.evidence


def test_lp_x_not_in_grid(empty_cheese):
    with pytest.raises(InfeasibleGrid):
        lp_search(empty_cheese, ORIGIN, uniform_circle_grid(8), _family(2))


def test_lp_grid_outside_cheese(cheese1):
    with pytest.raises(InvalidMeasure):
        lp_search(cheese1, ORIGIN, [ORIGIN, cheese1.deletions[0].disc.center], _family(2))


def test_lp_vacuous_constraint(empty_cheese):
    fam = TestFamily.translates([ORIGIN, HALF])
    res = lp_search(empty_cheese, ORIGIN, uniform_circle_grid(8) + [ORIGIN], fam)
    assert res.vacuous == 1 and res.constraints == 1


def test_lp_result_serialises(circle_search):
    doc = circle_search[2].to_dict()
    assert doc["optimum"] == "1"
    assert doc["rounding_slack"] == str(ROUNDING_SLACK)


@given(st.integers(0, 10**6))
def test_optimum_antitone_in_family(empty_cheese, seed):
    rng = random.Random(seed)
    pts = {ORIGIN}
    while len(pts) < 7:
        p = QPoint(F(rng.randint(-4, 4), 4), F(rng.randint(-4, 4), 4))
        if p.norm_sq() <= 1:
            pts.add(p)
    grid = sorted(pts)
    small = _family(2, seed)
    big = TestFamily(small.functions + _family(3, seed + 1).functions)
    assert lp_search(empty_cheese, ORIGIN, grid, big).optimum <= lp_search(empty_cheese, ORIGIN, grid, small).optimum
