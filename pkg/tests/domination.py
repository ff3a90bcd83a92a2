"""Randomised instances for the Cauchy domination check.

A random cheese has up to five disjoint deletions; f is a polynomial plus
principal parts whose poles sit within r/2 of deletion centres, so f is
analytic on the cheese and |f| there is bounded by its maximum over the
boundary circles, which is estimated by dense sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from swisscheese.bounds import BoundQuery, cauchy_bound, derivative_oracle
from swisscheese.geometry import UNIT_DISC, QDisc, QPoint, Relation, closed_inside_open, disc_relation
from swisscheese.rational import QComplex, RationalFunction
from swisscheese.schedule import CheeseDescription, Deletion

F = Fraction
SAMPLES_PER_CIRCLE = 2048
INFLATION = 1 + 2.0**-10


@dataclass
class Instance:
    cheese: CheeseDescription
    f: RationalFunction
    z: QPoint
    k: int


def _rand_q(rng: random.Random, lo: Fraction, hi: Fraction, den: int) -> Fraction:
    return F(rng.randint(int(lo * den), int(hi * den)), den)


def random_cheese(rng: random.Random, max_deletions: int = 5) -> CheeseDescription:
    discs: list[QDisc] = []
    target = rng.randint(0, max_deletions)
    tries = 0
    while len(discs) < target and tries < 200:
        tries += 1
        c = QPoint(_rand_q(rng, F(-3, 4), F(3, 4), 32), _rand_q(rng, F(-3, 4), F(3, 4), 32))
        d = QDisc(c, _rand_q(rng, F(1, 32), F(3, 16), 64), "open")
        if not closed_inside_open(d, UNIT_DISC.interior()):
            continue
        if all(disc_relation(d.closure(), e.closure()) == Relation.DISJOINT for e in discs):
            discs.append(d)
    return CheeseDescription(deletions=[Deletion(1, j, d) for j, d in enumerate(discs, 1)])


def random_function(rng: random.Random, c: CheeseDescription) -> RationalFunction:
    def coeff():
        return QComplex(F(rng.randint(-8, 8), rng.randint(1, 8)), F(rng.randint(-8, 8), rng.randint(1, 8)))

    f = RationalFunction.polynomial([coeff() for _ in range(rng.randint(1, 4))])
    for d in c.deletions:
        if rng.random() < 0.8:
            r = d.disc.radius
            # offsets of at most r/3 per axis keep the pole within r/2 of the centre
            pole = QComplex.of(d.disc.center) + QComplex(_rand_q(rng, -r / 3, r / 3, 1024),
                                                         _rand_q(rng, -r / 3, r / 3, 1024))
            f = f + RationalFunction.simple_pole(pole, coeff(), rng.randint(1, 3))
    return f


def random_point(rng: random.Random, c: CheeseDescription) -> QPoint:
    while True:
        z = QPoint(_rand_q(rng, F(-15, 16), F(15, 16), 128), _rand_q(rng, F(-15, 16), F(15, 16), 128))
        if z.norm_sq() >= F(15, 16) ** 2:
            continue
        if all(z.dist_sq(d.disc.center) > (d.disc.radius * F(9, 8)) ** 2 for d in c.deletions):
            return z


def random_instance(rng: random.Random) -> Instance:
    c = random_cheese(rng)
    return Instance(c, random_function(rng, c), random_point(rng, c), rng.randint(0, 4))


def sup_estimate(f: RationalFunction, c: CheeseDescription, samples: int = SAMPLES_PER_CIRCLE) -> float:
    """max |f| over sampled boundary circles, inflated by 1 + 2^-10."""
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    unit = np.exp(1j * theta)
    circles = [unit]
    for d in c.deletions:
        circles.append(complex(d.disc.center) + float(d.disc.radius) * unit)
    pts = np.concatenate(circles)
    return float(np.max(np.abs(f.eval_float(pts)))) * INFLATION


@dataclass
class Outcome:
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def check_instance(inst: Instance) -> Outcome:
    exact = derivative_oracle(inst.f, inst.z, inst.k)
    bound = cauchy_bound(inst.cheese, BoundQuery(inst.z, inst.k)).value_upper
    lhs = float(exact.abs_sq()) ** 0.5
    return Outcome(lhs, float(bound) * sup_estimate(inst.f, inst.cheese))
