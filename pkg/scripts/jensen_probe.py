"""Search for non-trivial Jensen measures at a point of I on the built cheese.

The grid is the unit circle plus rings around x; the test family holds
translates z - a and, optionally, simple poles placed at deletion centres.
An optimum of 0 is evidence, not proof, that only the point mass survives.

    python3 scripts/jensen_probe.py --x 0 --rings 3 --poles 8
"""

import argparse
import random
from fractions import Fraction

from swisscheese.cli import parse_rational
from swisscheese.geometry import QPoint
from swisscheese.jensen import TestFamily, lp_search, uniform_circle_grid
from swisscheese.rational import RationalFunction
from swisscheese.schedule import build_cheese

F = Fraction


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--x", default="0", help="real coordinate of the base point on I")
    p.add_argument("--grid-size", type=int, default=32)
    p.add_argument("--rings", type=int, default=3)
    p.add_argument("--translates", type=int, default=8)
    p.add_argument("--poles", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    c = build_cheese(2)
    x = QPoint(parse_rational(args.x), 0)
    grid = uniform_circle_grid(args.grid_size)
    for j in range(1, args.rings + 1):
        rho = F(1, 2 ** (j + 1))
        ring = [QPoint(x.x + rho * z.x, rho * z.y) for z in uniform_circle_grid(16)]
        grid.extend(z for z in ring if c.contains(z) and z not in grid)
    grid.append(x)

    rng = random.Random(args.seed)
    centers = set()
    while len(centers) < args.translates:
        a = QPoint(F(rng.randint(-7, 7), 8), F(rng.randint(-7, 7), 8))
        if a.norm_sq() < 1:
            centers.add(a)
    translates = TestFamily.translates(sorted(centers)).functions
    poles = tuple(RationalFunction.simple_pole(d.disc.center) for d in c.deletions[: args.poles])

    print(f"x = {x.x}, grid of {len(grid)} points")
    for label, funcs in [("translates", translates), ("translates + poles", translates + poles)]:
        res = lp_search(c, x, grid, TestFamily(funcs))
        print(f"  {label:<20} {len(funcs):>3} functions: optimum {float(res.optimum):.6f}")
        print(f"    {res.evidence}")


if __name__ == "__main__":
    main()
