"""Find continuity certificates for random pairs and tabulate search cost.

z ranges over the 1/32 grid with |z| < 7/8 and dist(z, I) > delta_n for the
chosen n; w over the 1/32 grid in the cheese.

    python3 scripts/certificate_sweep.py --pairs 500 --min-stage 5
"""

import argparse
import random
import time
from collections import Counter
from fractions import Fraction

from swisscheese.certificates import DEFAULT_SEARCH_BUDGET, NotFound, find_certificate, validate_certificate
from swisscheese.geometry import QPoint, delta, dist_sq_to_segment
from swisscheese.schedule import build_cheese

F = Fraction


def sample(rng, c, min_stage):
    while True:
        z = QPoint(F(rng.randint(-28, 28), 32), F(rng.randint(-28, 28), 32))
        if z.norm_sq() >= F(49, 64) or dist_sq_to_segment(z) <= delta(min_stage) ** 2 or not c.contains(z):
            continue
        w = QPoint(F(rng.randint(-32, 32), 32), F(rng.randint(-32, 32), 32))
        if w != z and w.norm_sq() <= 1 and c.contains(w):
            return z, w


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=500)
    p.add_argument("--min-stage", type=int, default=5)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    c = build_cheese(2)
    rng = random.Random(args.seed)
    by_stage = Counter()
    worst = {}
    missing = 0
    t0 = time.perf_counter()
    for _ in range(args.pairs):
        z, w = sample(rng, c, args.min_stage)
        cert = find_certificate(c, z, w, args.budget)
        if isinstance(cert, NotFound):
            missing += 1
            print(f"NotFound z=({z.x},{z.y}) w=({w.x},{w.y}) stage {cert.stage}")
            continue
        assert validate_certificate(c, cert)
        by_stage[cert.stage] += 1
        if cert.enumeration_index > worst.get(cert.stage, (0,))[0]:
            worst[cert.stage] = (cert.enumeration_index, z, w)
    elapsed = time.perf_counter() - t0
    print(f"{args.pairs} pairs in {elapsed:.1f}s, {missing} not found within {args.budget}")
    for n in sorted(by_stage):
        k, z, w = worst[n]
        print(f"  stage {n}: {by_stage[n]} certificates, largest index {k} at z=({z.x},{z.y})")


if __name__ == "__main__":
    main()
