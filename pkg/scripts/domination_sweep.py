"""Sweep the Cauchy domination check over random small cheeses.

Prints the distribution of |f^(k)(z)| / (B_k(z) U(f)) per derivative order;
any ratio above 1 is a violation.

    python3 scripts/domination_sweep.py --instances 2000 --seed 1
"""

import argparse
import random
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from domination import check_instance, random_instance  # noqa: E402


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    ratios = defaultdict(list)
    for _ in range(args.instances):
        inst = random_instance(rng)
        out = check_instance(inst)
        ratios[inst.k].append(out.lhs / out.rhs)

    print(f"{'k':>2} {'count':>6} {'median':>10} {'p99':>10} {'max':>10} {'violations':>10}")
    total_bad = 0
    for k in sorted(ratios):
        r = np.array(ratios[k])
        bad = int((r > 1).sum())
        total_bad += bad
        print(f"{k:>2} {len(r):>6} {np.median(r):>10.4g} {np.quantile(r, 0.99):>10.4g} {r.max():>10.4g} {bad:>10}")
    print(f"violations: {total_bad}")
    return 1 if total_bad else 0


if __name__ == "__main__":
    sys.exit(main())
