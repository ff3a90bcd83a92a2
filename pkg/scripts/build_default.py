"""Build the default desk-scale cheese, verify it, and write the artifacts.

    python3 scripts/build_default.py --out runs/default
"""

import argparse
import time
from pathlib import Path

from swisscheese.bounds import star_block_check
from swisscheese.cheesefile import emit
from swisscheese.render import RenderOptions, render_svg
from swisscheese.schedule import build_cheese, verify_schedule


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--systems", type=int, default=8)
    p.add_argument("--discs", type=int, default=16)
    p.add_argument("--out", default="runs/default")
    args = p.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    c = build_cheese(args.stages, args.systems, args.discs)
    t_build = time.perf_counter() - t0
    report = verify_schedule(c)
    blocks = star_block_check(c.bound_table) if c.bound_table.block_boundaries else None

    (out / "cheese.json").write_bytes(emit(c))
    (out / "cheese.svg").write_text(render_svg(c, RenderOptions(show_K=tuple(range(1, args.stages + 1)))))
    (out / "verify.json").write_text(report.to_json())

    print(f"built {len(c.deletions)} deletions in {t_build:.2f}s")
    for s in c.stage_records:
        print(f"  stage {s.m}: delta={s.delta} eps={s.epsilon} N={s.N}")
    print(f"  total radius {float(c.radius_sum()):.6f} (< 1/2)")
    print(report.to_text(), end="")
    if blocks is not None:
        print(blocks.to_text(), end="")
    print(f"artifacts in {out}/")


if __name__ == "__main__":
    main()
