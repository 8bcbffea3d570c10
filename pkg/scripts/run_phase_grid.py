#!/usr/bin/env python3
"""Order-selection phase diagram over the (sample size, separation) plane.

Default protocol: k = 3 components in d = 10, rotated simplex means at
each separation, sigma = 1, L = 9 ball frequencies with the full
orthonormal translation set, ratio-with-floor selection, 96 trials per
cell.  The full 40 x 40 grid is a long run (hours single-core); start
with --quick, which coarsens the grid to 10 x 9 and 24 trials and
finishes in a few minutes.

Writes phase.csv and phase.svg into --out.
"""

import argparse
import os
import time

from fouriergmm.harness import ExperimentConfig, run_phase_grid, write_phase_csv
from fouriergmm.heatmap import render_phase_svg

FULL = dict(log10_n_min=3.0, log10_n_max=5.0, log10_n_step=0.0513,
            delta_min=2.0, delta_max=7.0, delta_step=0.128, trials=96)
QUICK = dict(log10_n_min=3.0, log10_n_max=5.0, log10_n_step=0.25,
             delta_min=2.0, delta_max=7.0, delta_step=0.625, trials=24)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--quick", action="store_true", help="coarse grid, 24 trials")
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--d", type=int, default=10)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=".")
    args = ap.parse_args(argv)

    os.makedirs(args.out, exist_ok=True)
    grid = QUICK if args.quick else FULL
    cfg = ExperimentConfig(experiment="phase", k=args.k, d=args.d,
                           seed=args.seed, **grid)
    t0 = time.perf_counter()
    cells = run_phase_grid(cfg, workers=args.workers)
    dt = time.perf_counter() - t0

    write_phase_csv(cells, f"{args.out}/phase.csv")
    render_phase_svg(cells, f"{args.out}/phase.svg",
                     title=f"order selection success, k={args.k}, d={args.d}")
    n_hi = sum(c.successes for c in cells if c.log10_n >= 4.5)
    t_hi = sum(c.trials for c in cells if c.log10_n >= 4.5)
    print(f"{len(cells)} cells in {dt:.0f}s "
          f"({cells[0].trials} trials/cell, seed {args.seed})")
    print(f"success at log10 n >= 4.5: {n_hi}/{t_hi}")
    print(f"wrote {args.out}/phase.csv and {args.out}/phase.svg")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
