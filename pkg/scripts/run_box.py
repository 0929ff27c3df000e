#!/usr/bin/env python3
"""Full Cartan-box landscape experiment (the large run).

Calibrates the two-qubit family over the whole parameter cube at
granularity 1/6 (343 references) and evaluates on the granularity-1/12
grid (2197 points) after each round. Substantially heavier than the
chamber run: expect several minutes at the default iteration cap.
"""

import argparse
from fractions import Fraction
import time

import numpy as np

from pulsecal import CalibConfig, OptConfig, evaluate_grid, initial_round, \
    reoptimization_round, save_landscape


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--granularity", default="1/6")
    ap.add_argument("--rounds", type=int, default=4)
    ap.add_argument("--eval-granularity", default="1/12")
    ap.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-iter", type=int, default=50)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = CalibConfig(
        family="cartan-box",
        granularity=Fraction(args.granularity),
        rounds=0,
        lam=args.lam,
        opt=OptConfig(max_iter=args.max_iter),
        seed=args.seed,
    )
    eval_g = Fraction(args.eval_granularity)
    t0 = time.time()

    landscape = initial_round(cfg)
    rnd = 0
    while True:
        records, s = evaluate_grid(landscape, eval_g)
        infids = np.array([r.infidelity for r in records])
        ref_infids = np.array([r.infidelity for r in landscape.references])
        print(f"round {rnd:2d}: iters={landscape.cumulative_iterations:7d} "
              f"mean={s.mean_infidelity:.3e} max={s.max_infidelity:.3e} "
              f"bad={np.sum(infids > 1e-3):4d}/{s.count} "
              f"refmax={ref_infids.max():.1e} ({time.time() - t0:.0f}s)", flush=True)
        if rnd >= args.rounds:
            break
        rnd += 1
        reoptimization_round(landscape, cfg)

    if args.out:
        save_landscape(landscape, args.out)
        print(f"saved landscape to {args.out}")


if __name__ == "__main__":
    main()
