#!/usr/bin/env python3
"""Single-qubit landscape experiment.

Calibrates a granularity-1/4 single-qubit landscape (125 references on
the unit cube) and evaluates interpolation on the granularity-1/12 grid
(2197 points) after every round. Useful for studying how round-0 pulse
incompatibilities between neighboring references heal — or fail to heal
— across re-optimization rounds; the per-round `bad` count is the number
of test points above 1e-3.
"""

import argparse
from fractions import Fraction

import numpy as np

from pulsecal import CalibConfig, OptConfig, evaluate_grid, initial_round, \
    reoptimization_round, save_landscape


def summarize(landscape, eval_g, rnd):
    records, s = evaluate_grid(landscape, eval_g)
    infids = np.array([r.infidelity for r in records])
    ref_infids = np.array([r.infidelity for r in landscape.references])
    print(f"round {rnd:2d}: iters={landscape.cumulative_iterations:6d} "
          f"mean={s.mean_infidelity:.3e} max={s.max_infidelity:.3e} "
          f"bad={np.sum(infids > 1e-3):4d}/{s.count} refmax={ref_infids.max():.1e}")
    return s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--granularity", default="1/4")
    ap.add_argument("--rounds", type=int, default=3)
    ap.add_argument("--eval-granularity", default="1/12")
    ap.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-iter", type=int, default=50)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = CalibConfig(
        family="single-qubit",
        granularity=Fraction(args.granularity),
        rounds=0,
        lam=args.lam,
        opt=OptConfig(max_iter=args.max_iter),
        seed=args.seed,
    )
    eval_g = Fraction(args.eval_granularity)

    landscape = initial_round(cfg)
    summarize(landscape, eval_g, 0)
    for rnd in range(1, args.rounds + 1):
        reoptimization_round(landscape, cfg)
        summarize(landscape, eval_g, rnd)

    if args.out:
        save_landscape(landscape, args.out)
        print(f"saved landscape to {args.out}")


if __name__ == "__main__":
    main()
