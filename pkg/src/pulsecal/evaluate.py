"""Interpolation and landscape quality evaluation.

A calibrated landscape serves pulses for arbitrary in-domain points by
locating the point in the reference mesh and forming the barycentric
combination of the vertex pulses. Interpolated pulses inherit the
amplitude bounds automatically (convex combination of feasible pulses).

evaluate_grid measures how well that works: it sweeps a dense test grid,
evolves every interpolated pulse and compares against the family target.
sweep() repeats calibration round by round over several reference
granularities, producing computation-cost-versus-accuracy tables.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .calibrate import (
    CalibConfig,
    Landscape,
    _model_for,
    initial_round,
    reoptimization_round,
    worker_count,
)
from .linalg import gate_infidelity
from .mesh import locate
from .pulses import evolve


@dataclass(frozen=True)
class EvalRecord:
    point: np.ndarray
    infidelity: float
    simplex: int


@dataclass(frozen=True)
class EvalSummary:
    mean_infidelity: float
    std_infidelity: float  # population std, matching "mean ± std" tables
    max_infidelity: float
    count: int
    cumulative_iterations: int


def interpolate(landscape: Landscape, p) -> np.ndarray:
    """Barycentric combination of the containing simplex's pulses."""
    loc = locate(landscape.mesh, p)
    return _combine(landscape, loc.simplex, loc.coords)


def _combine(landscape: Landscape, simplex: int, coords: np.ndarray) -> np.ndarray:
    alpha = np.zeros(landscape.ansatz.n_params)
    for b, v in zip(coords, landscape.mesh.simplices[simplex]):
        if b != 0.0:
            alpha = alpha + b * landscape.references[v].alpha
    return alpha


def evaluate_grid(
    landscape: Landscape,
    test_granularity: Fraction,
    n_workers: Optional[int] = None,
) -> tuple[list, EvalSummary]:
    """Interpolate and score every domain lattice point at the given spacing."""
    family = landscape.family
    model = _model_for(family)
    points = family.grid(test_granularity)

    def score(p):
        loc = locate(landscape.mesh, p)
        alpha = _combine(landscape, loc.simplex, loc.coords)
        u = evolve(model, landscape.ansatz, alpha)
        infid = gate_infidelity(u, family.unitary(p), model.dim)
        return EvalRecord(point=p, infidelity=infid, simplex=loc.simplex)

    with ThreadPoolExecutor(max_workers=worker_count(n_workers)) as pool:
        records = list(pool.map(score, points))

    infids = np.array([r.infidelity for r in records])
    summary = EvalSummary(
        mean_infidelity=float(infids.mean()),
        std_infidelity=float(infids.std()),
        max_infidelity=float(infids.max()),
        count=len(records),
        cumulative_iterations=landscape.cumulative_iterations,
    )
    return records, summary


def sweep(
    family: str,
    granularities: list,
    max_rounds: int,
    cfg: CalibConfig,
    test_granularity: Fraction,
) -> list:
    """Calibration-cost sweep: one EvalSummary per (granularity, round).

    Rounds are applied incrementally to the same landscape, so the
    cumulative iteration counts in consecutive summaries trace a single
    calibration trajectory per granularity.
    """
    rows = []
    for g in granularities:
        run_cfg = replace(cfg, family=family, granularity=Fraction(g), rounds=0)
        landscape = initial_round(run_cfg)
        _, summary = evaluate_grid(landscape, test_granularity, run_cfg.n_workers)
        rows.append((Fraction(g), 0, summary))
        for rnd in range(1, max_rounds + 1):
            reoptimization_round(landscape, run_cfg)
            _, summary = evaluate_grid(landscape, test_granularity, run_cfg.n_workers)
            rows.append((Fraction(g), rnd, summary))
    return rows
