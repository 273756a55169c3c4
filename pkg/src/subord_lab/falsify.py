"""Randomized search for counterexamples to the dominant, subordinant and
sandwich implications.

Every instance draws a Janowski q whose hypotheses pass, then an inner or
outer function that is either subordinate by construction (composition with
a Schwarz function, contraction of the disk) or deliberately not (expanded
Janowski disk, dilation).  An instance is inconsistent when the premise holds,
every hypothesis passes and the conclusion fails.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMap, Compose, Const, Z
from .families import SchwarzSpec, janowski, random_schwarz, schwarz_from_coefficients
from .geometry import SampleGrid
from .params import ParamSet
from .theorem import (check_hypotheses, class_membership, verify_dominant, verify_sandwich,
                      verify_subordinant)

KINDS = ("dominant", "subordinant", "sandwich")
CAMPAIGN_GRID = SampleGrid(radii=(0.5, 0.9, 0.99, 0.999), angular_count=256)
A_SWEEP = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
B_SWEEP = (-0.9, -0.8, -0.7, -0.6, -0.5, -0.4, -0.3, -0.2, -0.1)
PARAM_MENU = (
    ParamSet(),
    ParamSet(alpha=0.5, mu=1.0),
    ParamSet(alpha=2.0, mu=1.0, beta=2.0),
    ParamSet(alpha=1.0, mu=0.5, gamma=0.5),
    ParamSet(alpha=1.0, mu=1.0, delta=0.5),
    ParamSet(alpha=0.0, mu=1.0, beta=1.0, gamma=1.0),
    ParamSet(alpha=1.0, mu=1.0, beta=1 + 0.25j, delta=1.0),
)


def mobius(a: float, b: float) -> AnalyticMap:
    """(1 + a z)/(1 + b z) without the Janowski range restriction."""
    return (1 + Const(a) * Z) / (1 + Const(b) * Z)


@dataclass(frozen=True)
class Instance:
    index: int
    kind: str
    variant: str
    A: float
    B: float
    ps: ParamSet
    p: AnalyticMap
    q1: AnalyticMap | None = None


def _admissible(q: AnalyticMap, ps: ParamSet, grid: SampleGrid) -> bool:
    if not class_membership(q, ps, grid).passed:
        return False
    return all(r.passed for r in check_hypotheses(q, ps, grid))


def _schwarz(rng) -> AnalyticMap:
    spec = SchwarzSpec(seed=int(rng.integers(2**31)), degree=int(rng.integers(1, 4)),
                       contraction=float(rng.uniform(0.3, 0.9)))
    return random_schwarz(spec)


def _univalent_schwarz(rng) -> AnalyticMap:
    """c z (u + a z) with |u| = 1 and |a| < 1/2, univalent on the disk."""
    u = np.exp(2j * np.pi * rng.uniform())
    a = 0.45 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    return schwarz_from_coefficients([u, a], float(rng.uniform(0.3, 0.9)))


def make_instance(seed: int, index: int, grid: SampleGrid = CAMPAIGN_GRID) -> Instance:
    rng = np.random.default_rng([seed, index])
    kind = KINDS[index % len(KINDS)]
    for _ in range(64):
        A = float(rng.choice(A_SWEEP))
        B = float(rng.choice(B_SWEEP))
        ps = PARAM_MENU[int(rng.integers(len(PARAM_MENU)))]
        if _admissible(janowski(A, B), ps, grid):
            break
    else:
        raise RuntimeError(f"no admissible q for instance {index}")
    q = janowski(A, B)
    roll = rng.uniform()
    if kind == "dominant":
        if roll < 0.5:
            return Instance(index, kind, "schwarz", A, B, ps, Compose(q, _schwarz(rng)))
        if roll < 0.75:
            a2 = A + float(rng.uniform(0.2, 1.0)) * (1 - A)
            return Instance(index, kind, "expanded", A, B, ps, mobius(a2, B))
        s = 1 + float(rng.uniform(0.2, 1.0)) * (1 / abs(B) - 1) * 0.9
        return Instance(index, kind, "dilated", A, B, ps, mobius(s * A, s * B))
    if kind == "subordinant":
        if roll < 0.5:
            m = max(A, abs(B))
            c = m + float(rng.uniform(0.2, 0.8)) * (1 - m)
            return Instance(index, kind, "superordinate", A, B, ps, mobius(A / c, B / c))
        return Instance(index, kind, "schwarz", A, B, ps, Compose(q, _univalent_schwarz(rng)))
    # sandwich: q2 = q, q1 a contraction of q, p varies
    for _ in range(16):
        c1 = float(rng.uniform(0.3, 0.7))
        if _admissible(mobius(c1 * A, c1 * B), ps, grid):
            break
    else:
        c1 = 1.0
    q1 = mobius(c1 * A, c1 * B)
    if roll < 0.4:
        cp = float(rng.uniform(c1 + 0.1, 0.95)) if c1 < 0.85 else 1.0
        return Instance(index, kind, "between", A, B, ps, mobius(cp * A, cp * B), q1)
    if roll < 0.6:
        return Instance(index, kind, "schwarz", A, B, ps,
                        Compose(q, _univalent_schwarz(rng)), q1)
    if roll < 0.8:
        cp = c1 * float(rng.uniform(0.2, 0.8))
        return Instance(index, kind, "below", A, B, ps, mobius(cp * A, cp * B), q1)
    a2 = A + float(rng.uniform(0.2, 1.0)) * (1 - A)
    return Instance(index, kind, "expanded", A, B, ps, mobius(a2, B), q1)


def run_instance(seed: int, index: int, grid: SampleGrid = CAMPAIGN_GRID) -> dict:
    inst = make_instance(seed, index, grid)
    q = janowski(inst.A, inst.B)
    if inst.kind == "dominant":
        v = verify_dominant(inst.p, q, inst.ps, grid)
    elif inst.kind == "subordinant":
        v = verify_subordinant(inst.p, q, inst.ps, grid)
    else:
        v = verify_sandwich(inst.p, inst.q1, q, inst.ps, grid)
    return {
        "index": index,
        "kind": inst.kind,
        "variant": inst.variant,
        "A": inst.A,
        "B": inst.B,
        "params": inst.ps.to_dict(),
        "premise": v.premise.outcome.value,
        "conclusion": v.conclusion.outcome.value,
        "hypotheses_pass": v.hypotheses_pass,
        "inconclusive": v.inconclusive,
        "consistent": v.consistent,
        "verdict": v.to_dict() if not v.consistent else None,
    }


def _run_chunk(args) -> list[dict]:
    seed, indices, grid = args
    return [run_instance(seed, i, grid) for i in indices]


def worker_count() -> int:
    raw = os.environ.get("SUBORD_LAB_THREADS")
    return max(1, int(raw)) if raw else 1


def run_campaign(trials: int = 500, seed: int = 0, grid: SampleGrid = CAMPAIGN_GRID,
                 workers: int | None = None) -> dict:
    """Run ``trials`` instances and summarize.  Results are ordered by index
    whatever the worker count, so reports are reproducible."""
    if trials < 0:
        raise ValueError("trials must be non-negative")
    workers = workers or worker_count()
    if workers == 1 or trials < 2:
        results = [run_instance(seed, i, grid) for i in range(trials)]
    else:
        chunks = [(seed, list(range(k, trials, workers)), grid) for k in range(workers)]
        # fork is unsafe once the OpenMP runtime behind the kernels is live
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_run_chunk, chunks))
        results = sorted((r for part in parts for r in part), key=lambda r: r["index"])
    counts: dict[str, dict[str, int]] = {}
    for r in results:
        key = f"{r['premise']}/{r['conclusion']}"
        bucket = counts.setdefault(r["kind"], {})
        bucket[key] = bucket.get(key, 0) + 1
    inconsistent = [r for r in results if not r["consistent"]]
    inconclusive = sum(r["inconclusive"] for r in results)
    return {
        "trials": trials,
        "seed": seed,
        "grid": grid.to_dict(),
        "counts": {k: dict(sorted(v.items())) for k, v in sorted(counts.items())},
        "inconsistencies": len(inconsistent),
        "inconclusive": inconclusive,
        "inconclusive_rate": inconclusive / trials if trials else 0.0,
        "instances": results,
    }
