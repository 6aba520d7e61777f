"""Sampling-based diagnostics for a (parameter interval, radius, cell
count) configuration: cell coverage, edge validity, and the path
inequality along simulated orbits.

These checks exercise the certified pipeline from the outside with random
points; they are corroboration for debugging, not part of the proof (the
pipeline's guarantees come from the interval arithmetic itself).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from random import Random
from typing import TextIO

from .digraph import build_representation
from .family import ParamInterval, fixed_point_neg, phase_domain
from .partition import PhasePartition, phase_partition

CRITICAL = -1


class CellLocator:
    """Maps points to partition cell indices (two at a shared endpoint);
    CRITICAL for the open critical neighborhood, nothing if outside the
    covered set."""

    def __init__(self, partition: PhasePartition):
        self.delta = partition.delta
        self.los = [c.lo for c in partition.cells]
        self.his = [c.hi for c in partition.cells]

    def locate(self, x: float) -> list[int]:
        if -self.delta < x < self.delta:
            return [CRITICAL]
        idx = bisect_right(self.los, x) - 1
        found = []
        for j in (idx, idx + 1):
            if 0 <= j < len(self.los) and self.los[j] <= x <= self.his[j]:
                found.append(j)
        return found


def sample_orbit(a: float, x0: float, delta: float, sup: float, cap: int) -> list[float]:
    """Floating-point orbit of x0 under x -> a - x^2, stopped on entering
    the open critical neighborhood or leaving the phase domain; the
    returned points all lie outside (-delta, delta)."""
    orbit = []
    x = x0
    for _ in range(cap):
        if -delta < x < delta or not -sup <= x <= sup:
            break
        orbit.append(x)
        x = a - x * x
    return orbit


def _match_path_weight(graph_edges: dict, cells_seq: list[list[int]]):
    """Max-weight matched path through per-step candidate cells; None when
    some step admits no edge (a genuine violation for interior points)."""
    current = {c: 0.0 for c in cells_seq[0]}
    for nxt_cells in cells_seq[1:]:
        nxt: dict[int, float] = {}
        for c, acc in current.items():
            for d in nxt_cells:
                w = graph_edges.get((c, d))
                if w is not None and (d not in nxt or acc + w > nxt[d]):
                    nxt[d] = acc + w
        if not nxt:
            return None
        current = nxt
    return max(current.values())


def run_selfcheck(
    omega: ParamInterval,
    delta: float,
    k: int,
    rng: Random,
    orbits: int = 50,
    steps: int = 2000,
    out: TextIO | None = None,
) -> bool:
    partition = phase_partition(omega, delta, k)
    graph = build_representation(omega, partition)
    locator = CellLocator(partition)
    sup = phase_domain(omega).sup
    edges = {(u, v): w for u, v, w in graph.edges()}
    ok = True

    def report(name: str, passed: bool, detail: str) -> None:
        nonlocal ok
        ok = ok and passed
        if out is not None:
            out.write(f"{'PASS' if passed else 'FAIL'} {name}: {detail}\n")

    # coverage: every point of the covered annulus lies in some cell
    misses = 0
    for _ in range(2000):
        x = rng.uniform(delta, sup) * (1 if rng.random() < 0.5 else -1)
        if not locator.locate(x):
            misses += 1
    report("coverage", misses == 0, f"{misses} uncovered samples of 2000")

    # edge validity: sampled transitions are graph edges
    missing = 0
    for _ in range(2000):
        a = rng.uniform(omega.a_lo, omega.a_hi)
        x = rng.uniform(delta, sup) * (1 if rng.random() < 0.5 else -1)
        here = locator.locate(x)
        there = locator.locate(a - x * x)
        if not here or not there:
            continue
        hit = any(
            (c, d if d != CRITICAL else graph.num_vertices - 1) in edges
            for c in here
            for d in there
        )
        if not hit:
            missing += 1
    report("edges", missing == 0, f"{missing} unmatched transitions of 2000")

    # path inequality: accumulated log-derivative dominates matched weight
    p_lo = fixed_point_neg(ParamInterval(0, omega.a_lo, omega.a_lo)).hi
    violations = 0
    used = 0
    for _ in range(orbits):
        a = rng.uniform(omega.a_lo, omega.a_hi)
        x0 = rng.uniform(0.98 * p_lo, -0.98 * p_lo)
        orbit = sample_orbit(a, x0, delta, sup, steps)
        if len(orbit) < 2:
            continue
        cells_seq = [locator.locate(x) for x in orbit]
        if not all(cells_seq):
            continue
        used += 1
        bound = _match_path_weight(edges, cells_seq)
        if bound is None:
            violations += 1
            continue
        logsum = math.fsum(math.log(abs(2.0 * x)) for x in orbit[:-1])
        # the final point contributes no edge; compare over n-1 steps
        if logsum < bound - 1e-9:
            violations += 1
    report("path-inequality", violations == 0, f"{violations} violations over {used} orbits")
    return ok
