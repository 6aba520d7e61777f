"""Transition digraph of the map on the partitioned phase space, and
minimum-cycle-mean solvers over it.

The graph has one vertex per partition cell plus one for the closed
critical cell.  Edges over-approximate the transition relation (an edge is
present whenever the parameter-uniform image enclosure of the source cell
meets the target), and each edge weight under-approximates log|f'| on the
set of points realizing the transition.  Consequently the sum of weights
along any path matching a true orbit is a lower bound for the log of the
accumulated derivative, and the minimum mean weight over all cycles is a
certified lower bound for the expansion exponent.

Three solvers are provided:

* ``brute_force_cycle_mean`` enumerates simple cycles with exact rational
  arithmetic (test oracle, tiny graphs only);
* ``min_cycle_mean_karp`` fills the classic dynamic-programming table over
  walk lengths (working memory grows with the square of the vertex count)
  and certifies its candidate with a down-rounded relaxation probe;
* ``min_cycle_mean_lowmem`` brackets the answer by parametric search:
  bisection over the candidate mean with a Bellman-Ford style detector
  whose solver state is linear in the vertex count.  Real cycles harvested
  from the detector's predecessor structure tighten the upper bracket.

All returned values are certified lower bounds: every accepted value is
backed either by a relaxation fixed point (a per-edge system of
inequalities that sums to nonnegativity around every cycle) or by exact
rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .family import ParamInterval, phase_domain
from .partition import PhasePartition
from .rigor import add_up, sub_down

__all__ = [
    "WeightedDigraph",
    "CycleMeanResult",
    "build_representation",
    "brute_force_cycle_mean",
    "min_cycle_mean_karp",
    "min_cycle_mean_lowmem",
    "dump_graph",
    "load_graph",
]

_INF = math.inf


# ---------------------------------------------------------------------------
# elementwise directed rounding (same semantics as the scalar rigor helpers)

def _arr_add_down(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return np.where(err < 0.0, np.nextafter(s, -_INF), s)


def _arr_add_up(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return np.where(err > 0.0, np.nextafter(s, _INF), s)


_SPLIT = 134217729.0

# below this magnitude a product may have underflowed and the error-free
# transform is unreliable; step outward unconditionally there (sound, and
# never reached by representation-graph quantities)
_SUBNORMAL_GUARD = 2.0**-1000


def _arr_prod_err(a, b, p):
    ah = a * _SPLIT
    ah = ah - (ah - a)
    al = a - ah
    bh = b * _SPLIT
    bh = bh - (bh - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _arr_mul_down(a, b):
    p = a * b
    tiny = (np.abs(p) < _SUBNORMAL_GUARD) & (a != 0.0) & (b != 0.0)
    bad = tiny | (_arr_prod_err(a, b, p) < 0.0)
    return np.where(bad, np.nextafter(p, -_INF), p)


def _arr_mul_up(a, b):
    p = a * b
    tiny = (np.abs(p) < _SUBNORMAL_GUARD) & (a != 0.0) & (b != 0.0)
    bad = tiny | (_arr_prod_err(a, b, p) > 0.0)
    return np.where(bad, np.nextafter(p, _INF), p)


def _arr_sqrt_down(x):
    r = np.sqrt(x)
    rr = r * r
    tiny = (rr < _SUBNORMAL_GUARD) & (x != 0.0)
    err = _arr_prod_err(r, r, rr)
    bad = tiny | (rr > x) | ((rr == x) & (err > 0.0))
    return np.where(bad, np.nextafter(r, -_INF), r)


def _arr_sqrt_up(x):
    r = np.sqrt(x)
    rr = r * r
    tiny = (rr < _SUBNORMAL_GUARD) & (x != 0.0)
    err = _arr_prod_err(r, r, rr)
    bad = tiny | (rr < x) | ((rr == x) & (err < 0.0))
    return np.where(bad, np.nextafter(r, _INF), r)


def _div_up(a: float, b: float) -> float:
    """Smallest representable >= a / b, for b > 0."""
    q = a / b
    p = q * b
    err = float(_arr_prod_err(np.float64(q), np.float64(b), np.float64(p)))
    if p < a or (p == a and err < 0.0):
        q = math.nextafter(q, _INF)
    return q


# ---------------------------------------------------------------------------
# graph container

class WeightedDigraph:
    """Finite digraph with at most one weighted edge per vertex pair.

    Edges are held as parallel arrays sorted by (source, target); in
    representation graphs the last vertex is the critical cell, which never
    has outgoing edges.
    """

    __slots__ = ("num_vertices", "src", "dst", "weight")

    def __init__(self, num_vertices: int, src, dst, weight):
        if num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        if not (src.shape == dst.shape == weight.shape):
            raise ValueError("edge arrays must have equal length")
        if src.size:
            if src.min() < 0 or src.max() >= num_vertices:
                raise ValueError("edge source out of range")
            if dst.min() < 0 or dst.max() >= num_vertices:
                raise ValueError("edge target out of range")
            if not np.all(np.isfinite(weight)):
                raise ValueError("edge weights must be finite")
            order = np.lexsort((dst, src))
            src, dst, weight = src[order], dst[order], weight[order]
            same = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if np.any(same):
                i = int(np.flatnonzero(same)[0])
                raise ValueError(f"duplicate edge ({src[i]}, {dst[i]})")
        self.num_vertices = int(num_vertices)
        self.src = src
        self.dst = dst
        self.weight = weight

    @classmethod
    def from_edges(cls, num_vertices: int, edges) -> "WeightedDigraph":
        """Build from an iterable of (from, to, weight) triples."""
        edges = list(edges)
        return cls(
            num_vertices,
            [e[0] for e in edges],
            [e[1] for e in edges],
            [e[2] for e in edges],
        )

    @property
    def edge_count(self) -> int:
        return int(self.src.size)

    def edges(self):
        """Iterate (from, to, weight) in canonical (from, to) order."""
        yield from zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist())

    def __repr__(self) -> str:
        return f"WeightedDigraph(vertices={self.num_vertices}, edges={self.edge_count})"


@dataclass(frozen=True)
class CycleMeanResult:
    """Minimum-cycle-mean answer: ``value`` is None exactly when the graph
    is acyclic, otherwise a certified lower bound on every cycle's mean
    weight, attained by some cycle up to the solver's stated slack.
    ``witness_cycle`` lists the vertices of such a cycle (first vertex not
    repeated) when one was extracted."""

    value: float | None
    witness_cycle: list[int] | None = None


def _canonical_cycle(cycle: list[int]) -> list[int]:
    # rotate so the smallest vertex index comes first
    pivot = cycle.index(min(cycle))
    return cycle[pivot:] + cycle[:pivot]


# ---------------------------------------------------------------------------
# representation construction

def build_representation(omega: ParamInterval, partition: PhasePartition) -> WeightedDigraph:
    """Weighted digraph representing the family on the partitioned phase
    space, uniformly over the parameter interval.

    Vertices 0..k-1 are the partition cells in ascending order; vertex k is
    the closed critical cell.  An edge (c, t) is included whenever the
    image enclosure of cell c (clamped to the phase domain) meets vertex t;
    its weight is the down-rounded infimum of log|2x| over the part of c
    that can actually reach t, i.e. the intersection of c with the
    preimage enclosure of t.
    """
    k = partition.k
    delta = partition.delta
    a_lo, a_hi = omega.a_lo, omega.a_hi
    dom_sup = phase_domain(omega).sup

    los = np.fromiter((c.lo for c in partition.cells), dtype=np.float64, count=k)
    his = np.fromiter((c.hi for c in partition.cells), dtype=np.float64, count=k)

    # parameter-uniform image enclosure of each cell, clamped to the domain
    mn = np.minimum(np.abs(los), np.abs(his))
    mx = np.maximum(np.abs(los), np.abs(his))
    sq_lo = _arr_mul_down(mn, mn)
    sq_hi = _arr_mul_up(mx, mx)
    img_lo = np.maximum(_arr_add_down(a_lo, -sq_hi), -dom_sup)
    img_hi = np.minimum(_arr_add_up(a_hi, -sq_lo), dom_sup)

    # contiguous range of cells intersecting each image
    t_lo = np.searchsorted(his, img_lo, side="left")
    t_hi = np.searchsorted(los, img_hi, side="right") - 1
    counts = np.maximum(t_hi - t_lo + 1, 0)

    total = int(counts.sum())
    srcs = np.repeat(np.arange(k, dtype=np.int64), counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    dsts = offsets + np.repeat(t_lo, counts)

    # edges into the critical cell
    hits_delta = np.flatnonzero((img_lo <= delta) & (img_hi >= -delta))
    srcs = np.concatenate([srcs, hits_delta])
    dsts = np.concatenate([dsts, np.full(hits_delta.size, k, dtype=np.int64)])

    # weight: inf log|2x| over (source cell) /\ (preimage enclosure of target)
    is_cell = dsts < k
    safe = np.minimum(dsts, k - 1)
    tgt_lo = np.where(is_cell, los[safe], -delta)
    tgt_hi = np.where(is_cell, his[safe], delta)
    rad_lo = np.maximum(_arr_add_down(a_lo, -tgt_hi), 0.0)
    rad_hi = _arr_add_up(a_hi, -tgt_lo)
    if rad_hi.size and rad_hi.min() < 0.0:
        raise AssertionError("edge with entirely negative preimage radicand")
    s_lo = _arr_sqrt_down(rad_lo)
    s_hi = _arr_sqrt_up(rad_hi)

    src_lo = los[srcs]
    src_hi = his[srcs]
    positive = src_lo > 0.0
    j_lo = np.where(positive, np.maximum(src_lo, s_lo), np.maximum(src_lo, -s_hi))
    j_hi = np.where(positive, np.minimum(src_hi, s_hi), np.minimum(src_hi, -s_lo))
    if j_lo.size and np.any(j_lo > j_hi):
        raise AssertionError("edge whose source does not meet the target preimage")
    min_abs = np.where(positive, j_lo, -j_hi)

    log = math.log
    nxt = math.nextafter
    weights = np.fromiter(
        (nxt(log(2.0 * v), -_INF) for v in min_abs.tolist()),
        dtype=np.float64,
        count=min_abs.size,
    )
    return WeightedDigraph(k + 1, srcs, dsts, weights)


# ---------------------------------------------------------------------------
# relaxation detector (shared by the two fast solvers)

_FIXED_POINT = 0
_NEG_CYCLE = 1
_CAP = 2


class _ProbeOutcome:
    __slots__ = ("status", "upper", "upper_cycle")

    def __init__(self, status, upper=None, upper_cycle=None):
        self.status = status
        self.upper = upper          # round-up mean of the best harvested real cycle
        self.upper_cycle = upper_cycle


class _RelaxationDetector:
    """Decides whether the graph shifted by a candidate mean admits a
    negative cycle, with distances and predecessors of vertex-count size
    plus buffers proportional to the edge list.

    Every relaxation sum is rounded down via an error-free transformation,
    so a reached fixed point is a rigorous per-edge certificate that all
    cycle means are >= the probed value.  A candidate cycle read off the
    predecessor structure is trusted as evidence of the converse only
    after its shifted weight is re-summed with upward rounding and found
    negative; independently, the plain round-up mean of any such real
    cycle is harvested as an upper bracket for the minimum cycle mean.
    """

    def __init__(self, graph: WeightedDigraph):
        order = np.lexsort((graph.src, graph.dst))
        self.n = graph.num_vertices
        self.src = graph.src[order]
        self.dst = graph.dst[order]
        self.w = graph.weight[order]
        self.targets, self.seg_starts = np.unique(self.dst, return_index=True)
        self.seg_lengths = np.diff(np.append(self.seg_starts, self.dst.size))
        self._src_list = self.src.tolist()
        self.d = np.zeros(self.n)
        self.w_shifted = np.empty_like(self.w)

    def _predecessor_cycles(self, cand, segmin):
        """Cycles of the current best-predecessor functional graph, as
        (vertex list, edge index list) pairs; vertex lists run in edge
        direction and edge k goes from vertex k to vertex k+1 (cyclically).
        Ties pick the smallest source (edges are sorted by target then
        source)."""
        mask = cand == np.repeat(segmin, self.seg_lengths)
        hits = np.flatnonzero(mask)
        verts, first = np.unique(self.dst[hits], return_index=True)
        pred_edge = np.full(self.n, -1, dtype=np.int64)
        pred_edge[verts] = hits[first]
        pred_list = pred_edge.tolist()
        src_list = self._src_list

        cycles = []
        state = bytearray(self.n)  # 0 unseen, 1 on current walk, 2 done
        for start in range(self.n):
            if state[start] or pred_list[start] < 0:
                continue
            path: list[int] = []
            pos: dict[int, int] = {}
            v = start
            while True:
                if state[v] == 1:
                    at = pos[v]
                    walk = path[at:]
                    edges = [pred_list[u] for u in walk]
                    # walk runs v -> pred(v); reverse to edge direction
                    cycles.append((walk[::-1], edges[::-1]))
                    break
                if state[v] == 2:
                    break
                state[v] = 1
                pos[v] = len(path)
                path.append(v)
                e = pred_list[v]
                if e < 0:
                    break
                v = src_list[e]
            for u in path:
                state[u] = 2
        return cycles

    def _cycle_mean_up(self, cyc_edges) -> float:
        s = 0.0
        for wv in self.w[cyc_edges].tolist():
            s = add_up(s, wv)
        return _div_up(s, float(len(cyc_edges)))

    def probe(self, mu: float, max_sweeps: int | None = None) -> _ProbeOutcome:
        if max_sweeps is None:
            max_sweeps = self.n + 2
        np.copyto(self.w_shifted, _arr_add_down(self.w, -mu))
        d = self.d
        d.fill(0.0)
        src, wsh = self.src, self.w_shifted
        targets, seg_starts = self.targets, self.seg_starts
        upper = None
        upper_cycle = None
        sweep = 0
        while sweep < max_sweeps:
            cand = _arr_add_down(d[src], wsh)
            if cand.size == 0:
                return _ProbeOutcome(_FIXED_POINT)
            segmin = np.minimum.reduceat(cand, seg_starts)
            old = d[targets]
            new = np.minimum(old, segmin)
            if np.array_equal(new, old):
                return _ProbeOutcome(_FIXED_POINT, upper, upper_cycle)
            d[targets] = new
            sweep += 1
            if sweep & (sweep - 1) == 0 or sweep % 32 == 0 or sweep == max_sweeps:
                for cyc_vertices, cyc_edges in self._predecessor_cycles(cand, segmin):
                    m = self._cycle_mean_up(cyc_edges)
                    if upper is None or m < upper:
                        upper, upper_cycle = m, cyc_vertices
                    s = 0.0
                    for wv in wsh[cyc_edges].tolist():
                        s = add_up(s, wv)
                    if s < 0.0:
                        return _ProbeOutcome(_NEG_CYCLE, upper, upper_cycle)
        return _ProbeOutcome(_CAP, upper, upper_cycle)


def _graph_is_acyclic(detector: _RelaxationDetector, max_weight: float) -> bool:
    # Shift every weight strictly negative: a fixed point then proves there
    # is no cycle at all, while any cycle forces the probe to keep relaxing
    # past the sweep cap (a fixed point is reached within n sweeps on DAGs).
    return detector.probe(max_weight + 1.0).status == _FIXED_POINT


# ---------------------------------------------------------------------------
# solvers

def brute_force_cycle_mean(graph: WeightedDigraph) -> CycleMeanResult:
    """Exact minimum over all simple cycles, by exhaustive enumeration with
    rational arithmetic (the minimum cycle mean is attained on a simple
    cycle).  Only for small graphs."""
    if graph.num_vertices > 12:
        raise ValueError(f"brute force limited to 12 vertices, got {graph.num_vertices}")
    n = graph.num_vertices
    adj: dict[int, list[tuple[int, Fraction]]] = {u: [] for u in range(n)}
    for u, v, w in graph.edges():
        adj[u].append((v, Fraction(w)))

    best_mean: Fraction | None = None
    best_cycle: list[int] | None = None

    def consider(cycle: list[int], total: Fraction) -> None:
        nonlocal best_mean, best_cycle
        mean = total / len(cycle)
        if best_mean is None or mean < best_mean or (mean == best_mean and cycle < best_cycle):
            best_mean = mean
            best_cycle = list(cycle)

    def extend(start: int, v: int, total: Fraction, path: list[int], on_path: set[int]) -> None:
        for t, w in adj[v]:
            if t == start:
                consider(path, total + w)
            elif t > start and t not in on_path:
                path.append(t)
                on_path.add(t)
                extend(start, t, total + w, path, on_path)
                on_path.remove(t)
                path.pop()

    for s in range(n):
        extend(s, s, Fraction(0), [s], {s})

    if best_mean is None:
        return CycleMeanResult(None, None)
    value = float(best_mean)
    if Fraction(value) > best_mean:
        value = math.nextafter(value, -_INF)
    return CycleMeanResult(value, _canonical_cycle(best_cycle))


def _certify_down(detector: _RelaxationDetector, candidate: float, floor: float) -> float:
    """Largest tested value <= candidate that the detector certifies as a
    lower bound for every cycle mean: the candidate itself, else one ulp
    below, else geometrically farther down.  Falls back to the always-valid
    floor (the minimum edge weight)."""
    mu = candidate
    step = 0.0
    for _ in range(48):
        if mu <= floor:
            break
        if detector.probe(mu).status == _FIXED_POINT:
            return mu
        if step == 0.0:
            mu = math.nextafter(candidate, -_INF)
            step = max(abs(candidate), 1.0) * 2.0**-50
        else:
            mu = sub_down(mu, step)
            step *= 4.0
    return floor


def min_cycle_mean_karp(graph: WeightedDigraph) -> CycleMeanResult:
    """Minimum cycle mean via the dynamic program over exact walk lengths
    0..n, characterized as min over vertices of the max over prefix lengths
    of the normalized table difference.

    When every table entry is exactly representable (integer weights on a
    modest graph), the recurrence is exact and the characterization is
    evaluated in rational arithmetic, so the result is the true minimum
    mean rounded toward minus infinity.  Otherwise the nearest-arithmetic
    candidate is certified by a down-rounded relaxation probe and lowered
    (one ulp first, then geometrically) until it passes; either way the
    returned value never exceeds the true minimum mean.
    """
    detector = _RelaxationDetector(graph)
    if graph.edge_count == 0 or _graph_is_acyclic(detector, float(graph.weight.max())):
        return CycleMeanResult(None, None)

    n = graph.num_vertices
    src, w = detector.src, detector.w
    targets, seg_starts = detector.targets, detector.seg_starts

    table = np.full((n + 1, n), _INF)
    table[0].fill(0.0)
    for j in range(1, n + 1):
        cand = table[j - 1][src] + w
        table[j][targets] = np.minimum.reduceat(cand, seg_starts)

    last = table[n]
    cols = np.flatnonzero(np.isfinite(last))

    integral = (
        n <= 256
        and bool(np.all(np.floor(w) == w))
        and float(np.abs(w).max()) * n < 2.0**52
    )
    if integral:
        # table sums are exact; evaluate the characterization rationally
        best: Fraction | None = None
        v_star = -1
        for col in cols.tolist():
            top = int(last[col])
            worst: Fraction | None = None
            for j in range(n):
                d = table[j][col]
                if math.isfinite(d):
                    q = Fraction(top - int(d), n - j)
                    if worst is None or q > worst:
                        worst = q
            if worst is not None and (best is None or worst < best):
                best = worst
                v_star = col
        value = float(best)
        if Fraction(value) > best:
            value = math.nextafter(value, -_INF)
        witness = _karp_witness(detector, table, v_star)
        return CycleMeanResult(value, witness)

    per_vertex = np.full(cols.size, -_INF)
    for j in range(n):
        per_vertex = np.maximum(per_vertex, (last[cols] - table[j, cols]) / (n - j))
    pick = int(per_vertex.argmin())
    candidate = float(per_vertex[pick])
    v_star = int(cols[pick])

    witness = _karp_witness(detector, table, v_star)
    value = _certify_down(detector, candidate, float(w.min()))
    return CycleMeanResult(value, witness)


def _karp_witness(detector: _RelaxationDetector, table, v_star: int) -> list[int] | None:
    """Walk optimal predecessors back from (n, v_star); the first repeated
    vertex closes a cycle attaining the minimum mean up to rounding slack.
    Predecessors are recovered on demand from the finished table (first
    minimum in target-then-source edge order, so ties take the smallest
    source)."""
    n = detector.n
    seq = [0] * (n + 1)
    seq[n] = v_star
    for j in range(n, 0, -1):
        v = seq[j]
        t = int(np.searchsorted(detector.targets, v))
        if t >= detector.targets.size or detector.targets[t] != v:
            return None
        begin = int(detector.seg_starts[t])
        end = begin + int(detector.seg_lengths[t])
        cand = table[j - 1][detector.src[begin:end]] + detector.w[begin:end]
        seq[j - 1] = int(detector.src[begin + int(np.argmin(cand))])
    seen: dict[int, int] = {}
    for i, v in enumerate(seq):
        if v in seen:
            return _canonical_cycle(seq[seen[v]:i])
        seen[v] = i
    return None


def min_cycle_mean_lowmem(graph: WeightedDigraph, eps_search: float = 1e-9) -> CycleMeanResult:
    """Minimum cycle mean by parametric search with solver state linear in
    the vertex count (beyond the edge list itself).

    Maintains a bracket [lo, hi]: lo is a proven lower bound for every
    cycle mean (initially the minimum edge weight, afterwards only values
    certified by a relaxation fixed point), and hi is a realized upper
    bound (initially the maximum weight, afterwards the round-up mean of an
    actual cycle).  Bisection probes the midpoint; an inconclusive probe
    retries slightly below it, so the bracket always contains the true
    value and the returned lo is within eps_search of it.
    """
    detector = _RelaxationDetector(graph)
    if graph.edge_count == 0:
        return CycleMeanResult(None, None)
    w = detector.w
    if _graph_is_acyclic(detector, float(w.max())):
        return CycleMeanResult(None, None)

    lo = float(w.min())
    hi = float(w.max())
    witness: list[int] | None = None
    budget = 240
    stall = 0
    while hi - lo > 0.5 * eps_search and stall < 8 and budget > 0:
        mu = 0.5 * (lo + hi)
        if not lo < mu < hi:
            break
        budget -= 1
        outcome = detector.probe(mu)
        if outcome.upper is not None and outcome.upper < hi:
            hi = max(outcome.upper, lo)
            witness = _canonical_cycle(outcome.upper_cycle)
        if outcome.status == _FIXED_POINT:
            lo = mu
            stall = 0
        elif outcome.status == _NEG_CYCLE:
            # the verified cycle's harvested mean already lowered hi; keep a
            # safety margin in the (unreachable) case it did not
            hi = min(hi, add_up(mu, 2.0**-40))
            stall = 0
        else:
            # ambiguous cap-out: retry below the midpoint until decisive
            step = max(0.25 * eps_search, 2.0**-44)
            decided = False
            for _ in range(8):
                mu = sub_down(mu, step)
                step *= 4.0
                if mu <= lo or budget <= 0:
                    break
                budget -= 1
                retry = detector.probe(mu)
                if retry.upper is not None and retry.upper < hi:
                    hi = max(retry.upper, lo)
                    witness = _canonical_cycle(retry.upper_cycle)
                if retry.status == _FIXED_POINT:
                    lo = mu
                    decided = True
                    break
                if retry.status == _NEG_CYCLE:
                    hi = min(hi, add_up(mu, 2.0**-40))
                    decided = True
                    break
            stall = 0 if decided else stall + 1
    return CycleMeanResult(lo, witness)


# ---------------------------------------------------------------------------
# dump format

def dump_graph(graph: WeightedDigraph) -> str:
    """Text dump: header line ``vertices <n>``, then one edge per line
    ``  <from> <to> <weight-hex-float>`` sorted by (from, to)."""
    lines = [f"vertices {graph.num_vertices}"]
    for u, v, w in graph.edges():
        lines.append(f"  {u} {v} {float(w).hex()}")
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> WeightedDigraph:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "vertices":
        raise ValueError("line 1: expected 'vertices <n>'")
    n = int(head[1])
    edges = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {i}: expected '<from> <to> <weight-hex>'")
        try:
            edges.append((int(parts[0]), int(parts[1]), float.fromhex(parts[2])))
        except ValueError as exc:
            raise ValueError(f"line {i}: {exc}") from None
    return WeightedDigraph(n, [e[0] for e in edges], [e[1] for e in edges], [e[2] for e in edges])
