import math
import random
from fractions import Fraction

import numpy as np
import pytest

from quadexp.digraph import (
    CycleMeanResult,
    WeightedDigraph,
    brute_force_cycle_mean,
    build_representation,
    dump_graph,
    load_graph,
    min_cycle_mean_karp,
    min_cycle_mean_lowmem,
)
from quadexp.family import ParamInterval, deriv_log_inf, image, phase_domain, preimage
from quadexp.partition import phase_partition
from quadexp.rigor import EMPTY, Enclosure, iv_intersect, representable

from conftest import random_int_graph


def reference_representation(omega, partition):
    """Scalar re-implementation of the graph construction straight from the
    family-module operations; must agree with the vectorized builder."""
    k = partition.k
    domain = phase_domain(omega).domain
    vertices = list(partition.cells) + [partition.critical_cell]
    edges = []
    for j, cell in enumerate(partition.cells):
        img = iv_intersect(image(omega, cell), domain)
        assert img is not EMPTY
        for t, target in enumerate(vertices):
            if iv_intersect(img, target) is EMPTY:
                continue
            best = None
            for branch in preimage(omega, target):
                if branch is EMPTY:
                    continue
                piece = iv_intersect(cell, branch)
                if piece is EMPTY:
                    continue
                w = deriv_log_inf(piece)
                best = w if best is None else min(best, w)
            assert best is not None, "edge without a realizable slice"
            edges.append((j, t, best))
    return WeightedDigraph.from_edges(k + 1, edges)


class TestGraphContainer:
    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError):
            WeightedDigraph.from_edges(2, [(0, 1, 1.0), (0, 1, 2.0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            WeightedDigraph.from_edges(2, [(0, 2, 1.0)])

    def test_canonical_order(self):
        g = WeightedDigraph.from_edges(3, [(2, 0, 1.0), (0, 2, 2.0), (0, 1, 3.0)])
        assert list(g.edges()) == [(0, 1, 3.0), (0, 2, 2.0), (2, 0, 1.0)]


class TestBuildRepresentation:
    def test_vertex_count(self):
        om = ParamInterval(0, 1.8, 1.81)
        for k in (2, 10, 64):
            g = build_representation(om, phase_partition(om, 0.01, k))
            assert g.num_vertices == k + 1

    def test_fixed_point_self_loop(self):
        # at a = 2 the positive fixed point is 1; its cell maps over itself
        om = ParamInterval(0, 2.0, 2.0)
        part = phase_partition(om, 0.5, 4)
        g = build_representation(om, part)
        edges = {(u, v) for u, v, _ in g.edges()}
        loops = [j for j, c in enumerate(part.cells) if c.lo <= 1.0 <= c.hi and (j, j) in edges]
        assert loops

    def test_critical_cell_has_no_out_edges(self):
        om = ParamInterval(0, representable("1.9999"), 2.0)
        g = build_representation(om, phase_partition(om, 0.001, 100))
        assert int(g.src.max()) < g.num_vertices - 1

    def test_matches_scalar_reference(self):
        for a_lo, a_hi, delta, k in (
            (1.8, 1.81, 0.01, 16),
            (representable("1.9999"), 2.0, 0.001, 40),
            (representable("1.4"), representable("1.41"), 0.05, 24),
        ):
            om = ParamInterval(0, a_lo, a_hi)
            part = phase_partition(om, delta, k)
            got = build_representation(om, part)
            want = reference_representation(om, part)
            assert got.num_vertices == want.num_vertices
            assert got.edge_count == want.edge_count
            assert np.array_equal(got.src, want.src)
            assert np.array_equal(got.dst, want.dst)
            assert np.array_equal(got.weight, want.weight)

    def test_transition_sampling(self):
        rng = random.Random(29)
        om = ParamInterval(0, 1.85, 1.8501)
        part = phase_partition(om, 0.001, 200)
        g = build_representation(om, part)
        edges = {(u, v) for u, v, _ in g.edges()}
        cells = part.cells
        sup = phase_domain(om).sup
        hits = 0
        for _ in range(10000):
            a = rng.uniform(om.a_lo, om.a_hi)
            x = rng.uniform(0.001, sup) * (1 if rng.random() < 0.5 else -1)
            sources = [j for j, c in enumerate(cells) if c.lo <= x <= c.hi]
            if not sources:
                continue
            y = a - x * x
            targets = [j for j, c in enumerate(cells) if c.lo <= y <= c.hi]
            if -0.001 < y < 0.001 or not targets:
                targets = targets + [len(cells)]
            assert any((s, t) in edges for s in sources for t in targets), (a, x, y)
            hits += 1
        assert hits > 9000

    def test_weights_lower_bound_log_derivative(self):
        rng = random.Random(31)
        om = ParamInterval(0, 1.75, 1.7501)
        part = phase_partition(om, 0.01, 60)
        g = build_representation(om, part)
        cells = list(part.cells) + [part.critical_cell]
        for u, v, w in g.edges():
            # sample points of the source that truly reach the target
            src, tgt = cells[u], cells[v]
            for _ in range(40):
                a = rng.uniform(om.a_lo, om.a_hi)
                x = rng.uniform(src.lo, src.hi)
                y = a - x * x
                if tgt.lo <= y <= tgt.hi:
                    assert w <= math.log(abs(2 * x)) + 1e-12, (u, v, w, x)


class TestBruteForce:
    def test_triangle(self):
        g = WeightedDigraph.from_edges(3, [(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0)])
        r = brute_force_cycle_mean(g)
        assert r.value == 2.0
        assert r.witness_cycle == [0, 1, 2]

    def test_self_loop_beats_triangle(self):
        g = WeightedDigraph.from_edges(
            3, [(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0), (1, 1, 1.5)]
        )
        r = brute_force_cycle_mean(g)
        assert r.value == 1.5
        assert r.witness_cycle == [1]

    def test_acyclic_path(self):
        g = WeightedDigraph.from_edges(3, [(0, 1, 1.0), (1, 2, 2.0)])
        assert brute_force_cycle_mean(g) == CycleMeanResult(None, None)

    def test_rejects_large(self):
        g = WeightedDigraph.from_edges(13, [(0, 1, 1.0)])
        with pytest.raises(ValueError):
            brute_force_cycle_mean(g)

    def test_exact_rational_rounding(self):
        # mean 7/3 is not representable; result is its round-down image
        g = WeightedDigraph.from_edges(3, [(0, 1, 2.0), (1, 2, 2.0), (2, 0, 3.0)])
        r = brute_force_cycle_mean(g)
        assert Fraction(r.value) <= Fraction(7, 3)
        assert Fraction(math.nextafter(r.value, math.inf)) > Fraction(7, 3)


class TestSolverExamples:
    def test_single_self_loop(self):
        g = WeightedDigraph.from_edges(1, [(0, 0, 3.0)])
        assert min_cycle_mean_karp(g).value == 3.0
        assert abs(min_cycle_mean_lowmem(g).value - 3.0) <= 1e-9

    def test_two_cycle(self):
        g = WeightedDigraph.from_edges(2, [(0, 1, 1.0), (1, 0, 3.0)])
        assert min_cycle_mean_karp(g).value == 2.0
        assert abs(min_cycle_mean_lowmem(g).value - 2.0) <= 1e-9

    def test_acyclic(self):
        g = WeightedDigraph.from_edges(4, [(0, 1, -1.0), (1, 2, -2.0), (2, 3, -3.0)])
        assert min_cycle_mean_karp(g).value is None
        assert min_cycle_mean_lowmem(g).value is None

    def test_negative_weights(self):
        g = WeightedDigraph.from_edges(2, [(0, 1, -5.0), (1, 0, -1.0)])
        assert min_cycle_mean_karp(g).value == -3.0
        assert abs(min_cycle_mean_lowmem(g).value + 3.0) <= 1e-9


class TestSolverOracle:
    def test_random_graphs_against_brute_force(self, rng):
        checked = 0
        for _ in range(300):
            g = random_int_graph(rng)
            want = brute_force_cycle_mean(g)
            karp = min_cycle_mean_karp(g)
            low = min_cycle_mean_lowmem(g)
            if want.value is None:
                assert karp.value is None and low.value is None
                continue
            assert karp.value == want.value, (list(g.edges()), karp.value, want.value)
            assert abs(low.value - want.value) <= 1e-9
            checked += 1
        assert checked > 150

    def test_float_weight_graphs(self, rng):
        for _ in range(120):
            n = rng.randint(2, 7)
            edges = []
            for u in range(n):
                for v in range(n):
                    if rng.random() < 0.4:
                        edges.append((u, v, rng.uniform(-8, 8)))
            g = WeightedDigraph.from_edges(n, edges)
            want = brute_force_cycle_mean(g)
            karp = min_cycle_mean_karp(g)
            low = min_cycle_mean_lowmem(g)
            if want.value is None:
                assert karp.value is None and low.value is None
                continue
            # certified lower bounds within solver slack of the exact value
            assert karp.value <= math.nextafter(want.value, math.inf)
            assert want.value - karp.value <= 1e-10
            assert low.value <= math.nextafter(want.value, math.inf)
            assert want.value - low.value <= 1e-9


class TestWitnesses:
    def test_witness_attains_value(self, rng):
        for _ in range(100):
            g = random_int_graph(rng)
            res = brute_force_cycle_mean(g)
            for solver in (min_cycle_mean_karp, min_cycle_mean_lowmem):
                r = solver(g)
                if r.value is None or r.witness_cycle is None:
                    continue
                weights = {(u, v): w for u, v, w in g.edges()}
                cyc = r.witness_cycle
                total = Fraction(0)
                for i, u in enumerate(cyc):
                    v = cyc[(i + 1) % len(cyc)]
                    assert (u, v) in weights, (cyc, list(g.edges()))
                    total += Fraction(weights[(u, v)])
                mean = total / len(cyc)
                assert mean >= Fraction(res.value)
                assert float(mean) - r.value <= 1e-8

    def test_critical_cell_not_in_witness(self):
        om = ParamInterval(0, representable("1.9999"), 2.0)
        g = build_representation(om, phase_partition(om, 0.001, 200))
        for solver in (min_cycle_mean_karp, min_cycle_mean_lowmem):
            r = solver(g)
            assert r.witness_cycle is not None
            assert g.num_vertices - 1 not in r.witness_cycle


class TestMonotonicity:
    def test_weight_decrease_never_raises_result(self, rng):
        for _ in range(60):
            g = random_int_graph(rng, max_vertices=6)
            base_karp = min_cycle_mean_karp(g).value
            if base_karp is None:
                continue
            edges = list(g.edges())
            i = rng.randrange(len(edges))
            u, v, w = edges[i]
            edges[i] = (u, v, w - 1.0)
            g2 = WeightedDigraph.from_edges(g.num_vertices, edges)
            assert min_cycle_mean_karp(g2).value <= base_karp
            low2 = min_cycle_mean_lowmem(g2).value
            low1 = min_cycle_mean_lowmem(g).value
            assert low2 <= low1 + 2e-9


class TestPathInequality:
    def test_orbit_paths_dominated_by_weights(self):
        rng = random.Random(37)
        om = ParamInterval(0, 1.9, 1.9001)
        part = phase_partition(om, 0.005, 120)
        g = build_representation(om, part)
        weights = {(u, v): w for u, v, w in g.edges()}
        cells = part.cells
        sup = phase_domain(om).sup
        checked = 0
        for _ in range(200):
            a = rng.uniform(om.a_lo, om.a_hi)
            x = rng.uniform(-sup * 0.95, sup * 0.95)
            orbit = []
            t = x
            for _ in range(400):
                if -0.005 < t < 0.005 or not -sup <= t <= sup:
                    break
                orbit.append(t)
                t = a - t * t
            if len(orbit) < 3:
                continue
            seq = []
            ok = True
            for t in orbit:
                cand = [j for j, c in enumerate(cells) if c.lo <= t <= c.hi]
                if not cand:
                    ok = False
                    break
                seq.append(cand)
            if not ok:
                continue
            frontier = {c: 0.0 for c in seq[0]}
            for cand in seq[1:]:
                nxt = {}
                for c, acc in frontier.items():
                    for d in cand:
                        w = weights.get((c, d))
                        if w is not None and (d not in nxt or acc + w > nxt[d]):
                            nxt[d] = acc + w
                assert nxt, "orbit transition missing from graph"
                frontier = nxt
            bound = max(frontier.values())
            log_sum = math.fsum(math.log(abs(2 * t)) for t in orbit[:-1])
            assert log_sum >= bound - 1e-9
            checked += 1
        assert checked > 50


class TestDumpFormat:
    def test_roundtrip(self):
        g = WeightedDigraph.from_edges(3, [(0, 1, 0.1), (1, 0, -2.5), (2, 1, 1e-9)])
        text = dump_graph(g)
        lines = text.splitlines()
        assert lines[0] == "vertices 3"
        assert all(line.startswith("  ") for line in lines[1:])
        g2 = load_graph(text)
        assert g2.num_vertices == 3
        assert list(g2.edges()) == list(g.edges())

    def test_malformed_lines(self):
        with pytest.raises(ValueError, match="line 1"):
            load_graph("nonsense 3\n")
        with pytest.raises(ValueError, match="line 2"):
            load_graph("vertices 2\n  0 1\n")
        with pytest.raises(ValueError, match="line 3"):
            load_graph("vertices 2\n  0 1 0x1p0\n  1 0 zzz\n")
