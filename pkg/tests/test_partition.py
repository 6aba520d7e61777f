import math
import random

import pytest

from quadexp.family import ParamInterval, phase_domain
from quadexp.partition import (
    breakpoint_dump,
    phase_partition,
    subdivide_parameters,
)
from quadexp.rigor import representable


class TestParamGrid:
    def test_endpoints_exact(self):
        g = subdivide_parameters(representable("1.4"), 2.0, 60000)
        assert g.points[0] == representable("1.4")
        assert g.points[-1] == 2.0

    def test_halfway_matches_direct_formula(self):
        a = representable("1.4")
        g = subdivide_parameters(a, 2.0, 60000)
        # gcd(30000, 60000) = 30000 reduces the fraction to 1/2
        assert g.points[30000] == a + (1 * (2.0 - a)) / 2

    def test_monotone(self):
        g = subdivide_parameters(representable("1.4"), 2.0, 60000)
        for a, b in zip(g.points, g.points[1:]):
            assert a <= b

    def test_refinement_consistency(self):
        coarse = subdivide_parameters(representable("1.4"), 2.0, 6000)
        fine = subdivide_parameters(representable("1.4"), 2.0, 12000)
        for i, p in enumerate(coarse.points):
            assert fine.points[2 * i] == p

    def test_interval_accessor(self):
        g = subdivide_parameters(representable("1.4"), 2.0, 100)
        om = g.interval(7)
        assert om.index == 7
        assert om.a_lo == g.points[7] and om.a_hi == g.points[8]
        with pytest.raises(IndexError):
            g.interval(100)

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            subdivide_parameters(2.0, 1.4, 10)
        with pytest.raises(ValueError):
            subdivide_parameters(1.4, 2.0, 0)


class TestPhasePartition:
    def test_k2_single_cells(self):
        part = phase_partition(ParamInterval(0, 1.0, 2.0), 1.0, 2)
        assert len(part.cells) == 2
        sup = phase_domain(ParamInterval(0, 1.0, 2.0)).sup
        assert part.cells[0].lo == -sup and part.cells[0].hi == -1.0
        assert part.cells[1].lo == 1.0 and part.cells[1].hi == sup

    def test_k4_geometric_breakpoints(self):
        # sup of the domain for a in [1, 2] is 2, so ratio (p/delta) = 2 per half
        part = phase_partition(ParamInterval(0, 1.0, 2.0), 1.0, 4)
        pos = [c for c in part.cells if c.lo > 0]
        bps = [pos[0].lo, pos[0].hi, pos[1].hi]
        assert bps[0] == 1.0 and bps[2] == 2.0
        assert abs(bps[1] - math.sqrt(2.0) * 1.0) <= 4 * math.ulp(2.0)

    def test_cell_count_and_critical(self):
        om = ParamInterval(0, 1.8, 1.81)
        part = phase_partition(om, 0.001, 100)
        assert part.k == 100
        assert part.critical_cell.lo == -0.001 and part.critical_cell.hi == 0.001

    def test_coverage_sampling(self):
        rng = random.Random(23)
        om = ParamInterval(0, representable("1.9999"), 2.0)
        part = phase_partition(om, 0.001, 500)
        sup = phase_domain(om).sup
        cells = part.cells
        for _ in range(10000):
            x = rng.uniform(0.001, sup) * (1 if rng.random() < 0.5 else -1)
            assert any(c.lo <= x <= c.hi for c in cells), x

    def test_endpoint_chain(self):
        om = ParamInterval(0, 1.7, 1.71)
        part = phase_partition(om, 0.01, 64)
        m = part.k // 2
        neg, pos = part.cells[:m], part.cells[m:]
        for a, b in zip(pos, pos[1:]):
            assert a.hi == b.lo
        for a, b in zip(neg, neg[1:]):
            assert a.hi == b.lo
        assert pos[0].lo == 0.01 and neg[-1].hi == -0.01
        assert pos[-1].hi == phase_domain(om).sup

    def test_negative_cells_are_exact_negations(self):
        om = ParamInterval(0, 1.6, 1.62)
        part = phase_partition(om, 0.005, 40)
        m = part.k // 2
        for j in range(m):
            mirror = part.cells[m - 1 - j]
            cell = part.cells[m + j]
            assert mirror.lo == -cell.hi and mirror.hi == -cell.lo

    def test_validation(self):
        om = ParamInterval(0, 1.8, 1.81)
        with pytest.raises(ValueError):
            phase_partition(om, 0.001, 7)  # odd
        with pytest.raises(ValueError):
            phase_partition(om, 0.0, 10)
        with pytest.raises(ValueError):
            phase_partition(om, 5.0, 10)  # swallows the domain

    def test_no_cell_contains_zero_interior(self):
        om = ParamInterval(0, 1.9, 1.91)
        part = phase_partition(om, 1e-6, 2000)
        for c in part.cells:
            assert not (c.lo < 0.0 < c.hi)


class TestBreakpointDump:
    def test_roundtrip_and_order(self):
        om = ParamInterval(0, 1.75, 1.76)
        part = phase_partition(om, 0.01, 30)
        lines = breakpoint_dump(part)
        values = [float.fromhex(s) for s in lines]
        assert len(values) == part.k + 2
        assert values == sorted(values)
        assert values[0] == part.cells[0].lo
        assert values[-1] == part.cells[-1].hi
        # both critical-cell boundaries appear
        assert -0.01 in values and 0.01 in values
