"""Deterministic subdivision of parameter space and of the phase interval.

The parameter grid uses the gcd-truncated formula

    theta_i = a_min + ((i / gcd(i, N)) * (a_max - a_min)) / (N / gcd(i, N))

with every arithmetic step rounded to nearest, so grids for N and 2N agree
bit-exactly at shared points.

The phase partition subdivides the complement of the critical neighborhood
(-delta, delta) into k cells, non-uniformly.  Two effects drive the cell
sizing.  Near the critical neighborhood, breakpoints geometric in |x| keep
the per-cell oscillation of log|2x| constant, so edge weight bounds are
uniformly tight.  Near the endpoints +-p of the phase interval the
dynamics is most sensitive: orbits leaving the critical neighborhood land
in a sliver below the critical value (width ~ the parameter interval plus
delta^2) next to +p, and then creep away from the repelling fixed point at
-p, multiplying their distance by about |2p| per step.  Cells of constant
relative width in |x| are widest exactly there, which lets transitions
composed through them cut the creep short and produces spuriously negative
cycle means at moderate k.  The outer band is therefore graded
geometrically in the distance u = p - |x| instead, down to a resolution
floor matched to the sliver width.  For small k the outer band is empty
and the construction reduces to the plain geometric one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .family import ParamInterval, phase_domain
from .rigor import Enclosure, RigorError

__all__ = ["ParamGrid", "PhasePartition", "subdivide_parameters", "phase_partition"]


@dataclass(frozen=True, slots=True)
class ParamGrid:
    """Ordered subdivision points theta_0 .. theta_N of [a_min, a_max]."""

    n: int
    points: tuple[float, ...]

    def interval(self, i: int) -> ParamInterval:
        if not 0 <= i < self.n:
            raise IndexError(f"grid interval index {i} out of range [0, {self.n})")
        return ParamInterval(i, self.points[i], self.points[i + 1])


def subdivide_parameters(a_min: float, a_max: float, n: int) -> ParamGrid:
    if n < 1:
        raise ValueError(f"need at least one interval, got n={n}")
    if not a_min < a_max:
        raise ValueError(f"empty parameter range [{a_min!r}, {a_max!r}]")
    d = a_max - a_min
    points = []
    for i in range(n + 1):
        g = math.gcd(i, n)
        points.append(a_min + ((i // g) * d) / (n // g))
    return ParamGrid(n, tuple(points))


@dataclass(frozen=True, slots=True)
class PhasePartition:
    """k cells covering I_omega minus (-delta, delta), plus the closed
    critical cell [-delta, delta].

    Cells are sorted ascending, have pairwise disjoint interiors, and
    adjacent cells on the same side of 0 share endpoints exactly, so the
    covered set has no gaps.  Negative-side cells are exact negations of
    positive-side cells.
    """

    delta: float
    cells: tuple[Enclosure, ...]
    critical_cell: Enclosure

    @property
    def k(self) -> int:
        return len(self.cells)


# share of each half's cells available to the endpoint band, and the
# band's resolution floor relative to sup/k: finer k resolves the creep
# away from the repelling fixed point proportionally deeper, which is what
# makes the computed exponent grow toward its plateau as k increases
_TOP_SHARE = 3
_TOP_FLOOR = 1.5


def _breakpoints(delta: float, sup: float, k: int, smear: float) -> list[float]:
    # Positive-side boundaries delta = b_0 < ... < b_m = sup.  Inner band
    # geometric in x (b_j ~ delta * r^j); outer band geometric in u = sup-x
    # from sup/8 down to the resolution floor, with its cell count capped so
    # no band cell is narrower than the parameter smear (an image enclosure
    # is at least that wide, so finer band cells only multiply edges without
    # sharpening any bound).  Plain nearest rounding throughout: coverage
    # comes from the shared-endpoint chain, not from how interiors round.
    m = k // 2
    u_max = sup / 8.0
    u_min = sup * max(_TOP_FLOOR / k, 1e-12)
    knee = sup - u_max

    m_top = m // _TOP_SHARE
    if m_top >= 2 and knee > delta and u_min < u_max:
        span = math.log(u_max / u_min)
        coarsest = math.log1p(smear / u_min)
        if coarsest > 0.0:
            m_top = min(m_top, max(2, math.ceil(span / coarsest)))
    else:
        m_top = 0
        knee = sup

    points = [delta]
    m_geo = m - m_top
    ratio = knee / delta
    for j in range(1, m_geo):
        t = delta * math.pow(ratio, j / m_geo)
        points.append(min(max(t, points[-1]), sup))
    if m_top == 0:
        points.append(sup)
    else:
        points.append(knee)
        shrink = u_min / u_max
        for j in range(1, m_top):
            t = sup - u_max * math.pow(shrink, j / (m_top - 1))
            points.append(min(max(t, points[-1]), sup))
        points.append(sup)
    for a, b in zip(points, points[1:]):
        if not a < b:
            raise RigorError(
                f"degenerate phase partition: breakpoints {a!r} and {b!r} collide "
                f"(k={k} too large for [{delta!r}, {sup!r}])"
            )
    return points


def phase_partition(omega: ParamInterval, delta: float, k: int) -> PhasePartition:
    if delta <= 0.0:
        raise ValueError(f"critical radius must be positive, got {delta!r}")
    if k < 2 or k % 2 != 0:
        raise ValueError(f"cell count must be even and >= 2, got {k}")
    sup = phase_domain(omega).sup
    if delta >= sup:
        raise ValueError(f"critical radius {delta!r} swallows the phase domain (sup {sup!r})")
    smear = max(omega.a_hi - omega.a_lo, sup * 2.0**-48)
    b = _breakpoints(delta, sup, k, smear)
    m = k // 2
    cells: list[Enclosure] = []
    for j in range(m, 0, -1):
        cells.append(Enclosure(-b[j], -b[j - 1]))
    for j in range(m):
        cells.append(Enclosure(b[j], b[j + 1]))
    return PhasePartition(delta, tuple(cells), Enclosure(-delta, delta))


def breakpoint_dump(partition: PhasePartition) -> list[str]:
    """Hex-float lines of all cell boundaries in ascending order (the
    ``partition`` CLI subcommand's output)."""
    lines = []
    prev = None
    for cell in partition.cells:
        if cell.lo != prev:
            lines.append(cell.lo.hex())
        lines.append(cell.hi.hex())
        prev = cell.hi
    return lines
