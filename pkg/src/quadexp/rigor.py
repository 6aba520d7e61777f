"""Outward-rounded interval arithmetic on binary64 numbers.

Every operation returns an enclosure of the exact real result set, so any
quantity derived downstream (image intervals, derivative bounds, cycle
means) is a mathematically valid bound.  Directed rounding is realized
without touching the FPU rounding mode: each primitive computes the
round-to-nearest result together with an error-free indicator of the
rounding direction (TwoSum for +/-, Veltkamp-Dekker splitting for *), and
steps to the adjacent representable number only when the nearest result
landed on the wrong side.  Exact results are therefore returned unchanged,
and all functions are pure and safe under unrestricted concurrency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "EMPTY",
    "Enclosure",
    "representable",
    "iv_add",
    "iv_sub",
    "iv_neg",
    "iv_mul",
    "iv_square",
    "iv_sqrt",
    "iv_log_lo",
    "iv_intersect",
    "iv_hull",
    "add_down",
    "add_up",
    "sub_down",
    "sub_up",
    "mul_down",
    "mul_up",
    "sqrt_down",
    "sqrt_up",
    "log_down",
]

_INF = math.inf

# Veltkamp splitting constant for binary64 (2**27 + 1).
_SPLIT = 134217729.0


class RigorError(ValueError):
    """Raised when an operation's precondition is violated or a bound
    leaves the finite range."""


class _Empty:
    """Distinguished empty-enclosure value (result of a void intersection)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _Empty()


def _two_sum_err(a: float, b: float, s: float) -> float:
    # Knuth TwoSum: exact error of the rounded sum s = fl(a + b).
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _two_prod_err(a: float, b: float, p: float) -> float:
    # Dekker's product error via Veltkamp splitting; exact when p is normal
    # and the splitting does not overflow (callers guard the subnormal zone).
    ah = a * _SPLIT
    ah = ah - (ah - a)
    al = a - ah
    bh = b * _SPLIT
    bh = bh - (bh - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


# below this magnitude a product may have underflowed, so the error-free
# transform is unreliable; fall back to exact rational comparison
_SUBNORMAL_GUARD = 2.0**-1000


def add_down(a: float, b: float) -> float:
    """Largest representable number <= a + b (exact sum)."""
    s = a + b
    if _two_sum_err(a, b, s) < 0.0:
        s = math.nextafter(s, -_INF)
    return s


def add_up(a: float, b: float) -> float:
    """Smallest representable number >= a + b (exact sum)."""
    s = a + b
    if _two_sum_err(a, b, s) > 0.0:
        s = math.nextafter(s, _INF)
    return s


def sub_down(a: float, b: float) -> float:
    return add_down(a, -b)


def sub_up(a: float, b: float) -> float:
    return add_up(a, -b)


def mul_down(a: float, b: float) -> float:
    p = a * b
    if abs(p) < _SUBNORMAL_GUARD:
        if Fraction(p) > Fraction(a) * Fraction(b):
            p = math.nextafter(p, -_INF)
    elif _two_prod_err(a, b, p) < 0.0:
        p = math.nextafter(p, -_INF)
    return p


def mul_up(a: float, b: float) -> float:
    p = a * b
    if abs(p) < _SUBNORMAL_GUARD:
        if Fraction(p) < Fraction(a) * Fraction(b):
            p = math.nextafter(p, _INF)
    elif _two_prod_err(a, b, p) > 0.0:
        p = math.nextafter(p, _INF)
    return p


def sqrt_down(x: float) -> float:
    """Largest representable number <= sqrt(x), for x >= 0."""
    if x < 0.0:
        raise RigorError(f"sqrt of negative number {x!r}")
    r = math.sqrt(x)
    # math.sqrt is correctly rounded, so at most one step is needed.
    rr = r * r
    if rr < _SUBNORMAL_GUARD:
        if Fraction(r) * Fraction(r) > Fraction(x):
            r = math.nextafter(r, -_INF)
        return r
    err = _two_prod_err(r, r, rr)
    if rr > x or (rr == x and err > 0.0):
        r = math.nextafter(r, -_INF)
    return r


def sqrt_up(x: float) -> float:
    """Smallest representable number >= sqrt(x), for x >= 0."""
    if x < 0.0:
        raise RigorError(f"sqrt of negative number {x!r}")
    r = math.sqrt(x)
    rr = r * r
    if rr < _SUBNORMAL_GUARD:
        if Fraction(r) * Fraction(r) < Fraction(x):
            r = math.nextafter(r, _INF)
        return r
    err = _two_prod_err(r, r, rr)
    if rr < x or (rr == x and err < 0.0):
        r = math.nextafter(r, _INF)
    return r


def log_down(x: float) -> float:
    """A representable lower bound for log(x), within 2 ulp of exact.

    Platform log is faithful (error < 1 ulp), so one downward step yields a
    valid lower bound; containment is re-verified against an extended
    precision oracle by the test suite.
    """
    if x <= 0.0:
        raise RigorError(f"log requires a positive argument, got {x!r}")
    return math.nextafter(math.log(x), -_INF)


def representable(value: float | int | str) -> float:
    """Round-to-nearest binary64 image of a decimal literal or hex-float.

    Strings are parsed as decimal unless they carry an explicit ``0x``
    prefix, in which case they are read as hex-floats (bit-exact).
    """
    if isinstance(value, str):
        text = value.strip()
        if text.lower().startswith(("0x", "-0x", "+0x")):
            result = float.fromhex(text)
        else:
            result = float(text)
    else:
        result = float(value)
    if not math.isfinite(result):
        raise RigorError(f"non-finite value {value!r}")
    return result


@dataclass(frozen=True, slots=True)
class Enclosure:
    """Closed interval [lo, hi] of binary64 numbers containing an exact
    real quantity."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise RigorError(f"non-finite enclosure bound [{self.lo!r}, {self.hi!r}]")
        if self.lo > self.hi:
            raise RigorError(f"inverted enclosure [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def point(cls, x: float | int | str) -> "Enclosure":
        v = representable(x)
        return cls(v, v)

    def width(self) -> float:
        return sub_up(self.hi, self.lo)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def iv_add(x: Enclosure, y: Enclosure) -> Enclosure:
    return Enclosure(add_down(x.lo, y.lo), add_up(x.hi, y.hi))


def iv_sub(x: Enclosure, y: Enclosure) -> Enclosure:
    return Enclosure(sub_down(x.lo, y.hi), sub_up(x.hi, y.lo))


def iv_neg(x: Enclosure) -> Enclosure:
    # Negation of representable numbers is exact.
    return Enclosure(-x.hi, -x.lo)


def iv_mul(x: Enclosure, y: Enclosure) -> Enclosure:
    lo = min(
        mul_down(x.lo, y.lo),
        mul_down(x.lo, y.hi),
        mul_down(x.hi, y.lo),
        mul_down(x.hi, y.hi),
    )
    hi = max(
        mul_up(x.lo, y.lo),
        mul_up(x.lo, y.hi),
        mul_up(x.hi, y.lo),
        mul_up(x.hi, y.hi),
    )
    return Enclosure(lo, hi)


def iv_square(x: Enclosure) -> Enclosure:
    if x.lo <= 0.0 <= x.hi:
        m = max(-x.lo, x.hi)
        return Enclosure(0.0, mul_up(m, m))
    if x.lo > 0.0:
        return Enclosure(mul_down(x.lo, x.lo), mul_up(x.hi, x.hi))
    return Enclosure(mul_down(x.hi, x.hi), mul_up(x.lo, x.lo))


def iv_sqrt(x: Enclosure) -> Enclosure:
    if x.lo < 0.0:
        raise RigorError(f"iv_sqrt of partially negative enclosure {x!r}")
    return Enclosure(sqrt_down(x.lo), sqrt_up(x.hi))


def iv_log_lo(x: float) -> float:
    """Down-rounded natural log of a representable number (edge weights)."""
    return log_down(x)


def iv_intersect(x: Enclosure, y: Enclosure) -> Enclosure | _Empty:
    lo = max(x.lo, y.lo)
    hi = min(x.hi, y.hi)
    if lo > hi:
        return EMPTY
    return Enclosure(lo, hi)


def iv_hull(x: Enclosure | _Empty, y: Enclosure | _Empty) -> Enclosure | _Empty:
    if isinstance(x, _Empty):
        return y
    if isinstance(y, _Empty):
        return x
    return Enclosure(min(x.lo, y.lo), max(x.hi, y.hi))
