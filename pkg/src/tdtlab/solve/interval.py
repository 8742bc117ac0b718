"""Exact rational interval arithmetic.

Endpoints are Fractions; None stands for the matching infinity.  Intervals
are closed: strictness of the original comparisons is not representable
here, which over-approximates feasible sets.  That is sound for pruning
(refuting) and harmless for satisfying witnesses, which are always
re-checked pointwise with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_POS = object()  # +infinity marker used only inside multiplication
_NEG = object()


@dataclass(frozen=True)
class Ival:
    lo: Fraction | None
    hi: Fraction | None

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(value: Fraction) -> "Ival":
        return Ival(value, value)

    @staticmethod
    def whole() -> "Ival":
        return Ival(None, None)

    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    def width(self) -> Fraction | None:
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo

    def contains(self, value: Fraction) -> bool:
        if self.lo is not None and value < self.lo:
            return False
        if self.hi is not None and value > self.hi:
            return False
        return True

    def sample(self) -> Fraction:
        if self.lo is not None and self.hi is not None:
            return (self.lo + self.hi) / 2
        if self.lo is not None:
            return self.lo + 1
        if self.hi is not None:
            return self.hi - 1
        return Fraction(0)


def intersect(a: Ival, b: Ival) -> Ival | None:
    lo = a.lo if b.lo is None else (b.lo if a.lo is None else max(a.lo, b.lo))
    hi = a.hi if b.hi is None else (b.hi if a.hi is None else min(a.hi, b.hi))
    if lo is not None and hi is not None and lo > hi:
        return None
    return Ival(lo, hi)


def add(a: Ival, b: Ival) -> Ival:
    lo = None if a.lo is None or b.lo is None else a.lo + b.lo
    hi = None if a.hi is None or b.hi is None else a.hi + b.hi
    return Ival(lo, hi)


def sub(a: Ival, b: Ival) -> Ival:
    lo = None if a.lo is None or b.hi is None else a.lo - b.hi
    hi = None if a.hi is None or b.lo is None else a.hi - b.lo
    return Ival(lo, hi)


def neg(a: Ival) -> Ival:
    return Ival(None if a.hi is None else -a.hi, None if a.lo is None else -a.lo)


def _emul(x, y):
    """Extended product of endpoints where None at lo means -inf and at hi
    means +inf; callers pass (_NEG/_POS, value) pairs instead."""
    (xs, xv), (ys, yv) = x, y
    if xs is None and ys is None:
        return (None, xv * yv)
    # at least one infinite endpoint; 0 * inf treated as 0 (valid for
    # closed-interval products taken as limits)
    def sign(pair):
        s, v = pair
        if s is _POS:
            return 1
        if s is _NEG:
            return -1
        return (v > 0) - (v < 0)

    sx, sy = sign(x), sign(y)
    if sx == 0 or sy == 0:
        return (None, Fraction(0))
    return (_POS if sx * sy > 0 else _NEG, None)


def _endpoints(a: Ival):
    lo = (_NEG, None) if a.lo is None else (None, a.lo)
    hi = (_POS, None) if a.hi is None else (None, a.hi)
    return lo, hi


def mul(a: Ival, b: Ival) -> Ival:
    candidates = []
    for p in _endpoints(a):
        for q in _endpoints(b):
            candidates.append(_emul(p, q))
    finite = [v for s, v in candidates if s is None]
    lo = None if any(s is _NEG for s, _ in candidates) or not finite else min(finite)
    hi = None if any(s is _POS for s, _ in candidates) or not finite else max(finite)
    return Ival(lo, hi)


def recip(a: Ival) -> Ival:
    """Reciprocal of an interval not containing zero; whole line otherwise."""
    if a.contains(Fraction(0)):
        return Ival.whole()
    if a.lo is not None and a.lo > 0:
        lo = Fraction(0) if a.hi is None else 1 / a.hi
        hi = 1 / a.lo
        return Ival(lo, hi)
    hi = Fraction(0) if a.lo is None else 1 / a.lo
    lo = 1 / a.hi
    return Ival(lo, hi)


def div(a: Ival, b: Ival) -> Ival:
    if b.contains(Fraction(0)):
        return Ival.whole()
    return mul(a, recip(b))
