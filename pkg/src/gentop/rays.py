"""Traces of the lower/upper-ray family on [0,1] over finite rational grids.

The unit interval carries the family generated by the rays [0,p) and (q,1]
together with the empty set and [0,1] itself.  Its trace on a finite point
set is computed exactly, with Fraction cut positions; masks index the points
in ascending order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from gentop.errors import StructuralError

ZERO = Fraction(0)
ONE = Fraction(1)


def check_points(points: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    pts = tuple(Fraction(p) for p in points)
    if any(p < ZERO or p > ONE for p in pts):
        raise StructuralError("trace points must lie in [0,1]")
    if sorted(set(pts)) != list(pts):
        raise StructuralError("trace points must be strictly ascending")
    return pts


def _prefix(pts, p) -> int:
    return sum(1 << i for i, x in enumerate(pts) if x < p)


def _suffix(pts, q) -> int:
    return sum(1 << i for i, x in enumerate(pts) if x > q)


def _cut_candidates(pts) -> list:
    """Enough cut positions to realize every distinct ray trace."""
    cands = set(pts) | {ZERO, ONE}
    extended = sorted(cands)
    for a, b in zip(extended, extended[1:]):
        cands.add((a + b) / 2)
    return sorted(cands)


def ray_trace_bases(points: Sequence[Fraction]) -> list:
    """Distinct traces of the rays themselves (a base of the trace family)."""
    pts = check_points(points)
    cands = _cut_candidates(pts)
    bases = set()
    for c in cands:
        if ZERO < c <= ONE:
            bases.add(_prefix(pts, c))
        if ZERO <= c < ONE:
            bases.add(_suffix(pts, c))
    bases.discard(0)
    return sorted(bases)


def ray_trace_opens(points: Sequence[Fraction]) -> tuple:
    """The full trace family: empty, full, rays, and two-ray unions."""
    pts = check_points(points)
    full = (1 << len(pts)) - 1
    cands = _cut_candidates(pts)
    opens = {0, full}
    inner = [c for c in cands if ZERO < c < ONE]
    for c in cands:
        if ZERO < c <= ONE:
            opens.add(_prefix(pts, c))
        if ZERO <= c < ONE:
            opens.add(_suffix(pts, c))
    for r in inner:
        for s in inner:
            if r <= s:
                opens.add(_prefix(pts, r) | _suffix(pts, s))
    return tuple(sorted(opens))


@lru_cache(maxsize=32)
def dyadic_grid(m: int) -> tuple:
    """The 2^m + 1 equally spaced dyadic rationals in [0,1]."""
    step = Fraction(1, 1 << m)
    return tuple(k * step for k in range((1 << m) + 1))


@lru_cache(maxsize=32)
def dyadic_trace_bases(m: int) -> tuple:
    """(grid size, base masks) for the dyadic grid; cached for the oracle."""
    pts = dyadic_grid(m)
    return len(pts), tuple(ray_trace_bases(pts))
