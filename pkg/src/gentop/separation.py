"""Separation-axiom deciders, the indistinguishability quotient, and
two-valued separating witnesses.

The complete-regularity decider uses a derived finite characterization: a
point and a closed set can be separated by a continuous unit-interval-valued
map exactly when the carrier is open and some open set with open complement
contains the point and misses the closed set.  `cr_oracle` is the independent
brute-force check over grid-valued functions; the two are kept in agreement
by the test suite, with the oracle as ground truth.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Optional

from gentop import kernels, rays
from gentop.core import GroundSet, Gts
from gentop.errors import PreconditionError, StructuralError, ValidationError
from gentop.maps import GtsMap
from gentop.report import Verdict

AXIOMS = (
    "T0",
    "T1",
    "T2",
    "Regular",
    "T3",
    "Normal",
    "T4",
    "CompletelyRegular",
    "T3_5",
)


def _pair_witness(g: Gts, i: int, j: int) -> dict:
    return {"points": [g.ground.labels[i], g.ground.labels[j]]}


@lru_cache(maxsize=8192)
def _largest_disjoint_open(g: Gts) -> dict:
    """For each open U, the union of all opens disjoint from U (itself open)."""
    out = {}
    for u in g.opens:
        acc = 0
        for v in g.opens:
            if not u & v:
                acc |= v
        out[u] = acc
    return out


@lru_cache(maxsize=8192)
def _biopens(g: Gts) -> tuple:
    """Opens whose complement is also open."""
    full = g.full
    opens = g.open_set()
    return tuple(d for d in g.opens if full ^ d in opens)


def _check_t0(g: Gts) -> Verdict:
    for i, j in combinations(range(g.size), 2):
        if not any((m >> i & 1) != (m >> j & 1) for m in g.opens):
            return Verdict("T0", False, _pair_witness(g, i, j))
    return Verdict("T0", True)


def _check_t1(g: Gts) -> Verdict:
    for i in range(g.size):
        for j in range(g.size):
            if i == j:
                continue
            if not any(m >> i & 1 and not m >> j & 1 for m in g.opens):
                return Verdict("T1", False, _pair_witness(g, i, j))
    return Verdict("T1", True)


def _check_t2(g: Gts) -> Verdict:
    disjoint = _largest_disjoint_open(g)
    for i, j in combinations(range(g.size), 2):
        if not any(m >> i & 1 and disjoint[m] >> j & 1 for m in g.opens):
            return Verdict("T2", False, _pair_witness(g, i, j))
    return Verdict("T2", True)


def _check_regular(g: Gts) -> Verdict:
    disjoint = _largest_disjoint_open(g)
    for f in g.closed_sets():
        outside = g.full ^ f
        for i in range(g.size):
            if not outside >> i & 1:
                continue
            if not any(m >> i & 1 and f & ~disjoint[m] == 0 for m in g.opens):
                return Verdict(
                    "Regular",
                    False,
                    {
                        "point": g.ground.labels[i],
                        "closed": list(g.ground.members(f)),
                    },
                )
    return Verdict("Regular", True)


def _check_normal(g: Gts) -> Verdict:
    disjoint = _largest_disjoint_open(g)
    closed = g.closed_sets()
    for a, b in combinations(closed, 2):
        if a & b:
            continue
        if not any(a & ~m == 0 and b & ~disjoint[m] == 0 for m in g.opens):
            return Verdict(
                "Normal",
                False,
                {
                    "closed": [
                        list(g.ground.members(a)),
                        list(g.ground.members(b)),
                    ]
                },
            )
    return Verdict("Normal", True)


def cr_separated(g: Gts, x: int, f_set: int) -> Optional[int]:
    """Fast separator: an open with open complement around x missing f_set.

    Returns the separating open, or None.  Separation also needs the carrier
    itself open (the witness map pulls the whole interval back to it).
    """
    if not g.is_strong():
        return None
    for d in _biopens(g):
        if d >> x & 1 and not d & f_set:
            return d
    return None


def _check_completely_regular(g: Gts) -> Verdict:
    for f in g.closed_sets():
        outside = g.full ^ f
        for i in range(g.size):
            if outside >> i & 1 and cr_separated(g, i, f) is None:
                return Verdict(
                    "CompletelyRegular",
                    False,
                    {
                        "point": g.ground.labels[i],
                        "closed": list(g.ground.members(f)),
                    },
                )
    return Verdict("CompletelyRegular", True)


def _conjunction(tag: str, first: Verdict, second: Verdict) -> Verdict:
    if not first:
        return Verdict(tag, False, {"failed": first.kind, **(first.witness or {})})
    if not second:
        return Verdict(tag, False, {"failed": second.kind, **(second.witness or {})})
    return Verdict(tag, True)


def check_axiom(g: Gts, axiom: str) -> Verdict:
    if axiom == "T0":
        return _check_t0(g)
    if axiom == "T1":
        return _check_t1(g)
    if axiom == "T2":
        return _check_t2(g)
    if axiom == "Regular":
        return _check_regular(g)
    if axiom == "T3":
        return _conjunction("T3", _check_regular(g), _check_t1(g))
    if axiom == "Normal":
        return _check_normal(g)
    if axiom == "T4":
        return _conjunction("T4", _check_normal(g), _check_t1(g))
    if axiom == "CompletelyRegular":
        return _check_completely_regular(g)
    if axiom == "T3_5":
        return _conjunction("T3_5", _check_completely_regular(g), _check_t1(g))
    raise StructuralError(f"unknown axiom {axiom!r}; choose from {AXIOMS}")


def cr_oracle(g: Gts, x: int, f_set: int) -> bool:
    """Brute-force separation check over dyadic-grid-valued functions.

    Enumerates every function into the 2^m + 1 point grid (m = carrier size)
    with value 0 at x and value 1 on f_set, and tests continuity against the
    ray traces on the grid.
    """
    g.ground.check_mask(f_set)
    if not 0 <= x < g.size:
        raise PreconditionError("oracle point out of range")
    if f_set >> x & 1:
        raise PreconditionError("oracle point lies in the closed set")
    if g.full ^ f_set not in g.open_set():
        raise PreconditionError("oracle set is not closed")
    grid_size, bases = rays.dyadic_trace_bases(g.size)
    lookup = bytearray(1 << g.size)
    for m in g.opens:
        lookup[m] = 1
    fixed = [(x, 0)]
    for i in range(g.size):
        if f_set >> i & 1:
            fixed.append((i, grid_size - 1))
    free = [i for i in range(g.size) if i != x and not f_set >> i & 1]
    return kernels.grid_separation_witness(
        g.size, bytes(lookup), fixed, free, grid_size, bases
    )


def t0_reflection(g: Gts) -> tuple:
    """Quotient by open-membership indistinguishability; returns (space, map)."""
    from gentop.lifts import quotient

    signatures = []
    for i in range(g.size):
        signatures.append(tuple(m >> i & 1 for m in g.opens))
    classes = []
    table = []
    for i, sig in enumerate(signatures):
        if sig not in classes:
            classes.append(sig)
        table.append(classes.index(sig))
    reps = []
    for c in range(len(classes)):
        first = table.index(c)
        reps.append(g.ground.labels[first])
    cod = GroundSet(tuple(reps))
    space = quotient(g, tuple(table), cod)
    return space, GtsMap(g, space, tuple(table))


@lru_cache(maxsize=8)
def two_point_value_space() -> Gts:
    """The ray-family trace on {0, 1}: a discrete two-point space."""
    pts = (rays.ZERO, rays.ONE)
    return Gts(
        GroundSet(tuple(str(p) for p in pts)), rays.ray_trace_opens(pts)
    )


def urysohn_witness(g: Gts, f1: int, f2: int) -> GtsMap:
    """Two-valued separating map for a disjoint closed pair in a normal space.

    Scans for an open set with open complement containing f1 and missing f2;
    existence on normal inputs is guaranteed, so not finding one raises.
    """
    g.ground.check_mask(f1)
    g.ground.check_mask(f2)
    opens = g.open_set()
    if g.full ^ f1 not in opens or g.full ^ f2 not in opens:
        raise PreconditionError("witness endpoints must be closed sets")
    if f1 & f2:
        raise PreconditionError("witness endpoints must be disjoint")
    if not check_axiom(g, "Normal"):
        raise PreconditionError("witness requires a normal space")
    for d in _biopens(g):
        if f1 & ~d == 0 and not d & f2:
            cod = two_point_value_space()
            zero = cod.ground.index("0")
            one = cod.ground.index("1")
            return GtsMap(
                g, cod, tuple(zero if d >> i & 1 else one for i in range(g.size))
            )
    raise ValidationError(
        "no two-valued separator on a normal space",
        witness=(f1, f2),
    )
