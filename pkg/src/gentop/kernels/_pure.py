"""Pure-Python set-family kernels.

Subsets of an n-point carrier are int bitmasks.  These functions are the hot
inner loops of the package; gentop.kernels._speed is a compiled twin with
identical semantics, selected at import when available.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


def union_close(members: Iterable[int]) -> tuple:
    """Smallest family containing the empty mask and closed under union."""
    fam = {0}
    queue = list(set(members))
    while queue:
        x = queue.pop()
        if x in fam:
            continue
        fam.add(x)
        for b in list(fam):
            u = x | b
            if u not in fam:
                queue.append(u)
    return tuple(sorted(fam))


def union_closure_violation(members: Sequence[int]) -> Optional[tuple]:
    """First pair (in mask order) whose union is missing, or None if closed."""
    s = set(members)
    ms = sorted(s)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if (a | b) not in s:
                return (a, b)
    return None


def closure_table(opens: Sequence[int], n: int) -> list:
    """Table of c(A) = intersection of all closed supersets, for all A.

    Walks masks from the full set down; every closed strict superset of A
    contains A plus one more point, so c(A) folds over the one-point
    extensions.
    """
    full = (1 << n) - 1
    size = 1 << n
    closed = bytearray(size)
    for m in opens:
        closed[full ^ m] = 1
    table = [0] * size
    for a in range(size - 1, -1, -1):
        c = a if closed[a] else full
        rest = full ^ a
        while rest:
            bit = rest & -rest
            c &= table[a | bit]
            rest ^= bit
        table[a] = c
    return table


def interior_table(opens: Sequence[int], n: int) -> list:
    """Table of i(A) = union of all open subsets, for all A."""
    size = 1 << n
    is_open = bytearray(size)
    for m in opens:
        is_open[m] = 1
    table = [0] * size
    for a in range(size):
        v = a if is_open[a] else 0
        rest = a
        while rest:
            bit = rest & -rest
            v |= table[a ^ bit]
            rest ^= bit
        table[a] = v
    return table


def closure_of(closed_sets: Sequence[int], a: int, full: int) -> int:
    """On-demand closure: intersection of the stored closed supersets of a."""
    c = full
    for f in closed_sets:
        if f & a == a:
            c &= f
    return c


def enumerate_union_closed(n: int) -> list:
    """All union-closed families containing the empty mask, canonical order.

    Brute force over subsets of the nonempty masks; intended for n <= 3.
    """
    nmasks = 1 << n
    nonempty = list(range(1, nmasks))
    out = []
    for bits in range(1 << len(nonempty)):
        fam = [0] + [m for i, m in enumerate(nonempty) if bits >> i & 1]
        s = set(fam)
        if all((a | b) in s for i, a in enumerate(fam) for b in fam[i + 1:]):
            out.append(tuple(sorted(fam)))
    out.sort()
    return out


def grid_separation_witness(
    n: int,
    opens_lookup: bytes,
    fixed_vals: Sequence[tuple],
    free_points: Sequence[int],
    grid_size: int,
    trace_bases: Sequence[int],
) -> bool:
    """Search for a continuous grid-valued function with the fixed values.

    Candidate functions assign each of the n points a grid-value index; the
    entries of `fixed_vals` are pinned and `free_points` sweep all values.
    A candidate passes when the preimage of every member of `trace_bases`
    (masks over grid-value indices) is in the carrier family.
    """
    vals = [0] * n
    for p, v in fixed_vals:
        vals[p] = v
    nfree = len(free_points)
    counters = [0] * nfree
    while True:
        ok = True
        for t in trace_bases:
            pre = 0
            for p in range(n):
                if (t >> vals[p]) & 1:
                    pre |= 1 << p
            if not opens_lookup[pre]:
                ok = False
                break
        if ok:
            return True
        i = 0
        while i < nfree:
            counters[i] += 1
            if counters[i] < grid_size:
                vals[free_points[i]] = counters[i]
                break
            counters[i] = 0
            vals[free_points[i]] = 0
            i += 1
        if i == nfree:
            return False
