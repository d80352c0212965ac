"""Point maps between spaces and their continuity/openness/density predicates.

Every predicate comes in two flavours: a `*_verdict` function returning a
Verdict with a witness (the violating open or subset, by labels), and a thin
boolean wrapper.  Continuity is decided both from open sets and from closure
operators; the two must agree everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from gentop.core import Gts, all_masks, closure, trace_space
from gentop.errors import StructuralError
from gentop.report import Verdict


@dataclass(frozen=True)
class GtsMap:
    """A total point function dom -> cod, by point index."""

    dom: Gts
    cod: Gts
    table: tuple

    def __post_init__(self):
        if not isinstance(self.table, tuple):
            object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom.size:
            raise StructuralError(
                f"map table has {len(self.table)} entries for a "
                f"{self.dom.size}-point domain"
            )
        for v in self.table:
            if not 0 <= v < max(self.cod.size, 1):
                raise StructuralError(f"image index {v} out of range")

    @classmethod
    def from_labels(cls, dom: Gts, cod: Gts, assignment: dict) -> "GtsMap":
        table = []
        for lab in dom.ground.labels:
            if lab not in assignment:
                raise StructuralError(f"map not total: no image for {lab!r}")
            table.append(cod.ground.index(assignment[lab]))
        return cls(dom, cod, tuple(table))

    def image(self, mask: int) -> int:
        self.dom.ground.check_mask(mask)
        out = 0
        for i in range(self.dom.size):
            if mask >> i & 1:
                out |= 1 << self.table[i]
        return out

    def preimage(self, mask: int) -> int:
        self.cod.ground.check_mask(mask)
        out = 0
        for i in range(self.dom.size):
            if mask >> self.table[i] & 1:
                out |= 1 << i
        return out

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and len(set(self.table)) == self.dom.size

    def inverse(self) -> "GtsMap":
        if not self.is_bijective():
            raise StructuralError("inverse of a non-bijective map")
        inv = [0] * self.cod.size
        for i, v in enumerate(self.table):
            inv[v] = i
        return GtsMap(self.cod, self.dom, tuple(inv))

    def describe(self) -> str:
        pairs = ", ".join(
            f"{self.dom.ground.labels[i]}->{self.cod.ground.labels[v]}"
            for i, v in enumerate(self.table)
        )
        return f"GtsMap({pairs})"


def identity_map(g: Gts) -> GtsMap:
    return GtsMap(g, g, tuple(range(g.size)))


def compose(outer: GtsMap, inner: GtsMap) -> GtsMap:
    """outer after inner."""
    if inner.cod.ground != outer.dom.ground:
        raise StructuralError("composition carrier mismatch")
    return GtsMap(inner.dom, outer.cod, tuple(outer.table[v] for v in inner.table))


def continuity_verdict(f: GtsMap) -> Verdict:
    """Preimage of every codomain open must be open."""
    dom_opens = f.dom.open_set()
    for m in f.cod.opens:
        if f.preimage(m) not in dom_opens:
            return Verdict(
                "continuous",
                False,
                {
                    "open": list(f.cod.ground.members(m)),
                    "preimage": list(f.dom.ground.members(f.preimage(m))),
                },
            )
    return Verdict("continuous", True)


def is_continuous(f: GtsMap) -> bool:
    return continuity_verdict(f).holds


def closure_continuity_verdict(f: GtsMap) -> Verdict:
    """Image of the closure of any subset stays inside the closure of the image."""
    for a in all_masks(f.dom.size):
        lhs = f.image(closure(f.dom, a))
        rhs = closure(f.cod, f.image(a))
        if lhs & ~rhs:
            return Verdict(
                "continuous_closure",
                False,
                {"subset": list(f.dom.ground.members(a))},
            )
    return Verdict("continuous_closure", True)


def is_continuous_closure(f: GtsMap) -> bool:
    return closure_continuity_verdict(f).holds


def open_map_verdict(f: GtsMap) -> Verdict:
    cod_opens = f.cod.open_set()
    for m in f.dom.opens:
        if f.image(m) not in cod_opens:
            return Verdict(
                "open_map", False, {"open": list(f.dom.ground.members(m))}
            )
    return Verdict("open_map", True)


def is_open_map(f: GtsMap) -> bool:
    return open_map_verdict(f).holds


def homeomorphism_verdict(f: GtsMap) -> Verdict:
    if not f.is_bijective():
        return Verdict("homeomorphism", False, {"failed": "bijective"})
    fwd = continuity_verdict(f)
    if not fwd:
        return Verdict("homeomorphism", False, {"failed": "continuous", **fwd.witness})
    back = continuity_verdict(f.inverse())
    if not back:
        return Verdict(
            "homeomorphism", False, {"failed": "inverse_continuous", **back.witness}
        )
    return Verdict("homeomorphism", True)


def is_homeomorphism(f: GtsMap) -> bool:
    return homeomorphism_verdict(f).holds


def dense_verdict(f: GtsMap) -> Verdict:
    hull = closure(f.cod, f.image(f.dom.full))
    if hull != f.cod.full:
        return Verdict(
            "dense", False, {"closure": list(f.cod.ground.members(hull))}
        )
    return Verdict("dense", True)


def is_dense(f: GtsMap) -> bool:
    return dense_verdict(f).holds


def image_subspace(f: GtsMap) -> Gts:
    """Trace of the codomain on the set-theoretic image."""
    return trace_space(f.cod, f.image(f.dom.full))


def corestrict(f: GtsMap) -> GtsMap:
    """The same point function, viewed into its image subspace."""
    img = f.image(f.dom.full)
    sub = image_subspace(f)
    order = [i for i in range(f.cod.size) if img >> i & 1]
    position = {v: j for j, v in enumerate(order)}
    return GtsMap(f.dom, sub, tuple(position[v] for v in f.table))


def all_maps(dom: Gts, cod: Gts):
    """Every total point map dom -> cod (cod must be nonempty unless dom is)."""
    if dom.size == 0:
        yield GtsMap(dom, cod, ())
        return
    if cod.size == 0:
        return
    table = [0] * dom.size
    while True:
        yield GtsMap(dom, cod, tuple(table))
        i = 0
        while i < dom.size:
            table[i] += 1
            if table[i] < cod.size:
                break
            table[i] = 0
            i += 1
        if i == dom.size:
            return
