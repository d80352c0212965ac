"""Ways of generating a space: monotone set maps, enlargements, neighborhood
systems, and linear-order ray bases, plus the sum/subspace interaction checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, Sequence

from gentop.core import (
    GroundSet,
    Gts,
    SubsetOperator,
    all_masks,
    disjoint_union_ground,
    expand_mask,
    gts_from_base,
    interior,
    restrict_mask,
    sub_ground,
    trace_space,
)
from gentop.errors import PreconditionError, StructuralError, ValidationError
from gentop.maps import GtsMap
from gentop.report import PropertyReport, Verdict


class MonotoneMap(SubsetOperator):
    """Monotone (not necessarily increasing) self-map on subsets."""

    def __init__(self, ground_set: GroundSet, table: Sequence[int]):
        super().__init__(ground_set, table=table)
        self.validate_monotone()


def gamma_identity(ground_set: GroundSet) -> MonotoneMap:
    return MonotoneMap(ground_set, list(all_masks(ground_set.size)))


def gamma_constant(ground_set: GroundSet, value: int) -> MonotoneMap:
    ground_set.check_mask(value)
    return MonotoneMap(ground_set, [value] * (1 << ground_set.size))


def gamma_step(ground_set: GroundSet, x0: int) -> MonotoneMap:
    """Collapse subsets of x0 to the empty set, everything else to the carrier."""
    ground_set.check_mask(x0)
    full = ground_set.full
    return MonotoneMap(
        ground_set, [0 if a & ~x0 == 0 else full for a in all_masks(ground_set.size)]
    )


def gt_from_gamma(gamma: MonotoneMap) -> Gts:
    """The space of all subsets that sit inside their own gamma image."""
    opens = [a for a in all_masks(gamma.ground.size) if a & ~gamma(a) == 0]
    return Gts(gamma.ground, tuple(opens))


def interior_as_gamma(g: Gts) -> MonotoneMap:
    """The interior operator; generates g back via gt_from_gamma."""
    return MonotoneMap(g.ground, [interior(g, a) for a in all_masks(g.size)])


def gamma_sum(gammas: Sequence[MonotoneMap]) -> MonotoneMap:
    """Componentwise operator on the disjoint union of the carriers."""
    carrier, offsets = disjoint_union_ground([g.ground for g in gammas])
    parts = []
    for g, off in zip(gammas, offsets):
        parts.append((g, off, g.ground.full << off))
    table = []
    for a in all_masks(carrier.size):
        out = 0
        for g, off, block in parts:
            out |= g((a & block) >> off) << off
        table.append(out)
    return MonotoneMap(carrier, table)


def gamma_subspace(gamma: MonotoneMap, x0: int) -> MonotoneMap:
    """Restrict: apply gamma to the embedded subset, cut back to x0."""
    gamma.ground.check_mask(x0)
    sg = sub_ground(gamma.ground, x0)
    table = []
    for a0 in all_masks(sg.size):
        table.append(restrict_mask(gamma(expand_mask(a0, x0)) & x0, x0))
    return MonotoneMap(sg, table)


def _timed_report(pid, mode, trials, passed, counterexample, exhausted, notes, t0):
    return PropertyReport(
        property_id=pid,
        mode=mode,
        trials=trials,
        passed=passed,
        counterexample=counterexample,
        exhausted=exhausted,
        wall_time_s=time.perf_counter() - t0,
        notes=tuple(notes),
    )


def check_sum_generator_identity(gammas: Sequence[MonotoneMap]) -> PropertyReport:
    """The space of the combined operator equals the sum of the part spaces."""
    t0 = time.perf_counter()
    from gentop.lifts import sum_gts

    combined = gt_from_gamma(gamma_sum(gammas))
    summed = sum_gts([gt_from_gamma(g) for g in gammas]).space
    if combined != summed:
        missing = sorted(set(combined.opens) ^ set(summed.opens))
        ce = {
            "combined": [list(combined.ground.members(m)) for m in combined.opens],
            "summed": [list(summed.ground.members(m)) for m in summed.opens],
            "difference": [list(combined.ground.members(m)) for m in missing],
        }
        return _timed_report("sum_generator_identity", "builtin", 1, 0, ce, None, (), t0)
    return _timed_report("sum_generator_identity", "builtin", 1, 1, None, None, (), t0)


def check_subspace_generator_inclusion(gamma: MonotoneMap, x0: int) -> PropertyReport:
    """Restricted-operator opens embed in the trace; equality is reported."""
    t0 = time.perf_counter()
    restricted = gt_from_gamma(gamma_subspace(gamma, x0))
    traced = trace_space(gt_from_gamma(gamma), x0)
    extra = set(restricted.opens) - set(traced.opens)
    if extra:
        ce = {"not_in_trace": [list(restricted.ground.members(m)) for m in sorted(extra)]}
        return _timed_report(
            "subspace_generator_inclusion", "builtin", 1, 0, ce, None, (), t0
        )
    note = "equality" if restricted == traced else "strict inclusion"
    return _timed_report(
        "subspace_generator_inclusion", "builtin", 1, 1, None, None, (note,), t0
    )


@dataclass(frozen=True)
class Enlargement:
    """Map from the opens of a space to arbitrary supersets of them."""

    base: Gts
    table: tuple  # (mask, image) pairs aligned with base.opens

    def __post_init__(self):
        entries = dict(self.table)
        if set(entries) != set(self.base.opens):
            raise StructuralError("enlargement table must be defined exactly on the opens")
        for m, km in entries.items():
            self.base.ground.check_mask(km)
            if m & ~km:
                raise ValidationError(
                    f"enlargement must contain its argument at {m:#x}", witness=(m, km)
                )
        object.__setattr__(
            self, "table", tuple(sorted((m, entries[m]) for m in entries))
        )

    @classmethod
    def from_dict(cls, base: Gts, entries: Dict[int, int]) -> "Enlargement":
        return cls(base, tuple(entries.items()))

    def __call__(self, m: int) -> int:
        for a, ka in self.table:
            if a == m:
                return ka
        raise StructuralError(f"enlargement undefined on {m:#x} (not open)")

    def as_dict(self) -> dict:
        return dict(self.table)


def enlargement_identity(base: Gts) -> Enlargement:
    return Enlargement.from_dict(base, {m: m for m in base.opens})


def kappa_gt(k: Enlargement) -> Gts:
    """Sets where every point has an open whose enlargement stays inside."""
    g = k.base
    kd = k.as_dict()
    opens = []
    for a in all_masks(g.size):
        ok = True
        for i in range(g.size):
            if not a >> i & 1:
                continue
            if not any(m >> i & 1 and kd[m] & ~a == 0 for m in g.opens):
                ok = False
                break
        if ok:
            opens.append(a)
    out = Gts(g.ground, tuple(opens))
    extra = set(out.opens) - set(g.opens)
    if extra:
        raise ValidationError(
            "enlargement space escaped the base opens", witness=sorted(extra)
        )
    return out


def enlargement_sum(ks: Sequence[Enlargement]) -> Enlargement:
    """Combined enlargement on the sum space, unioning the part images."""
    from gentop.lifts import sum_gts

    s = sum_gts([k.base for k in ks])
    offsets = [inj.table[0] if inj.dom.size else 0 for inj in s.injections]
    entries = {}
    for m in s.space.opens:
        km = 0
        for k, inj, off in zip(ks, s.injections, offsets):
            part = inj.preimage(m)
            km |= k(part) << off
        entries[m] = km
    return Enlargement.from_dict(s.space, entries)


def check_sum_enlargement_criterion(ks: Sequence[Enlargement]) -> PropertyReport:
    """Combined space embeds in the sum of part spaces; equality holds exactly
    when at most one part is nonempty or no part enlarges the empty set."""
    t0 = time.perf_counter()
    from gentop.lifts import sum_gts

    combined = kappa_gt(enlargement_sum(ks))
    summed = sum_gts([kappa_gt(k) for k in ks]).space
    extra = set(combined.opens) - set(summed.opens)
    if extra:
        ce = {"not_in_sum": [list(combined.ground.members(m)) for m in sorted(extra)]}
        return _timed_report("sum_enlargement_criterion", "builtin", 1, 0, ce, None, (), t0)
    nonempty = sum(1 for k in ks if k.base.size > 0)
    expect_equal = nonempty <= 1 or all(k(0) == 0 for k in ks)
    actually_equal = combined == summed
    if expect_equal != actually_equal:
        ce = {
            "expected_equality": expect_equal,
            "observed_equality": actually_equal,
            "combined": [list(combined.ground.members(m)) for m in combined.opens],
            "summed": [list(summed.ground.members(m)) for m in summed.opens],
        }
        return _timed_report("sum_enlargement_criterion", "builtin", 1, 0, ce, None, (), t0)
    note = "equality" if actually_equal else "strict inclusion"
    return _timed_report(
        "sum_enlargement_criterion", "builtin", 1, 1, None, None, (note,), t0
    )


def enlargement_subspace(k: Enlargement, x0: int) -> Enlargement:
    """Restricted enlargement; requires a monotone k, an intersection-closed
    family, and an open x0, each checked."""
    g = k.base
    g.ground.check_mask(x0)
    kd = k.as_dict()
    opens = list(g.opens)
    for i, a in enumerate(opens):
        for b in opens[i + 1:]:
            if a & ~b == 0 and kd[a] & ~kd[b]:
                raise PreconditionError(
                    f"enlargement not monotone on opens ({a:#x} inside {b:#x})"
                )
            if b & ~a == 0 and kd[b] & ~kd[a]:
                raise PreconditionError(
                    f"enlargement not monotone on opens ({b:#x} inside {a:#x})"
                )
    open_set = g.open_set()
    for i, a in enumerate(opens):
        for b in opens[i + 1:]:
            if a & b not in open_set:
                raise PreconditionError(
                    "opens not closed under pairwise intersection "
                    f"({a:#x}, {b:#x})"
                )
    if x0 not in open_set:
        raise PreconditionError("subspace carrier is not open")
    sub = trace_space(g, x0)
    entries = {}
    for m0 in sub.opens:
        big = expand_mask(m0, x0)  # open in g: trace of an intersection-closed family
        entries[m0] = restrict_mask(kd[big] & x0, x0)
    return Enlargement.from_dict(sub, entries)


def check_subspace_enlargement_inclusion(k: Enlargement, x0: int) -> PropertyReport:
    """Trace of the enlargement space embeds in the restricted-enlargement space."""
    t0 = time.perf_counter()
    traced = trace_space(kappa_gt(k), x0)
    restricted = kappa_gt(enlargement_subspace(k, x0))
    extra = set(traced.opens) - set(restricted.opens)
    if extra:
        ce = {"not_included": [list(traced.ground.members(m)) for m in sorted(extra)]}
        return _timed_report(
            "subspace_enlargement_inclusion", "builtin", 1, 0, ce, None, (), t0
        )
    note = "equality" if traced == restricted else "strict inclusion"
    return _timed_report(
        "subspace_enlargement_inclusion", "builtin", 1, 1, None, None, (note,), t0
    )


def stack_hull(ground_set: GroundSet, fam: Sequence[int]) -> tuple:
    """All supersets of the members."""
    fam = [ground_set.check_mask(m) for m in fam]
    out = [s for s in all_masks(ground_set.size) if any(b & ~s == 0 for b in fam)]
    return tuple(out)


@dataclass(frozen=True)
class Gns:
    """Per-point families of sets, each containing its point."""

    ground: GroundSet
    nbhd: tuple  # one family per point, aligned with ground.labels

    def __post_init__(self):
        if len(self.nbhd) != self.ground.size:
            raise StructuralError("one neighborhood family per point required")
        fams = []
        for i, fam in enumerate(self.nbhd):
            fam = tuple(sorted(set(fam)))
            for v in fam:
                self.ground.check_mask(v)
                if not v >> i & 1:
                    raise ValidationError(
                        f"neighborhood {v:#x} misses its point "
                        f"{self.ground.labels[i]!r}",
                        witness=(i, v),
                    )
            fams.append(fam)
        object.__setattr__(self, "nbhd", tuple(fams))

    def stacked(self) -> "Gns":
        return Gns(
            self.ground,
            tuple(stack_hull(self.ground, fam) for fam in self.nbhd),
        )


def gt_from_gns(psi: Gns) -> Gts:
    """Sets containing a member neighborhood of each of their points."""
    opens = []
    for m in all_masks(psi.ground.size):
        if all(
            any(v & ~m == 0 for v in psi.nbhd[i])
            for i in range(psi.ground.size)
            if m >> i & 1
        ):
            opens.append(m)
    return Gts(psi.ground, tuple(opens))


def gns_from_gt(g: Gts) -> Gns:
    """Stacks of the opens through each point."""
    fams = []
    for i in range(g.size):
        around = [m for m in g.opens if m >> i & 1]
        fams.append(stack_hull(g.ground, around) if around else ())
    return Gns(g.ground, tuple(fams))


def gns_continuous(func: Sequence[int], psi_dom: Gns, psi_cod: Gns) -> Verdict:
    """Preimages of codomain neighborhoods must be domain neighborhoods."""
    n = psi_dom.ground.size
    if len(func) != n:
        raise StructuralError("point function does not match the domain carrier")
    for i in range(n):
        fi = func[i]
        dom_fam = set(psi_dom.nbhd[i])
        for v in psi_cod.nbhd[fi]:
            pre = 0
            for j in range(n):
                if v >> func[j] & 1:
                    pre |= 1 << j
            if pre not in dom_fam:
                return Verdict(
                    "gns_continuous",
                    False,
                    {
                        "point": psi_dom.ground.labels[i],
                        "neighborhood": list(psi_cod.ground.members(v)),
                    },
                )
    return Verdict("gns_continuous", True)


@dataclass(frozen=True)
class Chain:
    """A finite linear order, listed ascending."""

    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise StructuralError("chain elements must be distinct")

    @property
    def size(self) -> int:
        return len(self.labels)


def order_gt(chain: Chain) -> Gts:
    """Space generated by the strict lower and upper rays of the order."""
    gs = GroundSet(chain.labels)
    n = gs.size
    base = []
    for a in range(n):
        base.append((1 << a) - 1)  # points below a
        base.append(((1 << n) - 1) ^ ((1 << (a + 1)) - 1))  # points above a
    return gts_from_base(gs, base)


def is_convex_mask(m: int) -> bool:
    """Bits form one contiguous block (an order interval)."""
    if m == 0:
        return True
    m >>= (m & -m).bit_length() - 1
    return m & (m + 1) == 0


def is_monotone_table(table: Sequence[int]) -> bool:
    """Non-strictly increasing or non-strictly decreasing index map."""
    inc = all(a <= b for a, b in zip(table, table[1:]))
    dec = all(a >= b for a, b in zip(table, table[1:]))
    return inc or dec


def check_order_map(f: GtsMap) -> PropertyReport:
    """Continuity between order spaces matches the monotonicity description.

    Between finite chains the order topologies are discrete, so apart from the
    one-point-into-bigger exception continuity should mean plain monotonicity.
    """
    t0 = time.perf_counter()
    from gentop.maps import is_continuous

    nx, ny = f.dom.size, f.cod.size
    if nx == 1 and ny > 1:
        expected = False
    else:
        expected = is_monotone_table(f.table)
    actual = is_continuous(f)
    if expected != actual:
        ce = {
            "map": {str(f.dom.ground.labels[i]): str(f.cod.ground.labels[v])
                    for i, v in enumerate(f.table)},
            "continuous": actual,
            "expected": expected,
        }
        return _timed_report("order_map_description", "builtin", 1, 0, ce, None, (), t0)
    return _timed_report(
        "order_map_description", "builtin", 1, 1, None, None,
        (f"continuous={actual}",), t0,
    )
