"""Initial and final lifts in both representations, and the derived
constructions: subspace, quotient, product, sum, lattice join/meet, and the
box-base product variant.

The open-set and closure-operator forms of each lift are implemented
independently; their agreement is a theorem the test suite checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from gentop.config import TABLE_CAP, ground_cap
from gentop.core import (
    ClosureOp,
    GroundSet,
    Gts,
    SubsetOperator,
    all_masks,
    closure,
    disjoint_union_ground,
    expand_mask,
    gts_from_base,
    restrict_mask,
    sub_ground,
    trace_space,
)
from gentop.errors import (
    PreconditionError,
    ResourceError,
    StructuralError,
    ValidationError,
)
from gentop.maps import GtsMap

Operator = Union[SubsetOperator, Callable[[int], int]]


def _check_point_function(func, size, cod_size, what):
    if len(func) != size:
        raise StructuralError(f"{what} has {len(func)} entries for {size} points")
    for v in func:
        if not 0 <= v < max(cod_size, 1):
            raise StructuralError(f"{what} image index {v} out of range")


@dataclass(frozen=True)
class SourceLeg:
    func: tuple  # carrier point index -> codomain point index
    cod: Gts

    def __post_init__(self):
        object.__setattr__(self, "func", tuple(self.func))

    def preimage(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.func):
            if mask >> v & 1:
                out |= 1 << i
        return out

    def image(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.func):
            if mask >> i & 1:
                out |= 1 << v
        return out


@dataclass(frozen=True)
class Source:
    """Maps out of one carrier into a family of spaces."""

    carrier: GroundSet
    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        for leg in self.legs:
            _check_point_function(leg.func, self.carrier.size, leg.cod.size, "source leg")


@dataclass(frozen=True)
class SinkLeg:
    dom: Gts
    func: tuple  # domain point index -> carrier point index

    def __post_init__(self):
        object.__setattr__(self, "func", tuple(self.func))

    def preimage(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.func):
            if mask >> v & 1:
                out |= 1 << i
        return out

    def image(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.func):
            if mask >> i & 1:
                out |= 1 << v
        return out


@dataclass(frozen=True)
class Sink:
    """Maps from a family of spaces into one carrier."""

    carrier: GroundSet
    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        for leg in self.legs:
            _check_point_function(leg.func, leg.dom.size, self.carrier.size, "sink leg")


@dataclass(frozen=True)
class IterationTrace:
    """Snapshots of one subset iterated to its fixpoint."""

    stages: tuple  # ((step, mask), ...)
    stabilized_at: int

    def __post_init__(self):
        masks = [m for _, m in self.stages]
        for prev, cur in zip(masks, masks[1:]):
            if prev & ~cur or prev == cur:
                raise ValidationError("stages must strictly increase", witness=(prev, cur))
        if self.stabilized_at != len(self.stages) - 1:
            raise ValidationError("stabilized_at must index the last stage")

    @property
    def fixpoint(self) -> int:
        return self.stages[-1][1]

    def to_json(self, ground_set: GroundSet) -> dict:
        return {
            "stages": [[k, list(ground_set.members(m))] for k, m in self.stages],
            "stabilized_at": self.stabilized_at,
        }


def weak_structure_opens(src: Source) -> Gts:
    """Opens are all unions of single-leg preimages of factor opens."""
    base = [leg.preimage(m) for leg in src.legs for m in leg.cod.opens]
    return gts_from_base(src.carrier, base)


def weak_structure_closure(src: Source) -> ClosureOp:
    """c(A) folds each leg's closure of the leg image back along the leg.

    The empty source gives the constant-full operator (indiscrete).
    """
    full = src.carrier.full

    def c(a: int) -> int:
        out = full
        for leg in src.legs:
            out &= leg.preimage(closure(leg.cod, leg.image(a)))
        return out

    return ClosureOp.from_function(src.carrier, c)


def weak_structure_maps(src: Source, space: Optional[Gts] = None) -> tuple:
    space = space if space is not None else weak_structure_opens(src)
    return tuple(GtsMap(space, leg.cod, leg.func) for leg in src.legs)


def strong_structure_opens(snk: Sink) -> Gts:
    """Opens are the sets all of whose leg preimages are open."""
    opens = []
    for m in all_masks(snk.carrier.size):
        if all(leg.preimage(m) in leg.dom.open_set() for leg in snk.legs):
            opens.append(m)
    return Gts(snk.carrier, tuple(opens))


def sink_generator(snk: Sink) -> SubsetOperator:
    """One closure sweep along the sink legs: the hull of this is the lift."""

    def gamma(a: int) -> int:
        out = a
        for leg in snk.legs:
            out |= leg.image(closure(leg.dom, leg.preimage(a)))
        return out

    if snk.carrier.size <= TABLE_CAP:
        table = [gamma(a) for a in all_masks(snk.carrier.size)]
        return SubsetOperator(snk.carrier, table=table)
    return SubsetOperator(snk.carrier, func=gamma)


def iterate_to_fixpoint(gamma: Operator, a: int, ground_set: GroundSet) -> IterationTrace:
    """Iterate an increasing operator on one subset until it stops moving."""
    ground_set.check_mask(a)
    stages = [(0, a)]
    cur = a
    k = 0
    while True:
        nxt = gamma(cur)
        ground_set.check_mask(nxt)
        if cur & ~nxt:
            raise ValidationError(
                f"operator not increasing at {cur:#x}", witness=(cur,)
            )
        if nxt == cur:
            return IterationTrace(tuple(stages), k)
        k += 1
        stages.append((k, nxt))
        cur = nxt


def idempotent_hull(
    op: SubsetOperator, trace_of: Optional[int] = None
) -> tuple:
    """Fixpoint closure of an increasing monotone operator, per subset.

    Returns the hull as a ClosureOp plus the iteration trace of `trace_of`
    (the empty set when not given).  Table-backed operators are validated;
    function-backed ones are checked for increasing-ness along the way.
    """
    op.validate_increasing()
    op.validate_monotone()
    ground_set = op.ground

    def hull(a: int) -> int:
        return iterate_to_fixpoint(op, a, ground_set).fixpoint

    trace = iterate_to_fixpoint(op, trace_of if trace_of is not None else 0, ground_set)
    return ClosureOp.from_function(ground_set, hull), trace


def strong_structure_closure(snk: Sink) -> ClosureOp:
    """Idempotent hull of one closure sweep along the sink legs."""
    co, _ = idempotent_hull(sink_generator(snk))
    return co


def subspace(g: Gts, x0: int) -> Gts:
    """Trace of the opens on x0 (the weak structure of the inclusion)."""
    return trace_space(g, x0)


def subspace_inclusion(g: Gts, x0: int) -> GtsMap:
    sub = subspace(g, x0)
    points = [i for i in range(g.size) if x0 >> i & 1]
    return GtsMap(sub, g, tuple(points))


def subspace_closure(g: Gts, x0: int) -> ClosureOp:
    """Closure form of the trace: close in g, cut back to x0."""
    sg = sub_ground(g.ground, x0)

    def c(a: int) -> int:
        return restrict_mask(closure(g, expand_mask(a, x0)) & x0, x0)

    return ClosureOp.from_function(sg, c)


def quotient(g: Gts, func: Sequence[int], cod: GroundSet) -> Gts:
    """Opens downstairs are the sets whose preimages are open upstairs."""
    _check_point_function(tuple(func), g.size, cod.size, "quotient map")
    hit = set(func)
    missing = [cod.labels[j] for j in range(cod.size) if j not in hit]
    if missing:
        raise PreconditionError(f"quotient map not surjective: misses {missing!r}")
    leg = SinkLeg(g, tuple(func))
    opens = [m for m in all_masks(cod.size) if leg.preimage(m) in g.open_set()]
    return Gts(cod, tuple(opens))


def quotient_by_labels(g: Gts, assignment: dict) -> tuple:
    """Quotient with the codomain built from the image, first occurrence order.

    Returns (space, map).
    """
    classes = []
    table = []
    for lab in g.ground.labels:
        target = assignment[lab]
        if target not in classes:
            classes.append(target)
        table.append(classes.index(target))
    cod = GroundSet(tuple(classes))
    space = quotient(g, tuple(table), cod)
    return space, GtsMap(g, space, tuple(table))


def quotient_closure(g: Gts, func: Sequence[int], cod: GroundSet) -> ClosureOp:
    """Closure form: hull of one sweep down-up along the quotient map."""
    leg = SinkLeg(g, tuple(func))

    def gamma(a: int) -> int:
        return a | leg.image(closure(g, leg.preimage(a)))

    if cod.size <= TABLE_CAP:
        op = SubsetOperator(cod, table=[gamma(a) for a in all_masks(cod.size)])
    else:
        op = SubsetOperator(cod, func=gamma)
    co, _ = idempotent_hull(op)
    return co


@dataclass(frozen=True)
class ProductGts:
    space: Gts
    projections: tuple

    @property
    def factors(self) -> tuple:
        return tuple(p.cod for p in self.projections)


@dataclass(frozen=True)
class SumGts:
    space: Gts
    injections: tuple

    @property
    def parts(self) -> tuple:
        return tuple(i.dom for i in self.injections)


def _product_ground(factors: Sequence[Gts]) -> tuple:
    """Tuple-labelled carrier plus the per-factor digit tables."""
    sizes = [f.size for f in factors]
    count = 1
    for s in sizes:
        count *= s
    if count > ground_cap():
        raise ResourceError(
            f"product carrier would have {count} points, over cap {ground_cap()}"
        )
    labels = [tuple(combo) for combo in itertools.product(*[f.ground.labels for f in factors])]
    pg = GroundSet(tuple(labels))
    digit_tables = []
    for k in range(len(factors)):
        table = []
        for lab in labels:
            table.append(factors[k].ground.index(lab[k]))
        digit_tables.append(tuple(table))
    return pg, digit_tables


def product(factors: Sequence[Gts]) -> ProductGts:
    """Categorical product: opens generated by single-coordinate cylinders."""
    factors = list(factors)
    pg, digits = _product_ground(factors)
    base = []
    for k, f in enumerate(factors):
        leg = SourceLeg(digits[k], f)
        for m in f.opens:
            base.append(leg.preimage(m))
    space = gts_from_base(pg, base)
    projections = tuple(GtsMap(space, f, digits[k]) for k, f in enumerate(factors))
    return ProductGts(space, projections)


def product_closure_box(p: ProductGts, m: int) -> int:
    """Product closure: box of the factor closures of the coordinate images."""
    space = p.space
    space.ground.check_mask(m)
    closed_digits = []
    for proj in p.projections:
        closed_digits.append(closure(proj.cod, proj.image(m)))
    out = 0
    for i in range(space.size):
        if all(cd >> proj.table[i] & 1 for cd, proj in zip(closed_digits, p.projections)):
            out |= 1 << i
    return out


def sum_gts(parts: Sequence[Gts]) -> SumGts:
    """Disjoint union; opens are unions of one open from each part."""
    parts = list(parts)
    carrier, offsets = disjoint_union_ground([p.ground for p in parts])
    base = [m << off for p, off in zip(parts, offsets) for m in p.opens]
    space = gts_from_base(carrier, base)
    injections = tuple(
        GtsMap(p, space, tuple(off + j for j in range(p.size)))
        for p, off in zip(parts, offsets)
    )
    return SumGts(space, injections)


def sum_closure_componentwise(s: SumGts, a: int) -> int:
    """Closure in a sum is the disjoint union of the part closures."""
    out = 0
    for inj in s.injections:
        part_mask = inj.preimage(a)
        out |= inj.image(closure(inj.dom, part_mask))
    return out


def _require_same_ground(ground_set: GroundSet, gs: Sequence[Gts]):
    for g in gs:
        if g.ground != ground_set:
            raise StructuralError("lattice operands must share one carrier")


def lattice_join(ground_set: GroundSet, gs: Sequence[Gts]) -> Gts:
    """Coarsest family containing every operand (union-close the union)."""
    _require_same_ground(ground_set, gs)
    base = [m for g in gs for m in g.opens]
    return gts_from_base(ground_set, base)


def lattice_meet(ground_set: GroundSet, gs: Sequence[Gts]) -> Gts:
    """Plain intersection of the families (discrete when there are none)."""
    _require_same_ground(ground_set, gs)
    gs = list(gs)
    if not gs:
        return Gts(ground_set, tuple(all_masks(ground_set.size)))
    common = set(gs[0].opens)
    for g in gs[1:]:
        common &= set(g.opens)
    return Gts(ground_set, tuple(sorted(common)))


def lattice_join_closure(ground_set: GroundSet, gs: Sequence[Gts]) -> ClosureOp:
    """Join closure: pointwise intersection of the operand closures."""
    _require_same_ground(ground_set, gs)
    full = ground_set.full

    def c(a: int) -> int:
        out = full
        for g in gs:
            out &= closure(g, a)
        return out

    return ClosureOp.from_function(ground_set, c)


def lattice_meet_closure(ground_set: GroundSet, gs: Sequence[Gts]) -> ClosureOp:
    """Meet closure: hull of the pointwise union of the operand closures.

    The explicit union with the argument only matters for zero operands; it
    is applied unconditionally.
    """
    _require_same_ground(ground_set, gs)

    def gamma(a: int) -> int:
        out = a
        for g in gs:
            out |= closure(g, a)
        return out

    if ground_set.size <= TABLE_CAP:
        op = SubsetOperator(ground_set, table=[gamma(a) for a in all_masks(ground_set.size)])
    else:
        op = SubsetOperator(ground_set, func=gamma)
    co, _ = idempotent_hull(op)
    return co


def csaszar_product(factors: Sequence[Gts]) -> Gts:
    """Box-base product: generated by boxes of factor opens.

    With finitely many factors the cofinal default-coordinate condition is
    vacuous, so the base is all boxes.  The empty box product is the
    one-point space with both subsets open.
    """
    factors = list(factors)
    pg, digits = _product_ground(factors)
    base = []
    for choice in itertools.product(*[f.opens for f in factors]):
        box = 0
        for i in range(pg.size):
            if all(choice[k] >> digits[k][i] & 1 for k in range(len(factors))):
                box |= 1 << i
        base.append(box)
    return gts_from_base(pg, base)


def csaszar_coincidence(factors: Sequence[Gts]) -> bool:
    """Whether the box-base product equals the categorical product."""
    return csaszar_product(factors) == product(factors).space


def csaszar_coincidence_expected(factors: Sequence[Gts]) -> bool:
    """The stated characterization of when the two products agree."""
    factors = list(factors)
    if len(factors) == 0:
        return False
    if len(factors) == 1:
        return True
    if any(f.size == 0 for f in factors):
        return True
    if not all(f.is_strong() for f in factors):
        return False
    nontrivial = sum(1 for f in factors if set(f.opens) != {0, f.full})
    return nontrivial <= 1


def cube_edge_sink(dim: int) -> Sink:
    """Sink of all indiscrete two-point edge spaces into the dim-cube.

    One closure sweep of this sink grows a subset by Hamming distance one,
    so the hull of a singleton stabilizes after exactly `dim` steps.
    """
    labels = ["".join(str(v >> k & 1) for k in range(dim)) for v in range(1 << dim)]
    carrier = GroundSet(tuple(labels))
    legs = []
    for v in range(1 << dim):
        for k in range(dim):
            w = v ^ (1 << k)
            if v < w:
                # Topologically indiscrete: empty set closed, everything
                # nonempty closes to the whole edge.
                edge = Gts(GroundSet((labels[v], labels[w])), (0, 3))
                legs.append(SinkLeg(edge, (v, w)))
    return Sink(carrier, tuple(legs))
