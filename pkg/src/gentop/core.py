"""Carriers, bitmask subsets, canonical set families, spaces, closure operators.

A subset of a carrier is an int bitmask (bit i = point i of the carrier's
label list).  A space is a carrier plus a canonically sorted, union-closed
family of open masks; a closure operator is the equivalent increasing,
monotone, idempotent self-map on masks.  The two representations convert
both ways and the conversions are mutually inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence, Union

from gentop import kernels
from gentop.config import TABLE_CAP, ground_cap
from gentop.errors import ResourceError, StructuralError, ValidationError

# Product carriers use tuple labels; everything else uses strings.
Label = Union[str, tuple]


@dataclass(frozen=True)
class GroundSet:
    """Ordered list of distinct point labels."""

    labels: tuple

    def __post_init__(self):
        if not isinstance(self.labels, tuple):
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            seen = set()
            for lab in self.labels:
                if lab in seen:
                    raise StructuralError(f"duplicate label {lab!r}")
                seen.add(lab)
        cap = ground_cap()
        if len(self.labels) > cap:
            raise ResourceError(
                f"carrier size {len(self.labels)} exceeds cap {cap} "
                "(raise GENTOP_GROUND_CAP to override)"
            )

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: Label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructuralError(f"label {label!r} not in carrier {self.labels!r}")

    def mask(self, labels: Iterable[Label]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def members(self, mask: int) -> tuple:
        self.check_mask(mask)
        return tuple(self.labels[i] for i in range(self.size) if mask >> i & 1)

    def check_mask(self, mask: int) -> int:
        if not 0 <= mask <= self.full:
            raise StructuralError(
                f"mask {mask:#x} out of range for a {self.size}-point carrier"
            )
        return mask

    def __iter__(self):
        return iter(range(self.size))


def ground(labels: Iterable[Label]) -> GroundSet:
    return GroundSet(tuple(labels))


def canon_family(ground_set: GroundSet, masks: Iterable[int]) -> tuple:
    """Duplicate-free family in ascending mask order (structural equality)."""
    out = sorted(set(masks))
    for m in out:
        ground_set.check_mask(m)
    return tuple(out)


def union_close(ground_set: GroundSet, base: Iterable[int]) -> tuple:
    """Smallest family containing the empty set and all unions of the base."""
    fam = canon_family(ground_set, base)
    return kernels.union_close(fam)


@dataclass(frozen=True)
class Gts:
    """A finite carrier with a union-closed family of open masks."""

    ground: GroundSet
    opens: tuple

    def __post_init__(self):
        fam = canon_family(self.ground, self.opens)
        object.__setattr__(self, "opens", fam)
        if not fam or fam[0] != 0:
            raise ValidationError("opens must contain the empty set", witness=0)
        bad = kernels.union_closure_violation(fam)
        if bad is not None:
            a, b = bad
            raise ValidationError(
                "opens not union-closed: missing "
                f"{set(self.ground.members(a | b)) or '{}'}",
                witness=(a, b),
            )

    @property
    def full(self) -> int:
        return self.ground.full

    @property
    def size(self) -> int:
        return self.ground.size

    def is_strong(self) -> bool:
        """Whether the whole carrier is open."""
        return self.full in self.open_set()

    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.size

    def open_set(self) -> frozenset:
        return _open_lookup(self)

    def closed_sets(self) -> tuple:
        return _closed_family(self)

    def closure(self, a: int) -> int:
        return closure(self, a)

    def interior(self, a: int) -> int:
        return interior(self, a)

    def describe(self) -> str:
        opens = ", ".join(
            "{" + ",".join(map(str, self.ground.members(m))) + "}" for m in self.opens
        )
        return f"Gts({list(self.ground.labels)}; opens=[{opens}])"


@lru_cache(maxsize=65536)
def _open_lookup(g: Gts) -> frozenset:
    return frozenset(g.opens)


@lru_cache(maxsize=65536)
def _closed_family(g: Gts) -> tuple:
    full = g.full
    return tuple(sorted(full ^ m for m in g.opens))


@lru_cache(maxsize=8192)
def _closure_table(g: Gts) -> tuple:
    return tuple(kernels.closure_table(g.opens, g.size))


@lru_cache(maxsize=8192)
def _interior_table(g: Gts) -> tuple:
    return tuple(kernels.interior_table(g.opens, g.size))


def gts_from_base(ground_set: GroundSet, base: Iterable[int]) -> Gts:
    """The space whose opens are all unions of base members."""
    return Gts(ground_set, union_close(ground_set, base))


def discrete(ground_set: GroundSet) -> Gts:
    return Gts(ground_set, tuple(range(1 << ground_set.size)))


def indiscrete(ground_set: GroundSet) -> Gts:
    """Opens are only the empty set (not strong unless the carrier is empty)."""
    return Gts(ground_set, (0,))


def closure(g: Gts, a: int) -> int:
    """Intersection of all closed sets containing a."""
    g.ground.check_mask(a)
    if g.size <= TABLE_CAP:
        return _closure_table(g)[a]
    return kernels.closure_of(_closed_family(g), a, g.full)


def interior(g: Gts, a: int) -> int:
    """Union of all open sets contained in a."""
    g.ground.check_mask(a)
    if g.size <= TABLE_CAP:
        return _interior_table(g)[a]
    # Dual form; closure handles the on-demand path.
    return g.full ^ closure(g, g.full ^ a)


class ClosureOp:
    """Increasing, monotone, idempotent self-map on the subsets of a carrier.

    Backed by a full table for carriers up to TABLE_CAP points, by the family
    of closed sets, or by a raw function for larger carriers.
    """

    def __init__(self, ground_set: GroundSet, *, table=None, closed=None, func=None):
        if sum(x is not None for x in (table, closed, func)) != 1:
            raise StructuralError("exactly one backing required")
        self.ground = ground_set
        self._table = tuple(table) if table is not None else None
        self._closed = tuple(sorted(set(closed))) if closed is not None else None
        self._func = func

    @classmethod
    def from_table(cls, ground_set: GroundSet, table: Sequence[int]) -> "ClosureOp":
        n = ground_set.size
        if len(table) != 1 << n:
            raise StructuralError(
                f"table must have {1 << n} entries, got {len(table)}"
            )
        validate_closure_table(ground_set, table)
        return cls(ground_set, table=table)

    @classmethod
    def from_closed_sets(cls, ground_set: GroundSet, closed: Iterable[int]) -> "ClosureOp":
        fam = canon_family(ground_set, closed)
        if ground_set.full not in fam:
            raise ValidationError("closed family must contain the carrier")
        for i, a in enumerate(fam):
            for b in fam[i + 1:]:
                if a & b not in set(fam):
                    raise ValidationError(
                        "closed family not intersection-closed", witness=(a, b)
                    )
        if ground_set.size <= TABLE_CAP:
            opens = [ground_set.full ^ f for f in fam]
            return cls(ground_set, table=kernels.closure_table(opens, ground_set.size))
        return cls(ground_set, closed=fam)

    @classmethod
    def from_function(cls, ground_set: GroundSet, func: Callable[[int], int]) -> "ClosureOp":
        """Materializes and validates on small carriers; trusts func above that."""
        if ground_set.size <= TABLE_CAP:
            table = [func(a) for a in range(1 << ground_set.size)]
            return cls.from_table(ground_set, table)
        return cls(ground_set, func=func)

    def __call__(self, a: int) -> int:
        self.ground.check_mask(a)
        if self._table is not None:
            return self._table[a]
        if self._closed is not None:
            return kernels.closure_of(self._closed, a, self.ground.full)
        return self._func(a)

    def closed_family(self) -> tuple:
        if self._closed is not None:
            return self._closed
        if self._table is not None:
            return tuple(sorted({v for v in self._table}))
        n = self.ground.size
        return tuple(sorted({self._func(a) for a in range(1 << n)}))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosureOp):
            return NotImplemented
        return self.ground == other.ground and self.closed_family() == other.closed_family()

    def __hash__(self):
        return hash((self.ground, self.closed_family()))

    def __repr__(self):
        return f"ClosureOp(n={self.ground.size}, closed={len(self.closed_family())})"


def validate_closure_table(ground_set: GroundSet, table: Sequence[int]) -> None:
    """Raises with a witness if the table is not a closure operator."""
    n = ground_set.size
    full = ground_set.full
    for a, c in enumerate(table):
        if not 0 <= c <= full:
            raise StructuralError(f"table value {c:#x} out of range at {a:#x}")
        if c & a != a:
            raise ValidationError(
                f"not increasing at subset {a:#x}", witness=(a,)
            )
    for a in range(1 << n):
        rest = full ^ a
        while rest:
            bit = rest & -rest
            if table[a] & ~table[a | bit]:
                raise ValidationError(
                    f"not monotone on pair ({a:#x}, {a | bit:#x})",
                    witness=(a, a | bit),
                )
            rest ^= bit
    for a in range(1 << n):
        if table[table[a]] != table[a]:
            raise ValidationError(
                f"not idempotent at subset {a:#x}", witness=(a, table[a])
            )


def closure_op_from_gts(g: Gts) -> ClosureOp:
    if g.size <= TABLE_CAP:
        return ClosureOp(g.ground, table=_closure_table(g))
    return ClosureOp(g.ground, closed=_closed_family(g))


def gts_from_closure_op(c: ClosureOp) -> Gts:
    full = c.ground.full
    return Gts(c.ground, tuple(sorted(full ^ f for f in c.closed_family())))


class SubsetOperator:
    """Table- or function-backed self-map on subsets (not assumed idempotent)."""

    def __init__(self, ground_set: GroundSet, *, table=None, func=None):
        if (table is None) == (func is None):
            raise StructuralError("exactly one of table/func required")
        if table is not None and len(table) != 1 << ground_set.size:
            raise StructuralError(
                f"table must have {1 << ground_set.size} entries, got {len(table)}"
            )
        self.ground = ground_set
        self.table = tuple(table) if table is not None else None
        self._func = func

    def __call__(self, a: int) -> int:
        self.ground.check_mask(a)
        if self.table is not None:
            return self.table[a]
        return self._func(a)

    def validate_monotone(self) -> None:
        """Single-bit check: gamma(A) inside gamma(A + {i}) for every A, i."""
        if self.table is None:
            return  # function-backed operators are validated by their builders
        n = self.ground.size
        full = self.ground.full
        for a in range(1 << n):
            rest = full ^ a
            while rest:
                bit = rest & -rest
                if self.table[a] & ~self.table[a | bit]:
                    raise ValidationError(
                        f"not monotone on pair ({a:#x}, {a | bit:#x})",
                        witness=(a, a | bit),
                    )
                rest ^= bit

    def validate_increasing(self) -> None:
        if self.table is None:
            return
        for a, v in enumerate(self.table):
            if v & a != a:
                raise ValidationError(f"not increasing at subset {a:#x}", witness=(a,))

    def __eq__(self, other):
        if not isinstance(other, SubsetOperator):
            return NotImplemented
        if self.ground != other.ground:
            return False
        if self.table is not None and other.table is not None:
            return self.table == other.table
        return all(self(a) == other(a) for a in range(1 << self.ground.size))

    def __hash__(self):
        return hash((self.ground, self.table))


def all_masks(n: int):
    return range(1 << n)


def restrict_mask(m: int, x0: int) -> int:
    """Repack the bits of m that lie in x0 into a mask over x0's points."""
    out = 0
    j = 0
    while x0:
        bit = x0 & -x0
        if m & bit:
            out |= 1 << j
        j += 1
        x0 ^= bit
    return out


def expand_mask(sub: int, x0: int) -> int:
    """Inverse of restrict_mask: place sub's bits at x0's set positions."""
    out = 0
    j = 0
    while x0:
        bit = x0 & -x0
        if sub >> j & 1:
            out |= bit
        j += 1
        x0 ^= bit
    return out


def sub_ground(ground_set: GroundSet, x0: int) -> GroundSet:
    ground_set.check_mask(x0)
    return GroundSet(ground_set.members(x0))


def trace_space(g: Gts, x0: int) -> Gts:
    """The trace of g's opens on the subset x0, over the restricted carrier."""
    g.ground.check_mask(x0)
    return Gts(
        sub_ground(g.ground, x0),
        tuple(sorted({restrict_mask(m & x0, x0) for m in g.opens})),
    )


def disjoint_union_ground(parts: Sequence[GroundSet]) -> tuple:
    """Concatenated carrier plus each part's bit offset; labels must be disjoint."""
    labels = []
    offsets = []
    seen = set()
    pos = 0
    for part in parts:
        offsets.append(pos)
        for lab in part.labels:
            if lab in seen:
                raise StructuralError(f"label {lab!r} occurs in two summands")
            seen.add(lab)
            labels.append(lab)
        pos += part.size
    return GroundSet(tuple(labels)), tuple(offsets)
