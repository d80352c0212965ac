"""Open covers, exact minimum subcovers, and bounded-cover compactness.

Compactness with a finite bound n ("every open cover has a subcover of fewer
than n sets") is decided through irredundant covers: a minimum subcover of
any cover is irredundant (each member keeps a private point), and an
irredundant cover is its own unique subcover, so the worst case over all
covers is the largest irredundant cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from gentop.core import Gts
from gentop.errors import StructuralError, ValidationError
from gentop.report import Verdict

ALEPH0 = "aleph0"
ALEPH1 = "aleph1"


@dataclass(frozen=True)
class KappaBudget:
    """Either a finite bound (subcovers of fewer than `bound` sets) or one of
    the infinite markers, which any finite space meets trivially."""

    bound: Union[int, str]

    def __post_init__(self):
        if isinstance(self.bound, int):
            if self.bound <= 0:
                raise StructuralError("finite budget must be positive")
        elif self.bound not in (ALEPH0, ALEPH1):
            raise StructuralError(f"unknown budget {self.bound!r}")

    @property
    def is_finite(self) -> bool:
        return isinstance(self.bound, int)

    @classmethod
    def parse(cls, text: str) -> "KappaBudget":
        if text in (ALEPH0, ALEPH1):
            return cls(text)
        return cls(int(text))


@dataclass(frozen=True)
class Cover:
    space: Gts
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        opens = self.space.open_set()
        union = 0
        for m in self.members:
            if m not in opens:
                raise ValidationError(
                    f"cover member {m:#x} is not open", witness=m
                )
            union |= m
        if union != self.space.full:
            raise ValidationError(
                "members do not cover the carrier",
                witness=self.space.full ^ union,
            )


def _min_cover_indices(masks: Sequence[int], full: int) -> Optional[tuple]:
    """Exact minimum covering index set; None when the masks do not cover."""
    if full == 0:
        return ()
    nmasks = len(masks)
    covered_all = 0
    for m in masks:
        covered_all |= m
    if covered_all != full:
        return None

    # Greedy upper bound, largest gain first, lowest index on ties.
    cov = 0
    greedy = []
    while cov != full:
        bi = max(range(nmasks), key=lambda i: ((masks[i] & ~cov).bit_count(), -i))
        greedy.append(bi)
        cov |= masks[bi]
    best = greedy

    point_sets = [
        [i for i in range(nmasks) if masks[i] >> p & 1] for p in range(full.bit_length())
    ]

    def dfs(cov, chosen):
        nonlocal best
        if cov == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        rem = (full & ~cov).bit_count()
        largest = max((m & ~cov).bit_count() for m in masks)
        if largest == 0 or len(chosen) + -(-rem // largest) >= len(best):
            return
        # Branch on the uncovered point with the fewest candidate sets.
        pick, cands = -1, None
        unc = full & ~cov
        while unc:
            p = (unc & -unc).bit_length() - 1
            unc &= unc - 1
            c = point_sets[p]
            if cands is None or len(c) < len(cands):
                pick, cands = p, c
        for i in cands:
            dfs(cov | masks[i], chosen + [i])

    dfs(0, [])
    return tuple(sorted(best))


def min_subcover(cover: Cover) -> tuple:
    """A subcover of minimum cardinality (exact, deterministic)."""
    idx = _min_cover_indices(cover.members, cover.space.full)
    return tuple(cover.members[i] for i in idx)


def max_irredundant_cover(g: Gts) -> Optional[tuple]:
    """Largest cover in which every member keeps a private point.

    Returns None when the carrier has no open cover at all.  A private point
    lies in no other member, so irredundant covers have at most one member per
    point; the search branches over opens with that bound.
    """
    full = g.full
    if full == 0:
        return ()
    union_all = g.opens[-1]
    if union_all != full:
        return None
    candidates = [m for m in g.opens if m]
    best: Optional[list] = None

    def privacy_ok(chosen):
        for k, m in enumerate(chosen):
            rest = 0
            for j, other in enumerate(chosen):
                if j != k:
                    rest |= other
            if m & ~rest == 0:
                return False
        return True

    def dfs(idx, chosen, covered):
        nonlocal best
        if covered == full and (best is None or len(chosen) > len(best)):
            best = list(chosen)
        if idx == len(candidates):
            return
        remaining = len(candidates) - idx
        limit = min(g.size, len(chosen) + remaining)
        if best is not None and limit <= len(best):
            return
        new = chosen + [candidates[idx]]
        if len(new) <= g.size and privacy_ok(new):
            dfs(idx + 1, new, covered | candidates[idx])
        dfs(idx + 1, chosen, covered)

    dfs(0, [], 0)
    return tuple(sorted(best)) if best is not None else None


def is_kappa_compact(g: Gts, budget: KappaBudget) -> Verdict:
    """Every open cover must have a subcover below the budget.

    A carrier that is not open has no open cover at all (the union of all
    opens is itself open), so the property holds vacuously.  Infinite budgets
    are trivial on finite carriers.
    """
    union_all = g.opens[-1] if g.opens else 0
    if union_all != g.full:
        return Verdict(
            "kappa_compact",
            True,
            {"note": "no open cover exists: the carrier is not open"},
        )
    if not budget.is_finite:
        return Verdict(
            "kappa_compact",
            True,
            {"note": f"finite space: every cover is finite, {budget.bound} is trivial"},
        )
    worst = max_irredundant_cover(g)
    size = len(worst) if worst is not None else 0
    if size < budget.bound:
        return Verdict("kappa_compact", True, {"worst_cover_size": size})
    return Verdict(
        "kappa_compact",
        False,
        {
            "worst_cover_size": size,
            "cover": [list(g.ground.members(m)) for m in worst],
        },
    )


def product_subcover_extract(prod, cover_decomps: Sequence[dict], budget: KappaBudget) -> tuple:
    """Extract a small subcover of a product from cylinder decompositions.

    Each cover member is given as {factor index: factor open}; the member is
    the union of the corresponding cylinders.  If no coordinate's slices
    cover their factor, a point missed by every member exists and is raised
    as the witness that the input was not a cover.  Otherwise the first
    covering coordinate is subcovered exactly and the matching members are
    returned.
    """
    factors = prod.factors
    projections = prod.projections
    slices = []
    for beta, decomp in enumerate(cover_decomps):
        clean = {}
        for alpha, mask in decomp.items():
            if not 0 <= alpha < len(factors):
                raise StructuralError(f"member {beta}: no factor {alpha}")
            if mask not in factors[alpha].open_set():
                raise ValidationError(
                    f"member {beta}: slice {mask:#x} not open in factor {alpha}",
                    witness=(beta, alpha, mask),
                )
            clean[alpha] = mask
        slices.append(clean)

    covering_alpha = None
    for alpha, f in enumerate(factors):
        u = 0
        for decomp in slices:
            u |= decomp.get(alpha, 0)
        if u == f.full:
            covering_alpha = alpha
            break

    if covering_alpha is None:
        # Pick one missed point per coordinate; the tuple escapes every member.
        missed = []
        for alpha, f in enumerate(factors):
            u = 0
            for decomp in slices:
                u |= decomp.get(alpha, 0)
            for i in range(f.size):
                if not u >> i & 1:
                    missed.append(i)
                    break
        label = tuple(
            f.ground.labels[i] for f, i in zip(factors, missed)
        )
        raise ValidationError(
            f"input is not a cover: point {label!r} is missed", witness=label
        )

    factor = factors[covering_alpha]
    slice_masks = []
    slice_owner = []
    for beta, decomp in enumerate(slices):
        m = decomp.get(covering_alpha, 0)
        if m and m not in slice_masks:
            slice_masks.append(m)
            slice_owner.append(beta)
    idx = _min_cover_indices(slice_masks, factor.full)
    chosen_betas = sorted(slice_owner[i] for i in idx)

    members = []
    for beta in chosen_betas:
        raw = 0
        for alpha, mask in slices[beta].items():
            leg = projections[alpha]
            raw |= leg.preimage(mask)
        members.append(raw)
    return tuple(sorted(members))
