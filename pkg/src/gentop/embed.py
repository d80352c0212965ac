"""Unit-interval ray traces, the embedding lemma, the power embedding for
completely regular T1 spaces, and the dense-in-compact extension.

Powers of the two-point value space can be exponentially large, so they are
kept virtual (factor list only); image subspaces are materialized through
cylinder traces, and closures in a power go through the coordinatewise box
formula rather than through a materialized open family.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from gentop import rays
from gentop.config import ground_cap
from gentop.core import GroundSet, Gts, closure, union_close
from gentop.errors import (
    PreconditionError,
    ResourceError,
    StructuralError,
    ValidationError,
)
from gentop.maps import (
    GtsMap,
    continuity_verdict,
    dense_verdict,
    homeomorphism_verdict,
    is_continuous,
    open_map_verdict,
)
from gentop.report import PropertyReport, Verdict
from gentop.separation import check_axiom, cr_separated, two_point_value_space


def gamma0_trace(points: Sequence[Fraction]) -> Gts:
    """Trace of the unit-interval ray family on a finite set of rationals."""
    pts = rays.check_points(points)
    gs = GroundSet(tuple(str(p) for p in pts))
    return Gts(gs, rays.ray_trace_opens(pts))


@dataclass(frozen=True)
class TracePower:
    """A product of small factors, kept as the factor list only.

    Points are tuples of factor point indices; closure questions go through
    the per-coordinate box formula, so the (possibly huge) open family is
    never materialized.
    """

    factors: tuple

    def point_count(self) -> int:
        count = 1
        for f in self.factors:
            count *= f.size
        return count

    def point_label(self, point: tuple) -> tuple:
        return tuple(f.ground.labels[i] for f, i in zip(self.factors, point))

    def closure_of_points(self, points: Sequence[tuple]) -> Tuple[tuple, ...]:
        """Box formula: product of the factor closures of the projections."""
        coords = []
        for k, f in enumerate(self.factors):
            proj = 0
            for p in points:
                proj |= 1 << p[k]
            coords.append(closure(f, proj))
        out = [()]
        for cmask, f in zip(coords, self.factors):
            out = [p + (i,) for p in out for i in range(f.size) if cmask >> i & 1]
        return tuple(out)

    def closure_is_full(self, points: Sequence[tuple]) -> bool:
        if not self.factors:
            return True  # the empty power's only closed set is its single point
        for k, f in enumerate(self.factors):
            proj = 0
            for p in points:
                proj |= 1 << p[k]
            if closure(f, proj) != f.full:
                return False
        return True

    def materialize(self):
        """Real product space; raises ResourceError beyond the carrier cap."""
        from gentop.lifts import product

        return product(list(self.factors))


def power_t1_verdict(power: TracePower) -> Verdict:
    """Points of a power differ in some coordinate, so factor T1 lifts."""
    for k, f in enumerate(power.factors):
        v = check_axiom(f, "T1")
        if not v:
            return Verdict("T1", False, {"factor": k, **(v.witness or {})})
    return Verdict("T1", True)


def power_normal_verdict(power: TracePower) -> Verdict:
    """Closed sets of a power are boxes of factor-closed sets; disjoint boxes
    are disjoint in some coordinate and separate there, so factor normality
    lifts coordinatewise."""
    for k, f in enumerate(power.factors):
        v = check_axiom(f, "Normal")
        if not v:
            return Verdict("Normal", False, {"factor": k, **(v.witness or {})})
    return Verdict("Normal", True)


def power_compact_verdict(power: TracePower) -> Verdict:
    """Finite carriers have finite open families; any cover is finite."""
    return Verdict(
        "compact",
        True,
        {"note": f"finite carrier of {power.point_count()} points"},
    )


def induced_image_embedding(legs: Sequence[GtsMap]) -> tuple:
    """Image subspace of the joint map into the product, plus the corestriction.

    The product's opens are generated by single-coordinate cylinders, and
    traces commute with unions, so the image trace is the union closure of
    the cylinder traces; the full product is never built.
    """
    if not legs:
        raise StructuralError("at least one leg required")
    dom = legs[0].dom
    for f in legs:
        if f.dom.ground != dom.ground:
            raise StructuralError("legs must share one domain")
    tuples = [tuple(f.table[i] for f in legs) for i in range(dom.size)]
    distinct = sorted(set(tuples))
    position = {t: j for j, t in enumerate(distinct)}
    labels = tuple(
        tuple(f.cod.ground.labels[i] for f, i in zip(legs, t)) for t in distinct
    )
    base = []
    for k, f in enumerate(legs):
        for n_open in f.cod.opens:
            tr = 0
            for j, t in enumerate(distinct):
                if n_open >> t[k] & 1:
                    tr |= 1 << j
            base.append(tr)
    image_ground = GroundSet(labels)
    image_space = Gts(image_ground, union_close(image_ground, base))
    embedding = GtsMap(dom, image_space, tuple(position[t] for t in tuples))
    return image_space, embedding, tuple(distinct)


def _monosource_verdict(legs: Sequence[GtsMap]) -> Verdict:
    dom = legs[0].dom
    for i in range(dom.size):
        for j in range(i + 1, dom.size):
            if all(f.table[i] == f.table[j] for f in legs):
                return Verdict(
                    "monosource",
                    False,
                    {"points": [dom.ground.labels[i], dom.ground.labels[j]]},
                )
    return Verdict("monosource", True)


def _leg_base_verdict(legs: Sequence[GtsMap]) -> Verdict:
    """Every point inside an open must sit in a leg-preimage inside it."""
    dom = legs[0].dom
    for m in dom.opens:
        for i in range(dom.size):
            if not m >> i & 1:
                continue
            if not any(
                n_open >> f.table[i] & 1 and f.preimage(n_open) & ~m == 0
                for f in legs
                for n_open in f.cod.opens
            ):
                return Verdict(
                    "leg_base",
                    False,
                    {
                        "point": dom.ground.labels[i],
                        "open": list(dom.ground.members(m)),
                    },
                )
    return Verdict("leg_base", True)


def check_embedding_lemma(legs: Sequence[GtsMap]) -> PropertyReport:
    """Point-separating sources whose leg preimages form a base embed their
    domain homeomorphically into the product of the codomains."""
    t0 = time.perf_counter()
    if not legs:
        raise PreconditionError("embedding lemma needs at least one leg")
    for k, f in enumerate(legs):
        v = continuity_verdict(f)
        if not v:
            raise PreconditionError(f"leg {k} is not continuous: {v.witness}")
    mono = _monosource_verdict(legs)
    base = _leg_base_verdict(legs)
    notes = [f"monosource={mono.holds}", f"leg_base={base.holds}"]
    if not (mono and base):
        notes.append("hypotheses fail; no embedding claim")
        return PropertyReport(
            "embedding_lemma",
            "builtin",
            trials=1,
            passed=1,
            wall_time_s=time.perf_counter() - t0,
            notes=tuple(notes),
        )
    image_space, embedding, _ = induced_image_embedding(legs)
    homeo = homeomorphism_verdict(embedding)
    if not homeo:
        ce = {
            "failed": "homeomorphism",
            "detail": homeo.witness,
            "dom": legs[0].dom.describe(),
        }
        return PropertyReport(
            "embedding_lemma",
            "builtin",
            trials=1,
            passed=0,
            counterexample=ce,
            wall_time_s=time.perf_counter() - t0,
            notes=tuple(notes),
        )
    return PropertyReport(
        "embedding_lemma",
        "builtin",
        trials=1,
        passed=1,
        wall_time_s=time.perf_counter() - t0,
        notes=tuple(notes + ["homeomorphism onto image"]),
    )


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Joint witness-map embedding into a power of the two-point value space.

    Indexed by the incidence pairs (point, open set containing it), in
    lexicographic (point, open) order, so certificates are reproducible."""

    source: Gts
    index_set: tuple  # ((point label, open labels), ...)
    witnesses: tuple  # GtsMap per index, into the two-point value space
    power: TracePower
    image_subspace: Gts
    embedding: GtsMap
    reduced_indices: tuple  # positions whose open is not the whole carrier
    verdicts: Dict[str, Verdict]

    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts.values())

    def to_json(self) -> dict:
        from gentop.jsonio import map_to_json, space_to_json

        return {
            "index_set": [
                [point, list(open_labels)] for point, open_labels in self.index_set
            ],
            "witnesses": [map_to_json(w) for w in self.witnesses],
            "power_factors": len(self.power.factors),
            "image": space_to_json(self.image_subspace),
            "embedding": map_to_json(self.embedding),
            "reduced_indices": list(self.reduced_indices),
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
        }


def tychonoff_embed(g: Gts) -> EmbeddingCertificate:
    """Embed a completely regular T1 space into a power of the two-point
    value space, one coordinate per (point, open) incidence.

    Coordinates with the whole carrier as open get the constant-0 witness;
    the rest get the two-valued separator of the point against the open's
    complement.  Dropping the constant coordinates leaves an image that is
    dense in the remaining power.
    """
    t35 = check_axiom(g, "T3_5")
    if not t35:
        raise PreconditionError(f"embedding requires T3_5; failed: {t35.witness}")
    value_space = two_point_value_space()
    zero = value_space.ground.index("0")
    one = value_space.ground.index("1")

    index_set = []
    witnesses = []
    for p in range(g.size):
        for m in g.opens:
            if not m >> p & 1:
                continue
            index_set.append((g.ground.labels[p], g.ground.members(m)))
            if m == g.full:
                table = tuple(zero for _ in range(g.size))
            else:
                d = cr_separated(g, p, g.full ^ m)
                if d is None:
                    raise ValidationError(
                        "separator missing on a completely regular space",
                        witness=(p, m),
                    )
                table = tuple(zero if d >> i & 1 else one for i in range(g.size))
            witnesses.append(GtsMap(g, value_space, table))

    power = TracePower(tuple(value_space for _ in witnesses))
    if witnesses:
        image_space, embedding, distinct = induced_image_embedding(witnesses)
    else:
        # No incidences: the empty power is a single point carrying only the
        # empty open; the image is the whole of it or nothing.
        label = ()
        if g.size == 0:
            image_space = Gts(GroundSet(()), (0,))
            embedding = GtsMap(g, image_space, ())
            distinct = ()
        else:
            image_space = Gts(GroundSet((label,)), (0,))
            embedding = GtsMap(g, image_space, tuple(0 for _ in range(g.size)))
            distinct = (label,)

    reduced = tuple(
        k for k, (_, open_labels) in enumerate(index_set)
        if len(open_labels) != g.size
    )
    reduced_points = [
        tuple(w.table[i] for k, w in enumerate(witnesses) if k in set(reduced))
        for i in range(g.size)
    ]
    reduced_power = TracePower(tuple(value_space for _ in reduced))

    injective = Verdict(
        "injective",
        len(set(embedding.table)) == g.size,
        None if len(set(embedding.table)) == g.size else {"table": embedding.table},
    )
    verdicts = {
        "injective": injective,
        "continuous": continuity_verdict(embedding),
        "open_onto_image": open_map_verdict(embedding),
        "homeomorphism": homeomorphism_verdict(embedding),
        "dense_in_reduced_power": Verdict(
            "dense_in_reduced_power",
            reduced_power.closure_is_full(reduced_points),
        ),
    }
    return EmbeddingCertificate(
        source=g,
        index_set=tuple(index_set),
        witnesses=tuple(witnesses),
        power=power,
        image_subspace=image_space,
        embedding=embedding,
        reduced_indices=reduced,
        verdicts=verdicts,
    )


def dense_compact_t4_extension(g: Gts):
    """Dense embedding of a completely regular T1 space into a compact
    normal T1 space: the reduced power of the embedding certificate, or the
    space itself when it has at most one point.

    Returns (codomain, embedding, report); the codomain is a materialized
    space (with a plain map) when it fits the carrier cap, else a TracePower
    with the coordinate witness maps.
    """
    t0 = time.perf_counter()
    t35 = check_axiom(g, "T3_5")
    if not t35:
        raise PreconditionError(f"extension requires T3_5; failed: {t35.witness}")

    if g.size <= 1:
        notes = ["codomain is the space itself"]
        checks = {
            "Normal": check_axiom(g, "Normal"),
            "T1": check_axiom(g, "T1"),
            "compact": Verdict("compact", True, {"note": "finite carrier"}),
            "dense": dense_verdict(GtsMap(g, g, tuple(range(g.size)))),
        }
        failed = {k: v for k, v in checks.items() if not v}
        report = PropertyReport(
            "dense_compact_t4_extension",
            "builtin",
            trials=1,
            passed=0 if failed else 1,
            counterexample=(
                {k: v.to_json() for k, v in failed.items()} if failed else None
            ),
            wall_time_s=time.perf_counter() - t0,
            notes=tuple(notes),
        )
        return g, GtsMap(g, g, tuple(range(g.size))), report

    cert = tychonoff_embed(g)
    reduced_set = set(cert.reduced_indices)
    reduced_witnesses = [w for k, w in enumerate(cert.witnesses) if k in reduced_set]
    power = TracePower(tuple(w.cod for w in reduced_witnesses))

    if power.point_count() <= ground_cap():
        prod = power.materialize()
        table = []
        for i in range(g.size):
            label = tuple(w.cod.ground.labels[w.table[i]] for w in reduced_witnesses)
            table.append(prod.space.ground.index(label))
        emb = GtsMap(g, prod.space, tuple(table))
        checks = {
            "Normal": check_axiom(prod.space, "Normal"),
            "T1": check_axiom(prod.space, "T1"),
            "compact": Verdict(
                "compact", True, {"note": "finite carrier, any cover is finite"}
            ),
            "dense": dense_verdict(emb),
            "continuous": continuity_verdict(emb),
        }
        codomain: Union[Gts, TracePower] = prod.space
        notes = ["codomain materialized"]
    else:
        points = [
            tuple(w.table[i] for w in reduced_witnesses) for i in range(g.size)
        ]
        emb = reduced_witnesses
        checks = {
            "Normal": power_normal_verdict(power),
            "T1": power_t1_verdict(power),
            "compact": power_compact_verdict(power),
            "dense": Verdict("dense", power.closure_is_full(points)),
            "continuous": Verdict(
                "continuous",
                all(is_continuous(w) for w in reduced_witnesses),
                {"note": "coordinatewise: maps into a weak structure are "
                         "continuous exactly when every composite is"},
            ),
        }
        codomain = power
        notes = [
            f"codomain virtual: power of {len(power.factors)} factors "
            f"({power.point_count()} points); verdicts use the box form of "
            "closed sets in a power"
        ]
    failed = {k: v for k, v in checks.items() if not v}
    report = PropertyReport(
        "dense_compact_t4_extension",
        "builtin",
        trials=1,
        passed=0 if failed else 1,
        counterexample=({k: v.to_json() for k, v in failed.items()} if failed else None),
        wall_time_s=time.perf_counter() - t0,
        notes=tuple(notes),
    )
    return codomain, emb, report


def dense_two_points(n: int) -> PropertyReport:
    """In the n-fold power of the two-point value space, the all-zero and
    all-one points close up to the whole power (box formula)."""
    t0 = time.perf_counter()
    if not 1 <= n <= 4:
        raise ResourceError("power size must be between 1 and 4")
    from gentop.lifts import product, product_closure_box

    value_space = two_point_value_space()
    prod = product([value_space] * n)
    space = prod.space
    zero_label = tuple("0" for _ in range(n))
    one_label = tuple("1" for _ in range(n))
    pair = 1 << space.ground.index(zero_label) | 1 << space.ground.index(one_label)
    hull = product_closure_box(prod, pair)
    ok = hull == space.full
    return PropertyReport(
        "dense_two_points",
        "builtin",
        trials=1,
        passed=1 if ok else 0,
        counterexample=None
        if ok
        else {"closure": [list(space.ground.members(hull))]},
        wall_time_s=time.perf_counter() - t0,
        notes=(f"power={n}",),
    )
