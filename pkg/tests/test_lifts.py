"""Weak/strong structures and the derived constructions."""

import itertools
import random

import pytest

from gentop import kernels
from gentop.core import (
    Gts,
    SubsetOperator,
    all_masks,
    closure,
    discrete,
    ground,
    gts_from_base,
    gts_from_closure_op,
)
from gentop.errors import PreconditionError, ResourceError, ValidationError
from gentop.generators import Chain, order_gt
from gentop.lifts import (
    IterationTrace,
    Sink,
    SinkLeg,
    Source,
    SourceLeg,
    csaszar_coincidence,
    csaszar_coincidence_expected,
    csaszar_product,
    cube_edge_sink,
    idempotent_hull,
    iterate_to_fixpoint,
    lattice_join,
    lattice_join_closure,
    lattice_meet,
    lattice_meet_closure,
    product,
    product_closure_box,
    quotient,
    quotient_by_labels,
    quotient_closure,
    sink_generator,
    strong_structure_closure,
    strong_structure_opens,
    subspace,
    subspace_closure,
    sum_closure_componentwise,
    sum_gts,
    weak_structure_closure,
    weak_structure_maps,
    weak_structure_opens,
)
from gentop.maps import GtsMap, compose, is_continuous


def two_point(opens):
    return Gts(ground(["0", "1"]), opens)


def test_empty_source_is_indiscrete():
    carrier = ground(["a", "b", "c"])
    assert weak_structure_opens(Source(carrier, ())).opens == (0,)
    co = weak_structure_closure(Source(carrier, ()))
    assert all(co(a) == carrier.full for a in all_masks(3))


def test_single_injective_leg_is_subspace():
    cod = order_gt(Chain(("0", "1", "2")))
    carrier = ground(["x", "y"])
    leg = SourceLeg((0, 2), cod)  # embed onto {0, 2}
    weak = weak_structure_opens(Source(carrier, (leg,)))
    sub = subspace(cod, cod.ground.mask(["0", "2"]))
    assert weak.opens == sub.opens


def test_two_projection_legs_formula():
    # Carrier 2x2, both legs onto ({0,1}, {0,{0}}); oracle enumerates the
    # one-choice-per-leg unions directly.
    cod = two_point((0, 1))
    carrier = ground(["00", "01", "10", "11"])
    row = SourceLeg((0, 0, 1, 1), cod)
    col = SourceLeg((0, 1, 0, 1), cod)
    weak = weak_structure_opens(Source(carrier, (row, col)))
    expected = set()
    for m_row, m_col in itertools.product(cod.opens, repeat=2):
        expected.add(row.preimage(m_row) | col.preimage(m_col))
    assert set(weak.opens) == expected
    assert len(weak.opens) == 4  # empty, row0, col0, row0|col0


def test_weak_closure_single_identity_leg():
    g = order_gt(Chain(("0", "1", "2")))
    src = Source(g.ground, (SourceLeg((0, 1, 2), g),))
    co = weak_structure_closure(src)
    for a in all_masks(3):
        assert co(a) == closure(g, a)


def test_weak_agreement_random():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randrange(0, 5)
        carrier = ground([f"x{i}" for i in range(n)])
        legs = []
        for _ in range(rng.randrange(0, 4)):
            m = rng.randrange(0, 4)
            if m == 0 and n > 0:
                continue
            cg = ground([f"y{i}" for i in range(m)])
            cod = gts_from_base(cg, [rng.randrange(1 << m) for _ in range(3)])
            legs.append(SourceLeg(tuple(rng.randrange(max(m, 1)) for _ in range(n)), cod))
        src = Source(carrier, tuple(legs))
        assert gts_from_closure_op(weak_structure_closure(src)) == weak_structure_opens(src)


def test_empty_sink_is_discrete():
    carrier = ground(["a", "b"])
    assert strong_structure_opens(Sink(carrier, ())).is_discrete()
    co = strong_structure_closure(Sink(carrier, ()))
    assert all(co(a) == a for a in all_masks(2))


def test_single_surjective_leg_is_quotient():
    g = order_gt(Chain(("0", "1", "2")))
    carrier = ground(["p", "q"])
    func = (0, 0, 1)
    snk = Sink(carrier, (SinkLeg(g, func),))
    strong = strong_structure_opens(snk)
    assert strong == quotient(g, func, carrier)


def test_cube_edge_sink_strong_opens():
    snk = cube_edge_sink(3)
    assert strong_structure_opens(snk).opens == (0, (1 << 8) - 1)


def test_hull_of_idempotent_stabilizes_at_most_one():
    g = order_gt(Chain(("0", "1", "2")))
    op = SubsetOperator(g.ground, table=[closure(g, a) for a in all_masks(3)])
    for a in all_masks(3):
        trace = iterate_to_fixpoint(op, a, g.ground)
        assert trace.stabilized_at <= 1


def test_cube_hull_stages_are_hamming_balls():
    for dim in (2, 3, 4):
        snk = cube_edge_sink(dim)
        gamma = sink_generator(snk)
        trace = iterate_to_fixpoint(gamma, 1, snk.carrier)
        assert trace.stabilized_at == dim
        for k, mask in trace.stages:
            ball = 0
            for v in range(1 << dim):
                if bin(v).count("1") <= k:
                    ball |= 1 << v
            assert mask == ball


def test_cube_closure_of_corner_is_cube():
    snk = cube_edge_sink(3)
    co = strong_structure_closure(snk)
    assert co(1) == snk.carrier.full


def test_strong_agreement_random():
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randrange(0, 5)
        carrier = ground([f"x{i}" for i in range(n)])
        legs = []
        for _ in range(rng.randrange(0, 4)):
            m = rng.randrange(0, 4)
            if n == 0 and m > 0:
                continue
            dg = ground([f"y{i}" for i in range(m)])
            dom = gts_from_base(dg, [rng.randrange(1 << m) for _ in range(3)])
            legs.append(SinkLeg(dom, tuple(rng.randrange(max(n, 1)) for _ in range(m))))
        snk = Sink(carrier, tuple(legs))
        assert gts_from_closure_op(strong_structure_closure(snk)) == strong_structure_opens(snk)


def test_hull_validates_input():
    gs = ground(["a", "b"])
    bad = SubsetOperator(gs, table=[0, 0, 2, 3])  # drops {a}: not increasing
    with pytest.raises(ValidationError):
        idempotent_hull(bad)


def test_universality_weak_finite():
    # h continuous into the weak structure iff all composites are continuous.
    rng = random.Random(7)
    pool = []
    gs2 = ground(["y0", "y1"])
    for fam in kernels.enumerate_union_closed(2):
        pool.append(Gts(gs2, fam))
    for _ in range(60):
        carrier = ground(["x0", "x1", "x2"])
        legs = [
            SourceLeg(tuple(rng.randrange(2) for _ in range(3)), pool[rng.randrange(len(pool))])
            for _ in range(rng.randrange(0, 3))
        ]
        src = Source(carrier, tuple(legs))
        weak = weak_structure_opens(src)
        weak_maps = weak_structure_maps(src, weak)
        z = pool[rng.randrange(len(pool))]
        for h_func in itertools.product(range(3), repeat=2):
            h = GtsMap(z, weak, h_func)
            lhs = is_continuous(h)
            rhs = all(is_continuous(compose(f, h)) for f in weak_maps)
            assert lhs == rhs


def test_universality_strong_finite():
    rng = random.Random(8)
    pool = []
    gs2 = ground(["y0", "y1"])
    for fam in kernels.enumerate_union_closed(2):
        pool.append(Gts(gs2, fam))
    for _ in range(60):
        carrier = ground(["x0", "x1"])
        legs = [
            SinkLeg(pool[rng.randrange(len(pool))], tuple(rng.randrange(2) for _ in range(2)))
            for _ in range(rng.randrange(0, 3))
        ]
        snk = Sink(carrier, tuple(legs))
        strong = strong_structure_opens(snk)
        z = pool[rng.randrange(len(pool))]
        for h_func in itertools.product(range(2), repeat=2):
            h = GtsMap(strong, z, h_func)
            lhs = is_continuous(h)
            rhs = all(
                is_continuous(GtsMap(leg.dom, z, tuple(h_func[v] for v in leg.func)))
                for leg in snk.legs
            )
            assert lhs == rhs


def test_product_and_sum_as_lift_special_cases():
    ga = two_point((0, 1))
    gb = order_gt(Chain(("0", "1", "2")))
    p = product([ga, gb])
    src = Source(
        p.space.ground,
        tuple(SourceLeg(proj.table, proj.cod) for proj in p.projections),
    )
    assert weak_structure_opens(src).opens == p.space.opens
    gc = Gts(ground(["x", "y"]), (0, 1, 3))
    s = sum_gts([gc, gb])
    snk = Sink(
        s.space.ground,
        tuple(SinkLeg(inj.dom, inj.table) for inj in s.injections),
    )
    assert strong_structure_opens(snk).opens == s.space.opens


def test_subspace_examples():
    c3 = order_gt(Chain(("0", "1", "2")))
    assert subspace(c3, c3.full) == c3
    assert subspace(c3, c3.ground.mask(["0", "2"])).is_discrete()
    co = subspace_closure(c3, c3.ground.mask(["0", "2"]))
    assert gts_from_closure_op(co) == subspace(c3, c3.ground.mask(["0", "2"]))


def test_quotient_examples():
    g = gts_from_base(ground(["a", "b", "c"]), [0b011])
    space, qmap = quotient_by_labels(g, {"a": "p", "b": "p", "c": "r"})
    assert space.ground.labels == ("p", "r")
    assert space.opens == (0, 1)
    assert is_continuous(qmap)
    # identity quotient
    same, _ = quotient_by_labels(g, {"a": "a", "b": "b", "c": "c"})
    assert same == g
    # collapse to a point: open iff the whole carrier was open
    pt, _ = quotient_by_labels(g, {"a": "p", "b": "p", "c": "p"})
    assert pt.opens == (0,)
    strong_g = gts_from_base(ground(["a", "b"]), [0b11])
    pt2, _ = quotient_by_labels(strong_g, {"a": "p", "b": "p"})
    assert pt2.opens == (0, 1)
    with pytest.raises(PreconditionError):
        quotient(g, (0, 0, 0), ground(["p", "q"]))


def test_quotient_closure_agreement():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randrange(1, 5)
        gs = ground([f"x{i}" for i in range(n)])
        g = gts_from_base(gs, [rng.randrange(1 << n) for _ in range(3)])
        classes = [rng.randrange(n) for _ in range(n)]
        relabel = {c: i for i, c in enumerate(dict.fromkeys(classes))}
        table = tuple(relabel[c] for c in classes)
        cod = ground([f"q{i}" for i in range(len(relabel))])
        assert gts_from_closure_op(quotient_closure(g, table, cod)) == quotient(g, table, cod)


def test_product_examples():
    empty = product([])
    assert empty.space.ground.labels == ((),)
    assert empty.space.opens == (0,)
    c3 = order_gt(Chain(("0", "1", "2")))
    single = product([c3])
    assert len(single.space.opens) == len(c3.opens)
    assert all(is_continuous(p) for p in single.projections)
    d2 = discrete(ground(["0", "1"]))
    p = product([d2, d2])
    diag = p.space.ground.mask([("0", "0"), ("1", "1")])
    assert product_closure_box(p, diag) == p.space.full


def test_product_box_closure_matches_closed_sets():
    rng = random.Random(10)
    for _ in range(100):
        na, nb = rng.randrange(1, 4), rng.randrange(1, 4)
        ga = gts_from_base(ground([f"a{i}" for i in range(na)]),
                           [rng.randrange(1 << na) for _ in range(2)])
        gb = gts_from_base(ground([f"b{i}" for i in range(nb)]),
                           [rng.randrange(1 << nb) for _ in range(2)])
        p = product([ga, gb])
        for _ in range(5):
            m = rng.randrange(0, p.space.full + 1)
            assert product_closure_box(p, m) == closure(p.space, m)


def test_product_cap():
    d2 = discrete(ground(["0", "1"]))
    with pytest.raises(ResourceError):
        product([d2] * 5)


def test_product_strongness_formula():
    rng = random.Random(11)
    for _ in range(200):
        na, nb = rng.randrange(1, 4), rng.randrange(1, 4)
        ga = gts_from_base(ground([f"a{i}" for i in range(na)]),
                           [rng.randrange(1 << na) for _ in range(2)])
        gb = gts_from_base(ground([f"b{i}" for i in range(nb)]),
                           [rng.randrange(1 << nb) for _ in range(2)])
        p = product([ga, gb]).space
        assert p.is_strong() == (ga.is_strong() or gb.is_strong())


def test_sum_examples():
    empty = sum_gts([])
    assert empty.space.ground.size == 0
    assert empty.space.opens == (0,)
    assert empty.space.is_strong()
    pa = Gts(ground(["a"]), (0, 1))
    pb = Gts(ground(["b"]), (0, 1))
    s = sum_gts([pa, pb])
    assert s.space.is_discrete()
    assert all(is_continuous(i) for i in s.injections)


def test_sum_closure_componentwise():
    rng = random.Random(12)
    for _ in range(100):
        na, nb = rng.randrange(0, 4), rng.randrange(0, 4)
        ga = gts_from_base(ground([f"a{i}" for i in range(na)]),
                           [rng.randrange(1 << na) for _ in range(2)])
        gb = gts_from_base(ground([f"b{i}" for i in range(nb)]),
                           [rng.randrange(1 << nb) for _ in range(2)])
        s = sum_gts([ga, gb])
        for a in range(0, s.space.full + 1, max(1, s.space.full // 7)):
            assert sum_closure_componentwise(s, a) == closure(s.space, a)


def test_lattice_examples():
    gs = ground(["a", "b"])
    a = Gts(gs, (0, 1))
    b = Gts(gs, (0, 2))
    assert lattice_join(gs, [a, b]).is_discrete()
    assert lattice_meet(gs, [a, b]).opens == (0,)
    assert lattice_join(gs, [a, a]) == a
    assert lattice_meet(gs, [a, a]) == a
    assert gts_from_closure_op(lattice_join_closure(gs, [a, b])) == lattice_join(gs, [a, b])
    assert gts_from_closure_op(lattice_meet_closure(gs, [a, b])) == lattice_meet(gs, [a, b])


def test_csaszar_examples():
    s2 = two_point((0, 1, 3))
    box = csaszar_product([s2, s2])
    prod = product([s2, s2]).space
    singleton = box.ground.mask([("0", "0")])
    assert singleton in box.open_set()
    assert singleton not in prod.open_set()
    assert not csaszar_coincidence([s2, s2])
    i2 = two_point((0, 3))
    assert csaszar_coincidence([i2, s2])
    assert csaszar_coincidence_expected([i2, s2])
    empty_factor = Gts(ground([]), (0,))
    assert csaszar_coincidence([empty_factor, s2])
    assert csaszar_product([]).opens == (0, 1)


def test_iteration_trace_invariants():
    with pytest.raises(ValidationError):
        IterationTrace(((0, 3), (1, 1)), 1)  # not increasing
    with pytest.raises(ValidationError):
        IterationTrace(((0, 1), (1, 1)), 1)  # repeated stage
