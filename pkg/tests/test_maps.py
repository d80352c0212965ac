"""Map predicates: continuity in both forms, openness, homeomorphism, density."""

import itertools
import random

from gentop import kernels
from gentop.core import Gts, discrete, ground, gts_from_base, indiscrete
from gentop.generators import Chain, order_gt
from gentop.lifts import product, subspace_inclusion
from gentop.maps import (
    GtsMap,
    all_maps,
    compose,
    continuity_verdict,
    corestrict,
    identity_map,
    image_subspace,
    is_continuous,
    is_continuous_closure,
    is_dense,
    is_homeomorphism,
    is_open_map,
)


def spaces_upto(n):
    out = []
    for m in range(n + 1):
        gs = ground([chr(97 + i) for i in range(m)])
        for fam in kernels.enumerate_union_closed(m):
            out.append(Gts(gs, fam))
    return out


def test_identity_continuous():
    for g in spaces_upto(2):
        assert is_continuous(identity_map(g))
        assert is_homeomorphism(identity_map(g))


def test_into_indiscrete_codomain():
    dom = discrete(ground(["a", "b"]))
    cod = indiscrete(ground(["x", "y"]))
    for f in all_maps(dom, cod):
        assert is_continuous(f)


def test_one_point_into_two_chain_not_continuous():
    # The lone map from the non-strong point into a strong order space.
    dom = indiscrete(ground(["p"]))
    cod = order_gt(Chain(("0", "1")))
    for f in all_maps(dom, cod):
        v = continuity_verdict(f)
        assert not v.holds
        assert v.witness is not None


def test_constant_into_strong_closure_form():
    # The domain must be strong: the full carrier is the preimage of the
    # codomain and the empty set must close to itself.
    dom = gts_from_base(ground(["a", "b"]), [1, 3])
    cod = Gts(ground(["x", "y"]), (0, 3))
    f = GtsMap.from_labels(dom, cod, {"a": "x", "b": "x"})
    assert is_continuous_closure(f)
    assert is_continuous(f)


def test_continuity_forms_agree_exhaustively():
    pool = spaces_upto(3)
    for dom, cod in itertools.product(pool, repeat=2):
        if cod.size == 0 and dom.size > 0:
            continue
        for f in all_maps(dom, cod):
            assert is_continuous(f) == is_continuous_closure(f)


def test_continuity_forms_agree_random_ground5():
    rng = random.Random(42)
    for _ in range(10000):
        n, m = rng.randrange(1, 6), rng.randrange(1, 6)
        dg = ground([f"d{i}" for i in range(n)])
        cg = ground([f"c{i}" for i in range(m)])
        dom = gts_from_base(dg, [rng.randrange(1 << n) for _ in range(3)])
        cod = gts_from_base(cg, [rng.randrange(1 << m) for _ in range(3)])
        f = GtsMap(dom, cod, tuple(rng.randrange(m) for _ in range(n)))
        assert is_continuous(f) == is_continuous_closure(f)


def test_composition_of_continuous_is_continuous():
    rng = random.Random(43)
    pool = spaces_upto(3)
    for _ in range(300):
        a, b, c = (pool[rng.randrange(len(pool))] for _ in range(3))
        if (b.size == 0 and a.size > 0) or (c.size == 0 and b.size > 0):
            continue
        f = GtsMap(a, b, tuple(rng.randrange(max(b.size, 1)) for _ in range(a.size)))
        g = GtsMap(b, c, tuple(rng.randrange(max(c.size, 1)) for _ in range(b.size)))
        if is_continuous(f) and is_continuous(g):
            assert is_continuous(compose(g, f))


def test_homeomorphism_decomposition():
    rng = random.Random(44)
    pool = spaces_upto(3)
    for _ in range(500):
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        if b.size == 0 and a.size > 0:
            continue
        f = GtsMap(a, b, tuple(rng.randrange(max(b.size, 1)) for _ in range(a.size)))
        expected = f.is_bijective() and is_continuous(f) and is_open_map(f)
        assert is_homeomorphism(f) == expected


def test_dense_diagonal_in_discrete_powers():
    d2 = discrete(ground(["0", "1"]))
    for n in (2, 3):
        prod = product([d2] * n)
        zero = prod.space.ground.index(tuple("0" for _ in range(n)))
        one = prod.space.ground.index(tuple("1" for _ in range(n)))
        sub = subspace_inclusion(prod.space, 1 << zero | 1 << one)
        assert is_dense(sub)


def test_zero_not_dense_in_chain3():
    c3 = order_gt(Chain(("0", "1", "2")))
    inc = subspace_inclusion(c3, c3.ground.mask(["0"]))
    assert not is_dense(inc)


def test_image_subspace_and_corestriction():
    c3 = order_gt(Chain(("0", "1", "2")))
    d1 = discrete(ground(["p"]))
    f = GtsMap.from_labels(d1, c3, {"p": "1"})
    img = image_subspace(f)
    assert img.ground.labels == ("1",)
    co = corestrict(f)
    assert co.cod == img
