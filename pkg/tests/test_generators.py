"""Generator mechanisms: monotone operators, enlargements, neighborhood
systems, order spaces, and the sum/subspace interaction checks."""

import random

import pytest

from gentop import kernels
from gentop.core import Gts, all_masks, ground, gts_from_base, trace_space
from gentop.errors import PreconditionError, StructuralError, ValidationError
from gentop.generators import (
    Chain,
    Enlargement,
    Gns,
    MonotoneMap,
    check_order_map,
    check_subspace_enlargement_inclusion,
    check_subspace_generator_inclusion,
    check_sum_enlargement_criterion,
    check_sum_generator_identity,
    enlargement_identity,
    enlargement_subspace,
    enlargement_sum,
    gamma_constant,
    gamma_identity,
    gamma_step,
    gamma_subspace,
    gamma_sum,
    gns_continuous,
    gns_from_gt,
    gt_from_gamma,
    gt_from_gns,
    interior_as_gamma,
    is_convex_mask,
    kappa_gt,
    order_gt,
    stack_hull,
)
from gentop.lifts import sum_gts
from gentop.maps import GtsMap, all_maps, is_continuous
from gentop.separation import check_axiom


def g2():
    return ground(["a", "b"])


def test_monotone_map_validation():
    with pytest.raises(ValidationError):
        MonotoneMap(g2(), [3, 0, 0, 0])  # gamma(empty) above gamma({a})


def test_gamma_examples():
    gs = g2()
    assert gt_from_gamma(gamma_identity(gs)).is_discrete()
    assert gt_from_gamma(gamma_constant(gs, 0)).opens == (0,)
    step = gamma_step(gs, gs.mask(["a"]))
    mu = gt_from_gamma(step)
    assert mu.opens == (0, gs.mask(["b"]), gs.full)


def test_interior_as_gamma_roundtrip_exhaustive():
    for n in range(4):
        gs = ground([chr(97 + i) for i in range(n)])
        for fam in kernels.enumerate_union_closed(n):
            g = Gts(gs, fam)
            assert gt_from_gamma(interior_as_gamma(g)) == g


def test_gamma_sum_identity_and_empty_part():
    ga = gamma_identity(ground(["a"]))
    gb = gamma_identity(ground(["b"]))
    rep = check_sum_generator_identity([ga, gb])
    assert rep.ok
    assert gt_from_gamma(gamma_sum([ga, gb])).is_discrete()
    ge = gamma_identity(ground([]))
    combined = gamma_sum([ge, ga])
    assert gt_from_gamma(combined) == gt_from_gamma(ga)


def test_gamma_subspace_examples():
    gs = g2()
    ident = gamma_identity(gs)
    rep = check_subspace_generator_inclusion(ident, gs.mask(["a"]))
    assert rep.ok and "equality" in rep.notes
    rep = check_subspace_generator_inclusion(ident, gs.full)
    assert rep.ok and "equality" in rep.notes
    step = gamma_step(gs, gs.mask(["a"]))
    restricted = gt_from_gamma(gamma_subspace(step, gs.mask(["a"])))
    assert restricted.opens == (0,)
    traced = trace_space(gt_from_gamma(step), gs.mask(["a"]))
    assert traced.is_discrete()
    rep = check_subspace_generator_inclusion(step, gs.mask(["a"]))
    assert rep.ok and "strict inclusion" in rep.notes


def test_enlargement_validation():
    g = Gts(g2(), (0, 1, 3))
    with pytest.raises(ValidationError):
        Enlargement.from_dict(g, {0: 0, 1: 0, 3: 3})  # k({a}) misses {a}
    with pytest.raises(StructuralError):
        Enlargement.from_dict(g, {0: 0, 1: 1})  # not defined on all opens


def test_kappa_examples():
    g = Gts(g2(), (0, 1, 3))
    assert kappa_gt(enlargement_identity(g)) == g
    # Enlargement filling everything: only the carrier can satisfy it.
    k_full = Enlargement.from_dict(g, {0: 0, 1: 3, 3: 3})
    assert kappa_gt(k_full).opens == (0, 3)
    nonstrong = Gts(g2(), (0, 1))
    k2 = Enlargement.from_dict(nonstrong, {0: 0, 1: 3})
    assert kappa_gt(k2).opens == (0,)


def test_kappa_coarser_always():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randrange(0, 4)
        gs = ground([chr(97 + i) for i in range(n)])
        g = gts_from_base(gs, [rng.randrange(1 << n) for _ in range(3)])
        entries = {m: m | rng.randrange(1 << n) if n else m for m in g.opens}
        k = Enlargement.from_dict(g, entries)
        assert set(kappa_gt(k).opens) <= set(g.opens)


def test_enlargement_sum_examples():
    pa = Gts(ground(["a"]), (0, 1))
    pb = Gts(ground(["b"]), (0, 1))
    inflate_a = Enlargement.from_dict(pa, {0: 1, 1: 1})
    inflate_b = Enlargement.from_dict(pb, {0: 1, 1: 1})
    combined = kappa_gt(enlargement_sum([inflate_a, inflate_b]))
    assert combined.opens == (0, 3)
    summed = sum_gts([kappa_gt(inflate_a), kappa_gt(inflate_b)]).space
    assert summed.is_discrete()
    rep = check_sum_enlargement_criterion([inflate_a, inflate_b])
    assert rep.ok and "strict inclusion" in rep.notes
    tight_a = Enlargement.from_dict(pa, {0: 0, 1: 1})
    tight_b = Enlargement.from_dict(pb, {0: 0, 1: 1})
    rep = check_sum_enlargement_criterion([tight_a, tight_b])
    assert rep.ok and "equality" in rep.notes
    rep = check_sum_enlargement_criterion([inflate_a])
    assert rep.ok and "equality" in rep.notes


def test_enlargement_subspace_example():
    gs = g2()
    g = Gts(gs, (0, 1, 3))
    k = Enlargement.from_dict(g, {0: 0, 1: 3, 3: 3})
    # Oracle (by unfolding): both sides equal {
    #   empty, {a}} on the carrier {a}.
    traced = trace_space(kappa_gt(k), 1)
    restricted = kappa_gt(enlargement_subspace(k, 1))
    assert traced.opens == (0, 1)
    assert restricted.opens == (0, 1)
    rep = check_subspace_enlargement_inclusion(k, 1)
    assert rep.ok
    assert check_subspace_enlargement_inclusion(enlargement_identity(g), 1).ok


def test_enlargement_subspace_hypotheses():
    gs = g2()
    g = Gts(gs, (0, 1, 3))
    k = Enlargement.from_dict(g, {0: 0, 1: 3, 3: 3})
    with pytest.raises(PreconditionError):
        enlargement_subspace(k, 2)  # {b} is not open
    k_bad = Enlargement.from_dict(g, {0: 3, 1: 1, 3: 3})  # not monotone
    with pytest.raises(PreconditionError):
        enlargement_subspace(k_bad, 1)
    g_no_meet = Gts(ground(["a", "b", "c"]), (0, 0b011, 0b110, 0b111))
    k3 = enlargement_identity(g_no_meet)
    with pytest.raises(PreconditionError):
        enlargement_subspace(k3, 0b011)


def test_stack_and_gns_examples():
    g = Gts(g2(), (0, 1, 3))
    psi = gns_from_gt(g)
    assert gt_from_gns(psi) == g
    empty_psi = Gns(g2(), ((), ()))
    assert gt_from_gns(empty_psi).opens == (0,)
    assert gt_from_gns(psi.stacked()) == gt_from_gns(psi)
    hull = stack_hull(g2(), [1])
    assert set(hull) == {1, 3}


def test_gns_validation():
    with pytest.raises(ValidationError):
        Gns(g2(), ((2,), ()))  # neighborhood of a misses a


def test_gns_continuity_implies_space_continuity():
    rng = random.Random(14)
    for _ in range(300):
        n = rng.randrange(1, 4)
        gs = ground([chr(97 + i) for i in range(n)])
        fams1, fams2 = [], []
        for i in range(n):
            around = [v for v in all_masks(n) if v >> i & 1]
            fams1.append(tuple(v for v in around if rng.random() < 0.5))
            fams2.append(tuple(v for v in around if rng.random() < 0.5))
        psi, psi2 = Gns(gs, tuple(fams1)), Gns(gs, tuple(fams2))
        func = tuple(rng.randrange(n) for _ in range(n))
        if gns_continuous(func, psi, psi2):
            f = GtsMap(gt_from_gns(psi), gt_from_gns(psi2), func)
            assert is_continuous(f)


def test_order_gt_examples():
    assert order_gt(Chain(("0",))).opens == (0,)
    assert not order_gt(Chain(("0",))).is_strong()
    assert order_gt(Chain(())).is_strong()
    assert order_gt(Chain(("0", "1"))).is_discrete()
    c3 = order_gt(Chain(("0", "1", "2")))
    assert len(c3.opens) == 7
    closed = set(c3.closed_sets())
    convex = {m for m in all_masks(3) if is_convex_mask(m)}
    assert closed == convex
    assert len(convex) == 7


def test_order_gt_t4_sizes_0_to_6():
    for n in range(7):
        g = order_gt(Chain(tuple(str(i) for i in range(n))))
        assert check_axiom(g, "T4").holds


def test_order_map_characterization():
    c1 = order_gt(Chain(("0",)))
    c3 = order_gt(Chain(("0", "1", "2")))
    for f in all_maps(c1, c3):
        assert not is_continuous(f)
        assert check_order_map(f).ok
    # Non-strictly monotone map is continuous.
    f = GtsMap.from_labels(c3, c3, {"0": "0", "1": "0", "2": "2"})
    assert is_continuous(f) and check_order_map(f).ok
    # Swapping the top two points is neither monotone nor continuous.
    swap = GtsMap.from_labels(c3, c3, {"0": "0", "1": "2", "2": "1"})
    assert not is_continuous(swap)
    assert check_order_map(swap).ok
