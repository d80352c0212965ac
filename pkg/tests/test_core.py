"""Carrier, family, space, and closure-operator behavior."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentop import kernels
from gentop.core import (
    ClosureOp,
    Gts,
    all_masks,
    closure,
    closure_op_from_gts,
    discrete,
    expand_mask,
    ground,
    gts_from_base,
    gts_from_closure_op,
    indiscrete,
    interior,
    restrict_mask,
    trace_space,
    union_close,
)
from gentop.errors import ResourceError, StructuralError, ValidationError


def g2():
    return ground(["a", "b"])


def g3():
    return ground(["0", "1", "2"])


def chain3():
    """Order space on a three-chain: rays from below and above, union-closed."""
    gs = g3()
    rays = [0b000, 0b001, 0b011, 0b110, 0b100]
    return gts_from_base(gs, rays)


def test_ground_validation():
    with pytest.raises(StructuralError):
        ground(["a", "a"])
    assert ground([]).size == 0
    assert ground([]).full == 0


def test_ground_cap(monkeypatch):
    monkeypatch.setenv("GENTOP_GROUND_CAP", "3")
    with pytest.raises(ResourceError):
        ground(["a", "b", "c", "d"])
    ground(["a", "b", "c"])


def test_union_close_pairs():
    gs = g2()
    fam = union_close(gs, [gs.mask(["a"]), gs.mask(["b"])])
    assert fam == (0, 1, 2, 3)
    assert union_close(gs, []) == (0,)


def test_union_close_chain_base():
    # Brute-force oracle: all subfamily unions.
    gs = g3()
    base = [0b000, 0b001, 0b011, 0b100, 0b110]
    expected = set()
    for r in range(len(base) + 1):
        for combo in itertools.combinations(base, r):
            u = 0
            for m in combo:
                u |= m
            expected.add(u)
    got = union_close(gs, base)
    assert set(got) == expected
    assert got == (0b000, 0b001, 0b011, 0b100, 0b101, 0b110, 0b111)


def test_union_close_idempotent_extensive():
    gs = g3()
    fam = union_close(gs, [0b101, 0b010])
    assert union_close(gs, fam) == fam
    assert {0b101, 0b010} <= set(fam)
    assert 0 in fam


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=15), max_size=8))
def test_union_close_properties(masks):
    fam = kernels.union_close(masks)
    assert fam[0] == 0
    s = set(fam)
    assert set(masks) <= s
    for a in fam:
        for b in fam:
            assert (a | b) in s


def test_gts_from_base_examples():
    gs = g2()
    assert gts_from_base(gs, [gs.mask(["a"])]).opens == (0, 1)
    one = ground(["a"])
    assert gts_from_base(one, []).opens == (0,)
    assert not gts_from_base(one, []).is_strong()
    assert len(chain3().opens) == 7


def test_gts_validation_reports_missing_union():
    gs = g3()
    with pytest.raises(ValidationError) as exc:
        Gts(gs, (0, 0b001, 0b010))
    assert "union-closed" in str(exc.value)
    assert exc.value.witness == (0b001, 0b010)
    with pytest.raises(ValidationError):
        Gts(gs, (0b001,))  # no empty set


def test_closure_examples():
    gs = g2()
    d = discrete(gs)
    for a in all_masks(2):
        assert closure(d, a) == a
    ind = indiscrete(gs)
    for a in all_masks(2):
        assert closure(ind, a) == gs.full
    # Middle point of the chain is closed (an order interval).
    c = chain3()
    assert closure(c, 0b010) == 0b010
    # Oracle: intersect closed supersets directly.
    closed = [c.full ^ m for m in c.opens]
    for a in all_masks(3):
        expect = c.full
        for f in closed:
            if f & a == a:
                expect &= f
        assert closure(c, a) == expect


def test_interior_examples():
    gs = g2()
    d = discrete(gs)
    for a in all_masks(2):
        assert interior(d, a) == a
    g = Gts(gs, (0, gs.mask(["a"])))
    assert interior(g, gs.mask(["b"])) == 0
    assert interior(chain3(), 0b011) == 0b011


def test_interior_closure_duality_ground_le_4():
    for n in range(5):
        gs = ground([str(i) for i in range(n)])
        for fam in kernels.enumerate_union_closed(n):
            g = Gts(gs, fam)
            for a in all_masks(n):
                assert interior(g, a) == g.full ^ closure(g, g.full ^ a)


def test_closure_op_validation_witnesses():
    gs = g2()
    with pytest.raises(ValidationError) as exc:
        ClosureOp.from_table(gs, [0, 1, 2, 0])  # not increasing at full
    assert exc.value.witness == (3,)
    with pytest.raises(ValidationError) as exc:
        ClosureOp.from_table(gs, [3, 1, 2, 3])  # c(empty)=X above c({a})={a}
    assert "monotone" in str(exc.value)
    # Increasing and monotone, but {a} closes to {a,b} which closes further.
    with pytest.raises(ValidationError) as exc:
        ClosureOp.from_table(ground(["a", "b", "c"]),
                             [0, 3, 2, 7, 4, 7, 6, 7])
    assert "idempotent" in str(exc.value)


def test_conversion_examples():
    gs = g2()
    ident = ClosureOp.from_table(gs, [0, 1, 2, 3])
    assert gts_from_closure_op(ident) == discrete(gs)
    const = ClosureOp.from_table(gs, [3, 3, 3, 3])
    assert gts_from_closure_op(const) == indiscrete(gs)


def test_roundtrip_exhaustive_3():
    gs = g3()
    for fam in kernels.enumerate_union_closed(3):
        g = Gts(gs, fam)
        assert gts_from_closure_op(closure_op_from_gts(g)) == g
    # Converse direction: operator -> space -> operator.
    for fam in kernels.enumerate_union_closed(3):
        g = Gts(gs, fam)
        op = closure_op_from_gts(g)
        assert closure_op_from_gts(gts_from_closure_op(op)) == op


def test_closure_monotone_increasing_idempotent():
    for fam in kernels.enumerate_union_closed(3):
        g = Gts(g3(), fam)
        for a in all_masks(3):
            ca = closure(g, a)
            assert a & ~ca == 0
            assert closure(g, ca) == ca
            for b in all_masks(3):
                if a & ~b == 0:
                    assert ca & ~closure(g, b) == 0


def test_restrict_expand_roundtrip():
    x0 = 0b1011
    for sub in all_masks(3):
        assert restrict_mask(expand_mask(sub, x0), x0) == sub


def test_trace_space():
    c = chain3()
    sub = trace_space(c, 0b101)
    assert sub.ground.labels == ("0", "2")
    assert sub.is_discrete()
