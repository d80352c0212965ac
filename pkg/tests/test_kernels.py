"""Backend agreement: the compiled kernels must match the pure ones exactly."""

import random

import pytest

from gentop.kernels import _pure

try:
    from gentop.kernels import _speed
except ImportError:
    _speed = None

needs_speed = pytest.mark.skipif(_speed is None, reason="compiled kernels not built")


def _random_family(rng, n, k):
    return [rng.randrange(0, 1 << n) for _ in range(k)]


@needs_speed
def test_union_close_agreement():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(0, 8)
        fam = _random_family(rng, n, rng.randrange(0, 10))
        assert _pure.union_close(fam) == _speed.union_close(fam)


@needs_speed
def test_violation_agreement():
    rng = random.Random(8)
    for _ in range(300):
        n = rng.randrange(1, 6)
        fam = _random_family(rng, n, rng.randrange(1, 12))
        assert _pure.union_closure_violation(fam) == _speed.union_closure_violation(fam)


@needs_speed
def test_table_agreement():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randrange(0, 6)
        fam = sorted(set([0] + _random_family(rng, n, 6)))
        fam = list(_pure.union_close(fam))
        assert _pure.closure_table(fam, n) == _speed.closure_table(fam, n)
        assert _pure.interior_table(fam, n) == _speed.interior_table(fam, n)


@needs_speed
def test_oracle_agreement():
    rng = random.Random(10)
    for _ in range(200):
        n = rng.randrange(1, 5)
        fam = list(_pure.union_close([0] + _random_family(rng, n, 5)))
        lookup = bytearray(1 << n)
        for m in fam:
            lookup[m] = 1
        grid = rng.randrange(2, 6)
        bases = [rng.randrange(1, 1 << grid) for _ in range(rng.randrange(1, 8))]
        x = rng.randrange(n)
        f_mask = rng.randrange(0, 1 << n) & ~(1 << x)
        fixed = [(x, 0)] + [(i, grid - 1) for i in range(n) if f_mask >> i & 1]
        free = [i for i in range(n) if i != x and not f_mask >> i & 1]
        args = (n, bytes(lookup), fixed, free, grid, bases)
        assert _pure.grid_separation_witness(*args) == _speed.grid_separation_witness(*args)


def test_union_close_is_all_subfamily_unions():
    """Oracle: union closure equals the set of unions of all subfamilies."""
    import itertools

    rng = random.Random(11)
    for _ in range(100):
        n = rng.randrange(0, 5)
        fam = list(set(_random_family(rng, n, rng.randrange(0, 6))))
        expected = set()
        for r in range(len(fam) + 1):
            for combo in itertools.combinations(fam, r):
                u = 0
                for m in combo:
                    u |= m
                expected.add(u)
        assert set(_pure.union_close(fam)) == expected


def test_enumerate_union_closed_counts():
    assert len(_pure.enumerate_union_closed(0)) == 1
    assert len(_pure.enumerate_union_closed(1)) == 2
    assert len(_pure.enumerate_union_closed(2)) == 7
