"""Benchmark: compiled kernels vs the pure-Python twins.

Run as: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from gentop.kernels import _pure

try:
    from gentop.kernels import _speed
except ImportError:
    _speed = None


def make_family_workload(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randrange(3, 9)
        out.append([rng.randrange(1 << n) for _ in range(rng.randrange(2, 12))])
    return out


def make_table_workload(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randrange(3, 11)
        fam = list(_pure.union_close([rng.randrange(1 << n) for _ in range(6)]))
        out.append((fam, n))
    return out


def make_oracle_workload(seed, count):
    """Negative-leaning separation instances: full function sweeps."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randrange(4, 6)
        fam = list(_pure.union_close([rng.randrange(1 << n) for _ in range(4)]))
        lookup = bytearray(1 << n)
        for m in fam:
            lookup[m] = 1
        grid = (1 << n) + 1
        bases = [(1 << j) - 1 for j in range(1, grid)]
        bases += [((1 << grid) - 1) ^ ((1 << (grid - j)) - 1) for j in range(1, grid)]
        x = 0
        f_mask = 1 << (n - 1)
        fixed = [(x, 0), (n - 1, grid - 1)]
        free = list(range(1, n - 1))
        out.append((n, bytes(lookup), fixed, free, grid, bases))
    return out


def bench(label, fn_pure, fn_speed, workload, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for args in workload:
            fn_pure(*args) if isinstance(args, tuple) else fn_pure(args)
    pure_t = time.perf_counter() - t0
    line = f"{label:<28} pure {pure_t:8.3f}s"
    if fn_speed is not None:
        t0 = time.perf_counter()
        for _ in range(repeat):
            for args in workload:
                fn_speed(*args) if isinstance(args, tuple) else fn_speed(args)
        fast_t = time.perf_counter() - t0
        line += f"   compiled {fast_t:8.3f}s   speedup {pure_t / fast_t:6.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _speed is None:
        print("compiled kernels not built; timing the pure backend only")

    fams = make_family_workload(1, 400)
    tables = make_table_workload(2, 60)
    oracles = make_oracle_workload(3, 30)

    bench(
        "union_close",
        _pure.union_close,
        _speed.union_close if _speed else None,
        fams,
        args.repeat,
    )
    bench(
        "closure_table",
        _pure.closure_table,
        _speed.closure_table if _speed else None,
        tables,
        args.repeat,
    )
    bench(
        "interior_table",
        _pure.interior_table,
        _speed.interior_table if _speed else None,
        tables,
        args.repeat,
    )
    bench(
        "grid_separation_witness",
        _pure.grid_separation_witness,
        _speed.grid_separation_witness if _speed else None,
        oracles,
        args.repeat,
    )


if __name__ == "__main__":
    main()
