"""Kernel selection: compiled extension when built, pure Python otherwise.

Set GENTOP_PURE=1 to force the pure backend (used by the benchmark and the
backend-agreement tests).
"""

import os

if os.environ.get("GENTOP_PURE"):
    from gentop.kernels import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from gentop.kernels import _speed as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from gentop.kernels import _pure as _impl

        BACKEND = "pure"

union_close = _impl.union_close
union_closure_violation = _impl.union_closure_violation
closure_table = _impl.closure_table
interior_table = _impl.interior_table
closure_of = _impl.closure_of
enumerate_union_closed = _impl.enumerate_union_closed
grid_separation_witness = _impl.grid_separation_witness
