"""Size limits for exhaustive set-family work.

Everything in this package enumerates subsets of a finite carrier, so the
carrier size is capped.  The default of 16 keeps the largest subset sweep at
65536 masks; closure tables are only materialized up to TABLE_CAP points.
"""

import os

DEFAULT_GROUND_CAP = 16

# Full 2^n closure/interior tables are only built up to this many points;
# larger carriers evaluate closures on demand.
TABLE_CAP = 12

# Largest n for which all union-closed families on n points are enumerated.
ENUMERATION_CAP = 3


def ground_cap() -> int:
    """Carrier-size cap; override with the GENTOP_GROUND_CAP env var."""
    raw = os.environ.get("GENTOP_GROUND_CAP")
    if raw is None:
        return DEFAULT_GROUND_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"GENTOP_GROUND_CAP must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"GENTOP_GROUND_CAP must be non-negative, got {value}")
    return value
