"""Workbench for finite generalized topological spaces.

Spaces are finite carriers with union-closed open families; the package
builds them from bases, generators, enlargements, neighborhood systems, and
orders, computes weak/strong structures and their derived constructions,
decides separation axioms up to complete regularity, constructs verified
power embeddings, and fuzzes the underlying theory on small instances.
"""

from gentop.core import (
    ClosureOp,
    GroundSet,
    Gts,
    closure,
    closure_op_from_gts,
    discrete,
    ground,
    gts_from_base,
    gts_from_closure_op,
    indiscrete,
    interior,
    union_close,
)
from gentop.maps import GtsMap, is_continuous, is_dense, is_homeomorphism, is_open_map
from gentop.report import PropertyReport, Verdict

__version__ = "0.1.0"

__all__ = [
    "ClosureOp",
    "GroundSet",
    "Gts",
    "GtsMap",
    "PropertyReport",
    "Verdict",
    "closure",
    "closure_op_from_gts",
    "discrete",
    "ground",
    "gts_from_base",
    "gts_from_closure_op",
    "indiscrete",
    "interior",
    "is_continuous",
    "is_dense",
    "is_homeomorphism",
    "is_open_map",
    "union_close",
]
