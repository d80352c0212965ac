"""JSON formats for spaces, maps, generators, chains, and reports.

Subsets serialize as arrays of labels in carrier order; product carriers use
nested arrays for their tuple labels.  Operator tables key subsets by the
comma-joined labels ("" is the empty set), which restricts those formats to
comma-free string labels.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from gentop.core import GroundSet, Gts, ground
from gentop.errors import StructuralError
from gentop.generators import Chain, Enlargement, Gns, MonotoneMap
from gentop.maps import GtsMap


def label_to_json(label) -> Any:
    if isinstance(label, tuple):
        return [label_to_json(p) for p in label]
    return label


def label_from_json(raw) -> Any:
    if isinstance(raw, list):
        return tuple(label_from_json(p) for p in raw)
    if isinstance(raw, str):
        return raw
    raise StructuralError(f"labels must be strings or arrays, got {raw!r}")


def subset_to_json(gs: GroundSet, mask: int) -> list:
    return [label_to_json(lab) for lab in gs.members(mask)]


def subset_from_json(gs: GroundSet, raw) -> int:
    if not isinstance(raw, list):
        raise StructuralError(f"subset must be an array of labels, got {raw!r}")
    return gs.mask(label_from_json(raw))


def space_to_json(g: Gts) -> dict:
    return {
        "ground": [label_to_json(lab) for lab in g.ground.labels],
        "opens": [subset_to_json(g.ground, m) for m in g.opens],
    }


def space_from_json(data: dict) -> Gts:
    if not isinstance(data, dict) or "ground" not in data or "opens" not in data:
        raise StructuralError("space JSON needs 'ground' and 'opens'")
    gs = ground([label_from_json(lab) for lab in data["ground"]])
    opens = [subset_from_json(gs, sub) for sub in data["opens"]]
    return Gts(gs, tuple(opens))


def map_to_json(f: GtsMap) -> dict:
    simple = all(isinstance(lab, str) for lab in f.dom.ground.labels) and all(
        isinstance(lab, str) for lab in f.cod.ground.labels
    )
    if simple:
        table = {
            f.dom.ground.labels[i]: f.cod.ground.labels[v]
            for i, v in enumerate(f.table)
        }
    else:
        table = [
            [label_to_json(f.dom.ground.labels[i]), label_to_json(f.cod.ground.labels[v])]
            for i, v in enumerate(f.table)
        ]
    return {"dom": space_to_json(f.dom), "cod": space_to_json(f.cod), "table": table}


def map_from_json(data: dict) -> GtsMap:
    for key in ("dom", "cod", "table"):
        if key not in data:
            raise StructuralError(f"map JSON needs {key!r}")
    dom = space_from_json(data["dom"])
    cod = space_from_json(data["cod"])
    raw = data["table"]
    if isinstance(raw, dict):
        assignment = {k: v for k, v in raw.items()}
    elif isinstance(raw, list):
        assignment = {
            label_from_json(pair[0]): label_from_json(pair[1]) for pair in raw
        }
    else:
        raise StructuralError("map table must be an object or an array of pairs")
    return GtsMap.from_labels(dom, cod, assignment)


def _subset_key(gs: GroundSet, mask: int) -> str:
    labels = gs.members(mask)
    for lab in labels:
        if not isinstance(lab, str) or "," in lab:
            raise StructuralError(
                "operator tables need comma-free string labels"
            )
    return ",".join(labels)


def _subset_from_key(gs: GroundSet, key: str) -> int:
    if key == "":
        return 0
    return gs.mask(key.split(","))


def gamma_to_json(gamma: MonotoneMap) -> dict:
    gs = gamma.ground
    return {
        "ground": list(gs.labels),
        "table": {
            _subset_key(gs, a): subset_to_json(gs, gamma(a))
            for a in range(1 << gs.size)
        },
    }


def gamma_from_json(data: dict) -> MonotoneMap:
    gs = ground([label_from_json(lab) for lab in data["ground"]])
    table = [0] * (1 << gs.size)
    seen = set()
    for key, value in data["table"].items():
        mask = _subset_from_key(gs, key)
        seen.add(mask)
        table[mask] = subset_from_json(gs, value)
    if len(seen) != 1 << gs.size:
        raise StructuralError("operator table must cover every subset")
    return MonotoneMap(gs, table)


def enlargement_to_json(k: Enlargement) -> dict:
    gs = k.base.ground
    return {
        "space": space_to_json(k.base),
        "table": {
            _subset_key(gs, m): subset_to_json(gs, km) for m, km in k.table
        },
    }


def enlargement_from_json(data: dict) -> Enlargement:
    base = space_from_json(data["space"])
    gs = base.ground
    entries = {}
    for key, value in data["table"].items():
        entries[_subset_from_key(gs, key)] = subset_from_json(gs, value)
    return Enlargement.from_dict(base, entries)


def chain_from_json(data: dict) -> Chain:
    if "chain" not in data:
        raise StructuralError("chain JSON needs 'chain'")
    return Chain(tuple(label_from_json(lab) for lab in data["chain"]))


def gns_to_json(psi: Gns) -> dict:
    gs = psi.ground
    return {
        "ground": list(gs.labels),
        "nbhd": {
            gs.labels[i]: [subset_to_json(gs, v) for v in fam]
            for i, fam in enumerate(psi.nbhd)
        },
    }


def gns_from_json(data: dict) -> Gns:
    gs = ground([label_from_json(lab) for lab in data["ground"]])
    fams = []
    nbhd = data.get("nbhd", {})
    for lab in gs.labels:
        fam = nbhd.get(lab, [])
        fams.append(tuple(subset_from_json(gs, v) for v in fam))
    return Gns(gs, tuple(fams))


def fraction_to_json(q: Fraction) -> str:
    return str(q)


def fraction_from_json(raw: str) -> Fraction:
    return Fraction(raw)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
