"""Command-line entry point.

Exit codes: 0 success (including a computed "false" verdict), 1 property
failure (a counterexample was found and written), 2 usage or validation
errors.  All outputs are JSON on stdout unless --out is given.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from gentop import jsonio
from gentop.core import GroundSet, Gts, gts_from_base
from gentop.errors import GentopError


def _read_json(path: str):
    import json

    with open(path) as fh:
        return json.load(fh)


def _emit(payload, out: Optional[str]) -> None:
    text = jsonio.dumps(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_space(path: str) -> Gts:
    return jsonio.space_from_json(_read_json(path))


def _parse_subset(g: Gts, text: str) -> int:
    if text == "":
        return 0
    return g.ground.mask(text.split(","))


def _trace_payload(ground_set: GroundSet, op, subset_text: str) -> dict:
    from gentop.lifts import iterate_to_fixpoint

    mask = 0
    if subset_text:
        mask = ground_set.mask(subset_text.split(","))
    trace = iterate_to_fixpoint(op, mask, ground_set)
    return trace.to_json(ground_set)


def cmd_check(args) -> int:
    from gentop.separation import check_axiom

    g = _load_space(args.space)
    verdict = check_axiom(g, args.axiom)
    _emit(verdict.to_json(), args.out)
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    data = _read_json(args.input)
    if kind == "base":
        from gentop.core import ground

        gs = ground([jsonio.label_from_json(lab) for lab in data["ground"]])
        raw = data.get("base", data.get("opens", []))
        space = gts_from_base(gs, [jsonio.subset_from_json(gs, s) for s in raw])
    elif kind == "gamma":
        from gentop.generators import gt_from_gamma

        space = gt_from_gamma(jsonio.gamma_from_json(data))
    elif kind == "kappa":
        from gentop.generators import kappa_gt

        space = kappa_gt(jsonio.enlargement_from_json(data))
    elif kind == "chain":
        from gentop.generators import order_gt

        space = order_gt(jsonio.chain_from_json(data))
    elif kind == "gns":
        from gentop.generators import gt_from_gns

        space = gt_from_gns(jsonio.gns_from_json(data))
    else:
        raise GentopError(f"unknown construct kind {kind!r}")
    _emit(jsonio.space_to_json(space), args.out)
    return 0


def cmd_product(args) -> int:
    from gentop.lifts import product

    factors = [_load_space(p) for p in args.spaces]
    prod = product(factors)
    payload = jsonio.space_to_json(prod.space)
    if args.trace is not None:
        from gentop.core import SubsetOperator, closure
        from gentop.lifts import product_closure_box

        op = SubsetOperator(
            prod.space.ground, func=lambda a: product_closure_box(prod, a)
        )
        payload = {"space": payload, "trace": _trace_payload(prod.space.ground, op, args.trace)}
    _emit(payload, args.out)
    return 0


def cmd_sum(args) -> int:
    from gentop.core import SubsetOperator
    from gentop.lifts import sum_closure_componentwise, sum_gts

    parts = [_load_space(p) for p in args.spaces]
    s = sum_gts(parts)
    payload = jsonio.space_to_json(s.space)
    if args.trace is not None:
        op = SubsetOperator(
            s.space.ground, func=lambda a: sum_closure_componentwise(s, a)
        )
        payload = {"space": payload, "trace": _trace_payload(s.space.ground, op, args.trace)}
    _emit(payload, args.out)
    return 0


def cmd_subspace(args) -> int:
    from gentop.core import SubsetOperator, closure
    from gentop.lifts import subspace

    g = _load_space(args.space)
    x0 = _parse_subset(g, args.subset)
    sub = subspace(g, x0)
    payload = jsonio.space_to_json(sub)
    if args.trace is not None:
        from gentop.lifts import subspace_closure

        co = subspace_closure(g, x0)
        op = SubsetOperator(sub.ground, func=co)
        payload = {"space": payload, "trace": _trace_payload(sub.ground, op, args.trace)}
    _emit(payload, args.out)
    return 0


def cmd_quotient(args) -> int:
    from gentop.core import SubsetOperator, closure
    from gentop.lifts import SinkLeg, quotient_by_labels

    g = _load_space(args.space)
    table = _read_json(args.table)
    if not isinstance(table, dict):
        raise GentopError("quotient table must be a JSON object label -> class")
    space, qmap = quotient_by_labels(g, table)
    payload = jsonio.space_to_json(space)
    if args.trace is not None:
        leg = SinkLeg(g, qmap.table)
        op = SubsetOperator(
            space.ground, func=lambda a: a | leg.image(closure(g, leg.preimage(a)))
        )
        payload = {"space": payload, "trace": _trace_payload(space.ground, op, args.trace)}
    _emit(payload, args.out)
    return 0


def _lattice(args, which: str) -> int:
    from gentop.core import SubsetOperator, closure
    from gentop.lifts import lattice_join, lattice_meet

    spaces = [_load_space(p) for p in args.spaces]
    if not spaces:
        raise GentopError("at least one space required")
    carrier = spaces[0].ground
    out_space = (lattice_join if which == "join" else lattice_meet)(carrier, spaces)
    payload = jsonio.space_to_json(out_space)
    if args.trace is not None:
        if which == "join":
            full = carrier.full

            def gamma(a: int) -> int:
                acc = full
                for g in spaces:
                    acc &= closure(g, a)
                return acc

        else:

            def gamma(a: int) -> int:
                acc = a
                for g in spaces:
                    acc |= closure(g, a)
                return acc

        op = SubsetOperator(carrier, func=gamma)
        payload = {"space": payload, "trace": _trace_payload(carrier, op, args.trace)}
    _emit(payload, args.out)
    return 0


def cmd_join(args) -> int:
    return _lattice(args, "join")


def cmd_meet(args) -> int:
    return _lattice(args, "meet")


def cmd_csaszar(args) -> int:
    from gentop.lifts import csaszar_coincidence, csaszar_product

    factors = [_load_space(p) for p in args.spaces]
    space = csaszar_product(factors)
    payload = {
        "space": jsonio.space_to_json(space),
        "coincides_with_product": csaszar_coincidence(factors),
    }
    _emit(payload, args.out)
    return 0


def cmd_embed(args) -> int:
    from gentop.embed import tychonoff_embed

    g = _load_space(args.space)
    cert = tychonoff_embed(g)
    payload = cert.to_json()
    if args.reduced:
        payload["reduced"] = {
            "factors": len(cert.reduced_indices),
            "dense": cert.verdicts["dense_in_reduced_power"].to_json(),
        }
    _emit(payload, args.out)
    return 0


def cmd_compact(args) -> int:
    from gentop.covers import KappaBudget, is_kappa_compact

    g = _load_space(args.space)
    verdict = is_kappa_compact(g, KappaBudget.parse(args.budget))
    _emit(verdict.to_json(), args.out)
    return 0


def _render_report_table(report) -> str:
    rows = [
        ("property", report.property_id),
        ("mode", report.mode),
        ("trials", str(report.trials)),
        ("passed", str(report.passed)),
        ("outcome", "ok" if report.ok else "counterexample found"),
        ("wall time", f"{report.wall_time_s:.3f}s"),
    ]
    if report.exhausted:
        rows.append(("exhausted", "; ".join(f"{k}={v}" for k, v in report.exhausted.items())))
    for note in report.notes:
        rows.append(("note", note))
    if report.counterexample is not None:
        import json

        rows.append(("counterexample", json.dumps(report.counterexample, sort_keys=True)))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _emit_report(report, args) -> None:
    if getattr(args, "table", False):
        text = _render_report_table(report)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(report.to_json(), args.out)


def cmd_verify(args) -> int:
    from gentop.harness import check_property

    report = check_property(
        args.property, seed=args.seed, trials=args.trials, exhaustive=args.exhaustive
    )
    _emit_report(report, args)
    return 0 if report.ok else 1


def cmd_hunt(args) -> int:
    from gentop.harness import search_counterexample

    report = search_counterexample(args.predicate, max_ground=args.max_ground)
    _emit_report(report, args)
    return 0


def cmd_enumerate(args) -> int:
    from gentop.harness import enumerate_gts

    payload = [jsonio.space_to_json(g) for g in enumerate_gts(args.size)]
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gentop",
        description="Workbench for finite generalized topological spaces",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the JSON result to this path")

    p = sub.add_parser("check", help="decide a separation axiom")
    p.add_argument("--axiom", required=True)
    p.add_argument("space")
    add_common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("construct", help="build a space from a generator file")
    p.add_argument("--from", dest="kind", required=True,
                   choices=["base", "gamma", "kappa", "chain", "gns"])
    p.add_argument("input")
    add_common(p)
    p.set_defaults(fn=cmd_construct)

    for verb, fn, nargs in [
        ("product", cmd_product, "+"),
        ("sum", cmd_sum, "+"),
        ("join", cmd_join, "+"),
        ("meet", cmd_meet, "+"),
        ("csaszar", cmd_csaszar, "*"),
    ]:
        p = sub.add_parser(verb, help=f"{verb} of spaces")
        p.add_argument("spaces", nargs=nargs)
        p.add_argument("--trace", help="subset (comma-joined labels) to iterate")
        add_common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("subspace", help="trace of a space on a subset")
    p.add_argument("space")
    p.add_argument("subset", help="comma-joined labels ('' for the empty set)")
    p.add_argument("--trace")
    add_common(p)
    p.set_defaults(fn=cmd_subspace)

    p = sub.add_parser("quotient", help="quotient by a label assignment file")
    p.add_argument("space")
    p.add_argument("table", help="JSON object mapping labels to class labels")
    p.add_argument("--trace")
    add_common(p)
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("embed", help="power-embedding certificate")
    p.add_argument("space")
    p.add_argument("--reduced", action="store_true")
    add_common(p)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("compact", help="bounded-cover compactness verdict")
    p.add_argument("space")
    p.add_argument("--budget", default="aleph0")
    add_common(p)
    p.set_defaults(fn=cmd_compact)

    p = sub.add_parser("verify", help="run a registered property check")
    p.add_argument("property")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--exhaustive", type=int, default=None)
    p.add_argument("--table", action="store_true", help="human-readable output")
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("hunt", help="search for a counterexample")
    p.add_argument("predicate")
    p.add_argument("--max-ground", type=int, default=2)
    p.add_argument("--table", action="store_true", help="human-readable output")
    add_common(p)
    p.set_defaults(fn=cmd_hunt)

    p = sub.add_parser("enumerate", help="all spaces on a small carrier")
    p.add_argument("size", type=int)
    add_common(p)
    p.set_defaults(fn=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except GentopError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
