"""Command-line front end.

Exit codes: 0 success or full match, 1 mismatch (or nothing to report),
2 usage error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .catalog import affine_table, affine_table_markdown, dump_json, reproduce_tables
from .group_core import (
    GroupError, SpecSyntaxError, build, center, index2_subgroups, involution_subgroups,
    is_cyclic, order_profile, parse_spec,
)
from .metric_engine import DEFAULT_BUDGET, find_interval_weight, format_weight
from .partitions import (
    PartitionError, enumerate_unitary_symmetric, format_partition, k_of, parse_partition,
)
from .theorems import Conclusion, biinvariance_class, construct_lee, decide_lee, few_weights_interval, no_interval_criterion

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("LEE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SpecSyntaxError(f"LEE_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _group(text: str):
    spec = parse_spec(text)
    G = build(spec)
    return spec, G, G.name or text


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_group_info(args) -> int:
    _, G, name = _group(args.spec)
    g2, g24 = involution_subgroups(G)
    Z = sorted(center(G))
    info = {
        "group": name,
        "order": G.n,
        "k": k_of(G),
        "abelian": G.is_abelian,
        "cyclic": is_cyclic(G),
        "order_profile": {str(k): v for k, v in order_profile(G).items()},
        "center": [G.labels[g] for g in Z],
        "G2_order": len(g2),
        "G24_order": len(g24),
        "index2_subgroups": len(index2_subgroups(G)),
        "lee_partition_conjugation_closed": biinvariance_class(G),
    }
    if args.format == "json":
        _emit(dump_json(info))
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in info.items()))
    return EXIT_OK


def cmd_lee_decide(args) -> int:
    spec, G, name = _group(args.spec)
    v = decide_lee(spec, _budget(args), use_rules=not args.no_rules)
    doc = v.to_json(name, k_of(G))
    if args.format == "json":
        _emit(dump_json(doc))
    else:
        _emit(f"{name}: {v.outcome} ({v.reason}), k={doc['k']}, nodes={v.nodes}\n")
        if v.witness is not None:
            _emit(format_weight(G, v.witness))
    if args.weight_out and v.witness is not None:
        Path(args.weight_out).write_text(format_weight(G, v.witness), encoding="utf-8")
    return EXIT_BUDGET if v.outcome == "Undecided" else EXIT_OK


def cmd_lee_construct(args) -> int:
    spec, G, name = _group(args.spec)
    found = construct_lee(spec)
    if found is None:
        print(f"{name}: no construction applies", file=sys.stderr)
        return EXIT_MISMATCH
    w, reason = found
    _emit(f"# {name} via {reason}, max weight {w.max}\n" + format_weight(G, w))
    return EXIT_OK


def cmd_partition_enumerate(args) -> int:
    _, G, name = _group(args.spec)
    count = 0
    for P in enumerate_unitary_symmetric(G, cap=args.cap):
        count += 1
        if not args.count:
            sys.stdout.write(f"# partition {count}, s={P.s}\n" + format_partition(G, P) + "\n")
    if args.count:
        print(count)
    return EXIT_OK


def cmd_interval_decide(args) -> int:
    _, G, name = _group(args.spec)
    P = parse_partition(G, Path(args.partition).read_text(encoding="utf-8"))
    rules = [no_interval_criterion(G, P), few_weights_interval(G, P)]
    res = find_interval_weight(G, P, _budget(args))
    outcome = {"found": "Yes", "none": "No", "budget": "Undecided"}[res.status]
    doc = {"group": name, "s": P.s, "outcome": outcome, "reason": "exhaustive-search"}
    if res.weight is not None:
        doc["witness"] = list(res.weight.values)
    doc.update(nodes=res.nodes, millis=round(res.millis, 3),
               rules=[r.to_json(G) for r in rules if r.conclusion is not Conclusion.NA])
    for r in rules:
        if r.conclusion is Conclusion.NON_INTERVAL and outcome == "Yes":
            raise AssertionError("criterion and search disagree")
    _emit(dump_json(doc))
    return EXIT_BUDGET if outcome == "Undecided" else EXIT_OK


def cmd_tables_reproduce(args) -> int:
    report = reproduce_tables(args.min, args.max, _budget(args), jobs=args.jobs)
    text = {"json": report.to_json, "md": report.to_markdown, "txt": report.to_text}[args.format]()
    _emit(text, args.output)
    if report.summary["undecided"]:
        return EXIT_BUDGET
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_affine_table(args) -> int:
    table = affine_table(args.max_order, budget=_budget(args))
    _emit(dump_json(table) if args.format == "json" else affine_table_markdown(table))
    return EXIT_OK if table["summary"]["matches"] == table["summary"]["rows"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leemetrics", description="Interval and Lee metrics on finite groups.")
    sub = p.add_subparsers(dest="cmd", required=True)

    group = sub.add_parser("group").add_subparsers(dest="sub", required=True)
    gi = group.add_parser("info", help="structural summary of a group")
    gi.add_argument("spec")
    gi.add_argument("--format", choices=["json", "txt"], default="txt")
    gi.set_defaults(func=cmd_group_info)

    lee = sub.add_parser("lee").add_subparsers(dest="sub", required=True)
    ld = lee.add_parser("decide", help="decide whether a Lee metric exists")
    ld.add_argument("spec")
    ld.add_argument("--budget", type=int)
    ld.add_argument("--no-rules", action="store_true", help="skip the theorems and search directly")
    ld.add_argument("--format", choices=["json", "txt"], default="json")
    ld.add_argument("--weight-out", help="write the witness weight to this file")
    ld.set_defaults(func=cmd_lee_decide)
    lc = lee.add_parser("construct", help="constructive Lee weight, no search")
    lc.add_argument("spec")
    lc.set_defaults(func=cmd_lee_construct)

    part = sub.add_parser("partition").add_subparsers(dest="sub", required=True)
    pe = part.add_parser("enumerate", help="all unitary symmetric partitions")
    pe.add_argument("spec")
    pe.add_argument("--cap", type=int, default=4_213_597)
    pe.add_argument("--count", action="store_true", help="print only the number of partitions")
    pe.set_defaults(func=cmd_partition_enumerate)

    interval = sub.add_parser("interval").add_subparsers(dest="sub", required=True)
    idc = interval.add_parser("decide", help="does a partition admit an interval weight")
    idc.add_argument("spec")
    idc.add_argument("--partition", required=True)
    idc.add_argument("--budget", type=int)
    idc.set_defaults(func=cmd_interval_decide)

    tables = sub.add_parser("tables").add_subparsers(dest="sub", required=True)
    tr = tables.add_parser("reproduce", help="recompute the verdict tables for small orders")
    tr.add_argument("--min", type=int, default=1)
    tr.add_argument("--max", type=int, default=31)
    tr.add_argument("--format", choices=["json", "md", "txt"], default="txt")
    tr.add_argument("--budget", type=int)
    tr.add_argument("--jobs", type=int, default=1)
    tr.add_argument("--output")
    tr.set_defaults(func=cmd_tables_reproduce)

    aff = sub.add_parser("affine").add_subparsers(dest="sub", required=True)
    at = aff.add_parser("table", help="affine subgroups F_q ⋊ H")
    at.add_argument("--max-order", type=int, default=343)
    at.add_argument("--format", choices=["json", "md"], default="md")
    at.add_argument("--budget", type=int)
    at.set_defaults(func=cmd_affine_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecSyntaxError, GroupError, PartitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
