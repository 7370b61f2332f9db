"""Command-line interface.

Subcommands:

* ``analyze``   -- rigidity report for a framework file (JSON on stdout).
* ``matrix``    -- dump the rigidity matrix (CSV or JSON).
* ``sparsity``  -- nested-count analysis of a colored multigraph, or of the
                   primitive graph of a framework with ``--from-framework``.
* ``pebble``    -- plain single-count pebble game on a graph file.

Exit codes: 0 for success (and positive verdicts), 2 for input errors,
3 for negative verdicts (flexible framework, non-sparse graph).
Reports are deterministic: identical input files produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BodyCadError, InputError
from .model import Framework, framework_from_data, primitive_graph_of
from .rigidity import RigidityMatrix, RigidityReport, analyze, assemble
from .sparsity import (
    BODY_CAD_COUNTS,
    MultiGraph,
    NestedCounts,
    SparsityCounts,
    graph_from_data,
    multigraph_of,
    nested_analysis,
    pebble_components,
    pebble_decision,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NEGATIVE = 3


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            # parse_float sees the raw decimal text, so 0.1 arrives exact
            return json.load(fh, parse_float=Fraction)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_framework(path: str) -> Framework:
    try:
        return framework_from_data(_load_json(path))
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_graph(path: str) -> MultiGraph:
    try:
        return graph_from_data(_load_json(path))
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _num(x: object) -> object:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _emit(data: object) -> None:
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _report_data(report: RigidityReport) -> dict[str, object]:
    data: dict[str, object] = {
        "n": report.n,
        "rows": report.row_count,
        "rank": report.rank,
        "dof": report.dof,
        "isRigid": report.is_rigid,
        "isMinimallyRigid": report.is_minimally_rigid,
        "isOverconstrained": report.is_overconstrained,
        "redundantRows": [
            {
                "row": r.row_index,
                "constraint": r.constraint_index,
                "ordinal": r.ordinal,
                "kind": r.kind,
                "class": r.cls,
                "detectedBy": r.detected_by,
            }
            for r in report.redundant
        ],
        "flexBasis": [[_num(x) for x in vec] for vec in report.flex_basis],
        "trivialKernelCheck": report.trivial_check,
        "components": [
            {
                "bodies": list(c.body_ids),
                "rank": c.rank,
                "dof": c.dof,
                "isRigid": c.is_rigid,
            }
            for c in report.components
        ],
        "mode": report.mode,
    }
    if report.audit is not None:
        data["audit"] = {
            "trials": report.audit.trials,
            "seed": report.audit.seed,
            "baseRank": report.audit.base_rank,
            "ranks": list(report.audit.ranks),
            "stable": report.audit.stable,
        }
    return data


def _cmd_analyze(args: argparse.Namespace) -> int:
    fw = _load_framework(args.file)
    report = analyze(
        fw,
        mode=args.mode,
        tolerance=args.tolerance,
        audit_trials=args.perturb_audit,
        audit_seed=args.seed,
    )
    _emit(_report_data(report))
    verdict = "rigid" if report.is_rigid else "flexible"
    if report.is_minimally_rigid:
        verdict = "minimally rigid"
    print(
        f"{args.file}: {report.n} bodies, {report.row_count} rows, "
        f"rank {report.rank}, dof {report.dof} -> {verdict}"
        + (f" ({len(report.redundant)} redundant rows)" if report.redundant else ""),
        file=sys.stderr,
    )
    return EXIT_OK if report.is_rigid else EXIT_NEGATIVE


def _matrix_rows(matrix: RigidityMatrix) -> list[dict[str, object]]:
    dense = matrix.dense()
    out = []
    for row, values in zip(matrix.rows, dense):
        out.append(
            {
                "constraint": row.constraint_index,
                "ordinal": row.ordinal,
                "kind": row.kind,
                "class": row.cls,
                "i": row.i,
                "j": row.j,
                "values": [_num(x) for x in values],
            }
        )
    return out


def _cmd_matrix(args: argparse.Namespace) -> int:
    fw = _load_framework(args.file)
    matrix = assemble(fw)
    if args.format == "json":
        _emit(
            {
                "bodies": list(matrix.body_ids),
                "columns": matrix.column_labels(),
                "rows": _matrix_rows(matrix),
            }
        )
        return EXIT_OK
    header = ["constraint", "ordinal", "kind", "class", "i", "j"] + matrix.column_labels()
    lines = [",".join(header)]
    for entry in _matrix_rows(matrix):
        cells = [
            str(entry["constraint"]),
            str(entry["ordinal"]),
            str(entry["kind"]),
            str(entry["class"]),
            str(entry["i"]),
            str(entry["j"]),
        ] + [str(v) for v in entry["values"]]
        lines.append(",".join(cells))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _parse_counts(text: str) -> NestedCounts:
    parts = text.split(",")
    try:
        numbers = [int(p) for p in parts]
    except ValueError as exc:
        raise InputError(f"bad --counts value {text!r}: {exc}") from exc
    if len(numbers) == 2:
        return NestedCounts(SparsityCounts(numbers[0], numbers[1]))
    if len(numbers) == 4:
        return NestedCounts(
            SparsityCounts(numbers[0], numbers[1]), SparsityCounts(numbers[2], numbers[3])
        )
    raise InputError(f"--counts expects k,l or k1,l1,k2,l2; got {text!r}")


def _cmd_sparsity(args: argparse.Namespace) -> int:
    if args.from_framework:
        graph = multigraph_of(primitive_graph_of(_load_framework(args.file)))
    else:
        graph = _load_graph(args.file)
    counts = _parse_counts(args.counts) if args.counts else BODY_CAD_COUNTS
    result = nested_analysis(graph, counts)
    data: dict[str, object] = {
        "n": graph.n,
        "edges": len(graph.edges),
        "counts": {
            "outer": {"k": counts.outer.k, "l": counts.outer.l},
            "inner": None
            if counts.inner is None
            else {"k": counts.inner.k, "l": counts.inner.l},
        },
        "mode": args.mode,
        "sparse": result.sparse,
        "tight": result.tight,
    }
    if args.mode in ("extract", "components"):
        data["extracted"] = list(result.extracted)
    if args.mode == "components":
        data["components"] = [list(c) for c in result.components]
    _emit(data)
    print(
        f"{args.file}: {graph.n} vertices, {len(graph.edges)} edges -> "
        + ("nested-sparse" if result.sparse else f"not nested-sparse (max {len(result.extracted)})"),
        file=sys.stderr,
    )
    if args.mode == "decision":
        return EXIT_OK if result.sparse else EXIT_NEGATIVE
    return EXIT_OK


def _cmd_pebble(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    counts = SparsityCounts(args.k, args.l)
    if args.mode == "components":
        comp = pebble_components(graph, counts)
        data: dict[str, object] = {
            "n": graph.n,
            "edges": len(graph.edges),
            "k": counts.k,
            "l": counts.l,
            "mode": args.mode,
            "sparse": comp.sparse,
            "accepted": list(comp.accepted),
            "rejected": list(comp.rejected),
            "components": [list(c) for c in comp.components],
        }
        sparse = comp.sparse
    else:
        result = pebble_decision(graph, counts)
        data = {
            "n": graph.n,
            "edges": len(graph.edges),
            "k": counts.k,
            "l": counts.l,
            "mode": args.mode,
            "sparse": result.sparse,
            "tight": result.tight,
            "accepted": list(result.accepted),
            "rejected": list(result.rejected),
        }
        sparse = result.sparse
    _emit(data)
    print(
        f"{args.file}: ({counts.k},{counts.l}) pebble game -> "
        + ("sparse" if sparse else "not sparse"),
        file=sys.stderr,
    )
    return EXIT_OK if sparse else EXIT_NEGATIVE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bodycad",
        description="Infinitesimal rigidity of body-and-cad frameworks and "
        "counting sparsity of their constraint graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="rigidity report for a framework file")
    p.add_argument("file")
    p.add_argument("--mode", choices=("rational", "float"), default="rational")
    p.add_argument("--tolerance", type=float, default=1e-9,
                   help="singular-value cutoff for float mode")
    p.add_argument("--perturb-audit", type=int, default=0, metavar="TRIALS",
                   help="re-rank under N random valid payload perturbations")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("matrix", help="dump the rigidity matrix")
    p.add_argument("file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("sparsity", help="nested-count sparsity of a colored graph")
    p.add_argument("file")
    p.add_argument("--counts", default=None, metavar="K1,L1[,K2,L2]",
                   help="outer and optional inner counts (default 6,6,3,3)")
    p.add_argument("--mode", choices=("decision", "extract", "components"), default="decision")
    p.add_argument("--from-framework", action="store_true",
                   help="treat FILE as a framework and use its primitive graph")
    p.set_defaults(func=_cmd_sparsity)

    p = sub.add_parser("pebble", help="single-count pebble game on a graph file")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mode", choices=("decision", "components"), default="decision")
    p.set_defaults(func=_cmd_pebble)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BodyCadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
