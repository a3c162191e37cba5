"""Command-line interface: check, reduce, group-info.

Exit codes: 0 the instance has the PBW property (or the command simply
succeeded), 1 not-PBW, 2 invalid input, 3 precondition failure (the
action breaks the q-relations), 4 the two checker paths disagree.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import IncompatibleActionError, InputError
from .parsing import parse_expr_text
from .pbw import PbwReport, check_pbw_oracle, check_pbw_theorem, report_to_doc
from .problem import MODES, ProblemError, ProblemFile, parse_problem
from .rewriting import ReductionSystem, element_str, reduce_element
from .groups import check_q_compatibility

EXIT_PBW = 0
EXIT_NOT_PBW = 1
EXIT_INVALID_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4


def _read_problem(path: str, require_compatible: bool = True) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_problem(text, require_compatible=require_compatible)


def _print_report_text(report: PbwReport, n: int, out) -> None:
    doc = report_to_doc(report, n)
    print(f"[{doc['provenance']}] verdict: {doc['verdict']}", file=out)
    stats = ", ".join(f"{key}={value}" for key, value in doc["statistics"].items())
    print(f"  checked: {stats}", file=out)
    for violation in doc["violations"]:
        witness = " ".join(f"{key}={value}" for key, value in violation["witness"].items())
        print(f"  {violation['condition']} at {witness}: residual {violation['residual']}", file=out)


def cmd_check(args) -> int:
    problem = _read_problem(args.file)
    mode = args.mode or problem.mode
    reports: list[PbwReport] = []
    if mode in ("theorem", "both"):
        reports.append(check_pbw_theorem(problem.q, problem.group, problem.kappa))
    if mode in ("oracle", "both"):
        reports.append(check_pbw_oracle(problem.q, problem.group, problem.kappa))
    verdicts = {report.verdict for report in reports}
    agree = len(verdicts) == 1

    if args.format == "structured":
        if len(reports) == 1:
            doc = report_to_doc(reports[0], problem.n)
        else:
            doc = {
                "verdict": reports[0].verdict if agree else "mismatch",
                "provenance": "both",
                "agreement": agree,
                "reports": [report_to_doc(r, problem.n) for r in reports],
            }
        print(json.dumps(doc, indent=2))
    else:
        for report in reports:
            _print_report_text(report, problem.n, sys.stdout)
        if not agree:
            print("checker paths disagree; full reports above", file=sys.stderr)

    if not agree:
        return EXIT_MISMATCH
    return EXIT_PBW if reports[0].is_pbw else EXIT_NOT_PBW


def cmd_reduce(args) -> int:
    problem = _read_problem(args.file)
    system = ReductionSystem(problem.q, problem.group, problem.kappa)
    oracle = check_pbw_oracle(problem.q, problem.group, problem.kappa)
    if not oracle.is_pbw:
        print(
            "warning: instance is not PBW; the normal form may depend on the strategy",
            file=sys.stderr,
        )
    element = parse_expr_text(args.expr, problem.field, problem.n, problem.group)
    result = reduce_element(element, system, strategy=args.strategy, seed=args.seed)
    print(element_str(result, problem.n))
    return EXIT_PBW


def cmd_group_info(args) -> int:
    problem = _read_problem(args.file, require_compatible=False)
    group, q = problem.group, problem.q
    names = [g.name for g in group]
    compat = {g.name: check_q_compatibility(g, q) for g in group}
    classes = [[names[gid] for gid in cls] for cls in group.conjugacy_classes()]

    if args.format == "structured":
        doc = {
            "order": group.order,
            "elements": [
                {
                    "name": g.name,
                    "matrix": [[str(c) for c in row] for row in g.matrix],
                    "compatible": not compat[g.name],
                    "violations": [str(v) for v in compat[g.name]],
                }
                for g in group
            ],
            "multiplication": [[names[group.mult[a][b]] for b in range(group.order)]
                               for a in range(group.order)],
            "conjugacy_classes": classes,
        }
        print(json.dumps(doc, indent=2))
        return EXIT_PBW

    print(f"order {group.order}")
    for g in group:
        status = "compatible" if not compat[g.name] else "INCOMPATIBLE"
        print(f"{g.name} ({status}):")
        for row in g.matrix:
            print("  [" + ", ".join(str(c) for c in row) + "]")
        for violation in compat[g.name]:
            print(f"  breaks {violation}")
    print("multiplication table:")
    width = max(len(name) for name in names)
    header = " ".join(name.rjust(width) for name in names)
    print(" " * (width + 2) + header)
    for a in range(group.order):
        row = " ".join(names[group.mult[a][b]].rjust(width) for b in range(group.order))
        print(f"{names[a].rjust(width)} | {row}")
    print("conjugacy classes: " + "; ".join("{" + ", ".join(cls) + "}" for cls in classes))
    return EXIT_PBW


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpbw",
        description="PBW-condition checker and normal-form calculator for "
                    "group-twisted quantum polynomial ring deformations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check_p = sub.add_parser("check", help="decide the PBW condition for a problem file")
    check_p.add_argument("file")
    check_p.add_argument("--mode", choices=MODES, default=None,
                         help="checker path(s) to run (default: file option, then 'both')")
    check_p.add_argument("--format", choices=("text", "structured"), default="text")
    check_p.set_defaults(func=cmd_check)

    reduce_p = sub.add_parser("reduce", help="normal form of an expression")
    reduce_p.add_argument("file")
    reduce_p.add_argument("-e", "--expr", required=True)
    reduce_p.add_argument("--strategy", choices=("leftmost", "rightmost", "random"),
                          default="leftmost")
    reduce_p.add_argument("--seed", type=int, default=None)
    reduce_p.set_defaults(func=cmd_reduce)

    info_p = sub.add_parser("group-info", help="closure, tables and compatibility report")
    info_p.add_argument("file")
    info_p.add_argument("--format", choices=("text", "structured"), default="text")
    info_p.set_defaults(func=cmd_group_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemError as exc:
        for diagnostic in exc.diagnostics:
            print(str(diagnostic), file=sys.stderr)
        return EXIT_PRECONDITION if exc.is_precondition_only() else EXIT_INVALID_INPUT
    except IncompatibleActionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PRECONDITION
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
