"""Command-line interface: ``homspec {list,solve,eigen,report,verify,export-cases}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog
from .catalog import ProblemResult, ProblemSpec
from .equivariance import SUBGROUP_LABELS, subgroup
from .operators import Frame
from .results import Cutoff, UncertifiedError
from .scalars import format_rational, parse_rational
from .solver import Problem, solve
from .torus import TORUS

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_UNCERTIFIED = 0, 1, 2, 3

log = logging.getLogger("homspec")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rational(token: str) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an exact rational a/b, got {token!r}") from None


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--quiet", action="store_true", help="suppress log output")
    common.add_argument("--cases-file", help="JSON file of extra or replacement cases")
    common.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for block solves")
    common.add_argument("--oracle", action="store_true", help="cross-check with the floating-point oracle")
    common.add_argument("--allow-uncertified", action="store_true", help="accept manual cutoffs")

    parser = Parser(prog="homspec", description="Eigenspace dimensions of invariant operators on SU(2)/Gamma and T^3.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    sub.add_parser("list", parents=[common], help="list catalog cases")

    p = sub.add_parser("solve", parents=[common], help="solve the problems of a catalog case")
    p.add_argument("--case", required=True)
    p.add_argument("--problem", help="problem key (default: all problems of the case)")
    p.add_argument("--nmax", type=int, help="manual cutoff (result is uncertified)")

    p = sub.add_parser("eigen", parents=[common], help="solve a custom eigenproblem")
    p.add_argument("--p2", type=rational, help="p^2 of the frame (omit with --torus)")
    p.add_argument("--q", type=rational, help="q of the frame (omit with --torus)")
    p.add_argument("--torus", action="store_true", help="use the flat torus frame")
    p.add_argument("--op", required=True, choices=catalog.OPERATORS)
    p.add_argument("--value", required=True, type=rational, help="eigenvalue alpha (or lambda)")
    p.add_argument("--gamma", default="trivial", choices=SUBGROUP_LABELS)
    p.add_argument("--fiber", default=None, choices=("trivial", "adjoint"))
    p.add_argument("--nmax", type=int, help="manual cutoff (lattice radius for --torus)")

    p = sub.add_parser("report", parents=[common], help="rigidity report for all cases")
    p.add_argument("--no-derived", action="store_true", help="skip the Lagrangian side computations")

    sub.add_parser("verify", parents=[common], help="run the exact identity suite")

    p = sub.add_parser("export-cases", parents=[common], help="write the catalog as JSON")
    p.add_argument("--output", help="file to write (default: stdout)")
    return parser


# -- formatting ------------------------------------------------------------------


def _csv(rows: list[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue().rstrip("\n")


def _table(rows: list[dict], fields: Sequence[str]) -> str:
    cells = [[str(r.get(f, "")) for f in fields] for r in rows]
    widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in lines)


def _emit(fmt: str, payload, rows: list[dict], fields: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        print(_csv(rows, fields))
    else:
        print(_table(rows, fields))


RESULT_FIELDS = ("case", "problem", "alpha", "n_max", "certified", "nonzero_blocks", "complex_dim", "real_dim", "expected", "match")


def _flat(d: dict) -> dict:
    out = dict(d)
    out["n_max"] = d["cutoff"]["n_max"]
    out["certified"] = d["cutoff"]["certified"]
    out["nonzero_blocks"] = " ".join(f"{b['n']}:{b['nullity']}" for b in d["blocks"] if b["nullity"]).replace(", ", ",")
    for k in ("expected", "match", "oracle"):
        if out.get(k) is None:
            out[k] = "-"
    return out


def _result_exit(results: list[ProblemResult], allow_uncertified: bool) -> int:
    if any(r.match is False or r.oracle_match is False for r in results):
        return EXIT_MISMATCH
    if any(not r.space.certified for r in results) and not allow_uncertified:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _emit_results(args, results: list[ProblemResult], single: bool) -> None:
    dicts = [r.to_dict() for r in results]
    fields = RESULT_FIELDS + (("oracle",) if args.oracle else ())
    _emit(args.format, dicts[0] if single else dicts, [_flat(d) for d in dicts], fields)


# -- commands ------------------------------------------------------------------------


def cmd_list(args) -> int:
    rows = []
    for c in catalog.CASES.values():
        rows.append({
            "case": c.id,
            "backend": c.backend,
            "p_sq": "-" if c.p_sq is None else format_rational(c.p_sq),
            "q": "-" if c.q is None else format_rational(c.q),
            "gamma": c.gamma,
            "framework": c.framework,
            "trivial_dim": c.trivial_dim,
            "problems": " ".join(p.key for p in c.problems),
        })
    _emit(args.format, rows, rows, list(rows[0]))
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.case not in catalog.CASES:
        raise UsageError(f"unknown case {args.case!r}; expected one of {list(catalog.CASES)}")
    case = catalog.CASES[args.case]
    keys = [args.problem] if args.problem else [p.key for p in case.problems]
    cutoff = Cutoff.manual(args.nmax) if args.nmax is not None else None
    results = []
    for key in keys:
        try:
            case.problem(key)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        log.info("solving %s/%s", args.case, key)
        results.append(catalog.run_problem(args.case, key, args.parallel, cutoff, args.oracle))
    _emit_results(args, results, single=bool(args.problem))
    return _result_exit(results, args.allow_uncertified)


def cmd_eigen(args) -> int:
    if args.torus:
        if args.p2 is not None or args.q is not None:
            raise UsageError("--torus takes no --p2/--q")
        frame = TORUS
    else:
        if args.p2 is None or args.q is None:
            raise UsageError("--p2 and --q are required unless --torus is given")
        try:
            frame = Frame(args.p2, args.q, "custom")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    op = catalog.build_operator(args.op, frame)
    fiber_kind = args.fiber or ("trivial" if args.op in ("laplacian", "dirac_A3") else "adjoint")
    if fiber_kind == "adjoint" and op.d_in == 1:
        raise UsageError(f"--fiber adjoint does not apply to {args.op}")
    if args.torus and args.gamma != "trivial":
        raise UsageError("the torus backend has no isotropy group")
    tau = catalog.build_fiber(fiber_kind, op.d_in, frame)
    cutoff = Cutoff.manual(args.nmax) if args.nmax is not None else None
    problem = Problem(frame, op, args.value, subgroup(args.gamma), tau, cutoff)
    space = solve(problem, workers=args.parallel)
    spec = ProblemSpec(args.op, args.op, args.value, fiber_kind, provenance="derived")
    result = ProblemResult("custom", spec, space)
    if args.oracle:
        result.oracle_match = catalog.oracle_agrees(problem, space)
    _emit_results(args, [result], single=True)
    return _result_exit([result], args.allow_uncertified)


REPORT_FIELDS = ("case", "framework", "total", "trivial", "remainder", "verdict", "match", "lagrangian")


def cmd_report(args) -> int:
    rows = catalog.rigidity_report(include_derived=not args.no_derived, workers=args.parallel)
    dicts = [r.to_dict() for r in rows]
    flat = [{**d, "lagrangian": " ".join(map(str, d["lagrangian"])) or "-"} for d in dicts]
    _emit(args.format, dicts, flat, REPORT_FIELDS)
    return EXIT_OK if all(r.match for r in rows) else EXIT_MISMATCH


def cmd_verify(args) -> int:
    from .verify import CheckResult, run_identity_suite

    checks = run_identity_suite()
    if args.oracle:
        for cid, case in catalog.CASES.items():
            for spec in case.problems:
                res = catalog.run_problem(cid, spec.key, args.parallel, with_oracle=True)
                checks.append(CheckResult(f"oracle agreement [{cid}/{spec.key}]", bool(res.oracle_match)))
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    _emit(args.format, rows, rows, ("check", "passed", "detail"))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_MISMATCH


def cmd_export_cases(args) -> int:
    text = catalog.export_cases(args.output)
    if args.output is None:
        print(text)
    return EXIT_OK


COMMANDS = {
    "list": cmd_list,
    "solve": cmd_solve,
    "eigen": cmd_eigen,
    "report": cmd_report,
    "verify": cmd_verify,
    "export-cases": cmd_export_cases,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.parallel < 1:
        parser.error("--parallel must be at least 1")
    try:
        if args.cases_file:
            catalog.register_cases(catalog.load_cases(args.cases_file))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except UncertifiedError as exc:
        print(f"homspec: uncertified: {exc}; pass --nmax to supply a manual cutoff", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (OSError, ValueError) as exc:
        print(f"homspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
