"""Command-line front end.

Exit status: 0 pass, 1 fail (witness printed), 2 inconclusive (budget),
64 usage error or invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .detmat import RowSpec, format_matrix, rows, stack
from .generators import G_candidate_set, L_generators, default_ring
from .groebner import BudgetExceeded, EngineStats, buchberger
from .poly import T, BlockElim, PaperLex, ProblemParams, Ring
from .rees import (FAIL, INCONCLUSIVE, PASS, VerificationReport, corner_minors, fiber_report,
                   notfiber_case, nzd_certificate, rees_input, verify_linear_type)
from .suites import example_3x4, gb_report, identities_report

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
BUDGET_ENV = "DIAG_REES_BUDGET_SECS"
DEFAULT_BUDGET = 3600.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _params(text: str) -> ProblemParams:
    try:
        return ProblemParams.parse(text)
    except ValueError as exc:
        raise UsageError(f"invalid --params: {exc}") from None


def _budget(value: float | None) -> float:
    if value is None:
        env = os.environ.get(BUDGET_ENV)
        if env is None:
            return DEFAULT_BUDGET
        try:
            value = float(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} is not a number: {env!r}") from None
    if value <= 0:
        raise UsageError("budget must be positive")
    return value


# ---------------------------------------------------------------------------
# gens


def _matrix_lines(tag: str, params: ProblemParams) -> list[str]:
    """Signed determinant specs behind a minor or f generator."""
    family, _, idx = tag.partition("(")
    if family not in ("X", "Y", "f"):
        return []
    cols = [int(c) for c in idx.strip("()[]").split(",")]
    if family in ("X", "Y"):
        s = params.s1 if family == "X" else params.s2
        return ["+" + format_matrix(stack(rows(family, 1, s), cols=cols))]
    out = []
    for q in range(1, min(params.s1, params.s2) + 1):
        mat = stack(RowSpec("Z", q), rows("Y", 1, q - 1), rows("X", q + 1, params.s1), cols=cols)
        out.append(("+" if q % 2 else "-") + format_matrix(mat))
    return out


def cmd_gens(args) -> int:
    params = _params(args.params)
    ring = default_ring(params)
    gens = G_candidate_set(params, ring) if args.set == "G" else L_generators(params, ring)
    lines = []
    for tag, p in gens:
        lines.append(f"{tag}: {p}")
        if args.dump_matrices:
            lines.extend(f"  {m}" for m in _matrix_lines(tag, params))
    text = "".join(line + "\n" for line in lines)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# groebner


def _order_input(params: ProblemParams, order: str):
    if order == "paperlex":
        return L_generators(params, default_ring(params)).polynomials
    if order == "elim:t":
        ring = Ring(params.variables(with_t=True), BlockElim({T}, PaperLex()))
        return rees_input(ring, corner_minors(params)(ring), params.m, params.n)
    if order == "elim:xy":
        block = [v for v in params.variables() if v.family in ("x", "y")]
        ring = Ring(params.variables(), BlockElim(block, PaperLex()))
        return L_generators(params, ring).polynomials
    raise UsageError(f"unknown order {order!r}")


def cmd_groebner(args) -> int:
    params = _params(args.params)
    budget = _budget(args.budget_secs)
    stats = EngineStats()
    try:
        gb = buchberger(_order_input(params, args.order), strategy=args.strategy,
                        budget_secs=budget, stats=stats)
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    text = "".join(f"{p}\n" for p in gb)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if args.stats:
        doc = dict(stats.as_dict(), basis_size=len(gb), order=args.order, params=list(params.as_tuple()))
        print(json.dumps(doc, sort_keys=True))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify


CHECKS = {
    "linear-type": verify_linear_type,
    "nzd": nzd_certificate,
    "gb": gb_report,
    "identities": identities_report,
    "fiber": fiber_report,
}
EXAMPLES = {"example-3x4": example_3x4, "example-notfiber": notfiber_case}


def format_text(rep: VerificationReport) -> str:
    lines = []
    if rep.params is not None:
        lines.append(f"params: {rep.params}")
    for c in rep.checks:
        lines.append(f"{c.name}: {c.verdict}")
        if c.witness is not None:
            lines.append(f"  witness: {c.witness}")
    lines.append(f"verdict: {rep.verdict}")
    return "".join(line + "\n" for line in lines)


def format_json(rep: VerificationReport, timings: bool = True) -> str:
    return json.dumps(rep.as_dict(timings), indent=2, sort_keys=False) + "\n"


def cmd_verify(args) -> int:
    budget = _budget(args.budget_secs)
    if args.check in EXAMPLES:
        if args.params:
            raise UsageError(f"{args.check} takes no --params")
        rep = EXAMPLES[args.check](budget)
    else:
        if not args.params:
            raise UsageError(f"verify {args.check} needs --params")
        rep = CHECKS[args.check](_params(args.params), budget)
    sys.stdout.write(format_text(rep))
    if args.json:
        write_atomic(args.json, format_json(rep, not args.no_timings))
    return {PASS: EXIT_PASS, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.verdict]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagrees", description="Rees algebras of diagonal ideals: generators, "
                                              "Groebner bases and verification reports.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gens", help="print the generators of L (or the candidate basis G)")
    g.add_argument("--params", required=True, help="m,n,s1,t1,s2,t2")
    g.add_argument("--set", choices=("L", "G"), default="L")
    g.add_argument("--dump-matrices", action="store_true", help="show the determinant behind each minor and f")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gens)

    b = sub.add_parser("groebner", help="reduced Groebner basis")
    b.add_argument("--params", required=True)
    b.add_argument("--order", choices=("paperlex", "elim:t", "elim:xy"), default="paperlex")
    b.add_argument("--strategy", choices=("normal", "fifo", "lex"), default="normal")
    b.add_argument("--out")
    b.add_argument("--stats", action="store_true", help="print engine counters as JSON")
    b.add_argument("--budget-secs", type=float)
    b.set_defaults(func=cmd_groebner)

    v = sub.add_parser("verify", help="run a verification report")
    v.add_argument("check", choices=tuple(CHECKS) + tuple(EXAMPLES))
    v.add_argument("--params")
    v.add_argument("--budget-secs", type=float)
    v.add_argument("--json", help="write the JSON report here")
    v.add_argument("--no-timings", action="store_true", help="zero elapsed_ms for byte-stable reports")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
