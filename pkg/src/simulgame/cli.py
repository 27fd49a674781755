"""Command-line front end.

Subcommands: ``eval`` an expression, tabulate a strip family with
``table``, run the verification manifest with ``verify``, and show a
dominance-reduced game with ``reduce``.

Exit codes are fixed for scripting: 0 success, 1 verification failure,
2 parse error, 3 evaluation error.  Rationals print as ``p/q`` in lowest
terms unless ``--decimal`` asks for rounded digits.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .analysis import reduce_game
from .engine import (
    MEMO_LIMIT_ENV,
    NORMAL,
    SCORING,
    Memo,
    _env_limit,
    evaluate,
    guarantee_profile,
    outcome,
)
from .errors import (
    BadLiteral,
    BadParameters,
    GameSyntaxError,
    LoopyGame,
    RefusesSum,
    SizeLimit,
    UnknownRuleset,
)
from .gexpr import SqExpr, SumExpr, parse, render_position, to_position

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_EVAL = 3

MEASURES = ("ex", "index", "outcome", "score", "matrix", "strategies")


def _fmt_rational(value: Fraction, decimals: int | None) -> str:
    if decimals is None:
        return str(value)
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        quantum = decimal.Decimal(1).scaleb(-decimals)
        return str(d.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN))


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_expr(text: str):
    tree = parse(text)
    return tree, to_position(tree)


def _syntax_error(text: str, exc: GameSyntaxError) -> int:
    sys.stderr.write(f"parse error: {exc}\n")
    offset = min(exc.offset, len(text))
    sys.stderr.write(f"    {text}\n    {' ' * offset}^\n")
    return EXIT_PARSE


def cmd_eval(args) -> int:
    try:
        _, position = _parse_expr(args.expr)
    except GameSyntaxError as exc:
        return _syntax_error(args.expr, exc)
    except (BadLiteral, UnknownRuleset, BadParameters) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE

    memo = Memo(_env_limit())
    fmt = lambda fr: _fmt_rational(fr, args.decimal)
    try:
        if args.measure == "ex":
            payload = {"value": fmt(evaluate(position, args.convention, memo=memo).ex)}
        elif args.measure == "score":
            payload = {"value": fmt(evaluate(position, SCORING, memo=memo).ex)}
        elif args.measure == "outcome":
            payload = {"value": outcome(position, args.convention, memo=memo)}
        elif args.measure == "index":
            prof = guarantee_profile(position, args.convention, memo=memo)
            payload = {"ell": fmt(prof.ell), "arr": fmt(prof.arr)}
        elif args.measure == "strategies":
            report = evaluate(position, args.convention, memo=memo)
            matrix = position.move_matrix()
            payload = {
                "value": fmt(report.ex),
                "left_mix": {l: fmt(p) for l, p in zip(matrix.row_labels, report.left_mix)},
                "right_mix": {l: fmt(p) for l, p in zip(matrix.col_labels, report.right_mix)},
            }
        else:  # matrix
            matrix = position.move_matrix()
            payload = {
                "rows": list(matrix.row_labels),
                "cols": list(matrix.col_labels),
                "ex": [
                    [fmt(evaluate(cell, args.convention, memo=memo).ex) for cell in row]
                    for row in matrix.cells
                ],
            }
    except (LoopyGame, SizeLimit) as exc:
        sys.stderr.write(f"evaluation error: {exc}\n")
        return EXIT_EVAL

    header = {"expr": args.expr, "convention": args.convention, "measure": args.measure}
    if args.format == "json":
        _emit(json.dumps(header | payload))
    elif args.format == "csv":
        if args.measure == "matrix":
            rows = [[""] + payload["cols"]]
            rows += [[r] + vals for r, vals in zip(payload["rows"], payload["ex"])]
        elif args.measure == "index":
            rows = [["ell", "arr"], [payload["ell"], payload["arr"]]]
        elif args.measure == "strategies":
            rows = [["kind", "label", "value"], ["value", "", payload["value"]]]
            rows += [["left", l, p] for l, p in payload["left_mix"].items()]
            rows += [["right", l, p] for l, p in payload["right_mix"].items()]
        else:
            rows = [["measure", "value"], [args.measure, payload["value"]]]
        _emit(_csv_text(rows))
    else:
        if args.measure == "matrix":
            width = max(
                [len(r) for r in payload["rows"]] + [1]
            )
            _emit(" " * (width + 1) + "  ".join(payload["cols"]))
            for label, vals in zip(payload["rows"], payload["ex"]):
                _emit(f"{label:<{width}}  " + "  ".join(vals))
        elif args.measure == "index":
            _emit(f"[{payload['ell']}, {payload['arr']}]")
        elif args.measure == "strategies":
            _emit(f"value {payload['value']}")
            _emit("left  " + "  ".join(f"{l}:{p}" for l, p in payload["left_mix"].items()))
            _emit("right " + "  ".join(f"{l}:{p}" for l, p in payload["right_mix"].items()))
        else:
            _emit(payload["value"])
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        tree = parse(f"{args.ruleset}(0)")
    except GameSyntaxError as exc:
        return _syntax_error(args.ruleset, exc)
    if not isinstance(tree, SqExpr):
        sys.stderr.write("table supports the subtraction-strip family only, e.g. sq{1}{2}\n")
        return EXIT_PARSE

    memo = Memo(_env_limit())
    fmt = lambda fr: _fmt_rational(fr, args.decimal)
    rows = []
    for n in range(args.n_max + 1):
        position = to_position(SqExpr(tree.left, tree.right, n, tree.primed))
        report = evaluate(position, NORMAL, memo=memo)
        prof = guarantee_profile(position, NORMAL, memo=memo)
        rows.append({"n": n, "ex": fmt(report.ex), "ell": fmt(prof.ell), "arr": fmt(prof.arr)})

    if args.format == "json":
        _emit(json.dumps({"ruleset": args.ruleset, "rows": rows}))
    elif args.format == "csv":
        _emit(_csv_text([["n", "ex", "ell", "arr"]] + [[str(r["n"]), r["ex"], r["ell"], r["arr"]] for r in rows]))
    else:
        _emit("n  ex  ell  arr")
        for r in rows:
            _emit(f"{r['n']}  {r['ex']}  {r['ell']}  {r['arr']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    records = verify_mod.run_suite(args.suite)
    failed = sum(1 for r in records if r["status"] != "pass")
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "suite": args.suite,
                    "checks": records,
                    "passed": len(records) - failed,
                    "failed": failed,
                }
            )
        )
    else:
        for r in records:
            _emit(f"[{r['status'].upper():5s}] {r['id']}: expected {r['expected']}, got {r['actual']}")
        _emit(f"{len(records) - failed}/{len(records)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_reduce(args) -> int:
    try:
        tree, position = _parse_expr(args.expr)
    except GameSyntaxError as exc:
        return _syntax_error(args.expr, exc)
    except (BadLiteral, UnknownRuleset, BadParameters) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    if isinstance(tree, SumExpr):
        sys.stderr.write(
            "refusing to reduce a sum: reduction is value-preserving in isolation "
            "but unsound inside sums\n"
        )
        return EXIT_PARSE

    memo = Memo(_env_limit())
    try:
        reduced = reduce_game(position, args.convention, memo=memo)
        value = evaluate(reduced, args.convention, memo=memo).ex
    except (LoopyGame, SizeLimit) as exc:
        sys.stderr.write(f"evaluation error: {exc}\n")
        return EXIT_EVAL
    _emit(render_position(reduced))
    _emit(f"ex {value}")
    _emit("note: reduced games are interchangeable in isolation only; summing reduced")
    _emit("components can change the value of the sum")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulgame",
        description="Evaluate simultaneous combinatorial games exactly.",
        epilog=f"The {MEMO_LIMIT_ENV} environment variable caps the memo table size.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a game expression")
    p_eval.add_argument("expr")
    p_eval.add_argument("--convention", choices=(NORMAL, SCORING), default=NORMAL)
    p_eval.add_argument("--measure", choices=MEASURES, default="ex")
    p_eval.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_eval.add_argument("--decimal", type=int, default=None, metavar="K")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", help="tabulate a subtraction-strip family")
    p_table.add_argument("ruleset", help="family literal without a length, e.g. sq{1}{2}")
    p_table.add_argument("--n-max", type=int, default=10)
    p_table.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_table.add_argument("--decimal", type=int, default=None, metavar="K")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run the verification manifest")
    p_verify.add_argument("suite", choices=("paper", "properties", "all"))
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_reduce = sub.add_parser("reduce", help="show the dominance-reduced game")
    p_reduce.add_argument("expr")
    p_reduce.add_argument("--convention", choices=(NORMAL, SCORING), default=NORMAL)
    p_reduce.set_defaults(func=cmd_reduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RefusesSum as exc:  # defensive; cmd_reduce guards first
        sys.stderr.write(f"{exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
