"""Command-line front end.

Subcommands: emit, verify, eval, normal-form, word-problem, enumerate,
translate, matrix.  Exit codes: 0 success, 1 usage error, 2 verification
failure, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import verify as verify_mod
from . import wreath
from .base import BUILTIN_NAMES, BasePresentation, builtin
from .congruence import UnsupportedFlavorError
from .pperm import enumerate_partial_bijections
from .presentations import KIND_FLAVOR, build, emit_json, emit_text
from .words import (
    ParseError,
    eval_path,
    eval_term,
    eval_word,
    normal_form_singular_tuple,
    normal_form_wreath_word,
    parse_monoid_word,
    parse_path,
    parse_term,
    reassemble_singular,
    reassemble_wreath,
    term_text,
    translate,
    word_text,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3

BUDGET_ENV = "INVWREATH_BUDGET"


class UsageError(ValueError):
    pass


def _load_monoid(spec: str) -> BasePresentation:
    if spec in BUILTIN_NAMES:
        return builtin(spec)
    if os.path.exists(spec):
        with open(spec) as fh:
            obj = json.load(fh)
        name = obj.get("name", os.path.splitext(os.path.basename(spec))[0])
        return BasePresentation.from_json(
            obj.get("presentation", obj), name=name)
    raise UsageError(
        f"unknown monoid {spec!r}: expected one of {', '.join(BUILTIN_NAMES)} or a JSON path")


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else None


def _build_from_args(args):
    flavor = KIND_FLAVOR.get(args.kind)
    if flavor is None:
        raise UsageError(f"unknown kind {args.kind!r}")
    base = _load_monoid(args.monoid)
    if flavor in ("monoid", "semigroup"):
        if args.n is None:
            raise UsageError(f"kind {args.kind} needs --n")
        return build(args.kind, base, n=args.n)
    if flavor == "category":
        if args.cap is None:
            raise UsageError(f"kind {args.kind} needs --cap")
        return build(args.kind, base, cap=args.cap)
    return build(args.kind, base)


def _cmd_emit(args) -> int:
    p = _build_from_args(args)
    sys.stdout.write(emit_json(p) if args.format == "json" else emit_text(p))
    return EXIT_OK


def _report_exit(report) -> int:
    if report.verdict == "pass":
        return EXIT_OK
    if report.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL


def _run_verify_cell(kind, base, n, cap, budget):
    flavor = KIND_FLAVOR.get(kind)
    if flavor is None:
        raise UsageError(f"unknown kind {kind!r}")
    if flavor in ("monoid", "semigroup"):
        if n is None:
            raise UsageError(f"kind {kind} needs --n")
        return verify_mod.verify_presentation(kind, base, n, budget)
    if flavor == "category":
        return verify_mod.verify_category(cap if cap is not None else 3, base, budget)
    return verify_mod.verify_tensor(base, kind=kind)


def _cmd_verify(args) -> int:
    base = _load_monoid(args.monoid)
    report = _run_verify_cell(args.kind, base, args.n, args.cap, _budget(args))
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        _print_report(report)
    return _report_exit(report)


def _print_report(report):
    head = f"{report.kind} monoid={report.monoid}"
    if report.n is not None:
        head += f" n={report.n}"
    print(f"{head}: {report.verdict}")
    if report.soundness is not None:
        print(f"  soundness: {'pass' if report.soundness.ok else report.soundness.detail}")
    if report.generation is not None:
        print(f"  generation: {report.generation[0]}/{report.generation[1]}")
    if report.enumerated_size is not None:
        print(f"  enumerated: {report.enumerated_size} target: {report.target_size}")
    for key, val in report.notes.items():
        print(f"  {key}: {val}")


def _parse_by_flavor(text: str, flavor: str):
    if flavor in ("monoid", "semigroup"):
        return parse_monoid_word(text)
    if flavor == "category":
        return parse_path(text)
    return parse_term(text)


def _eval_by_flavor(obj, flavor, base, n):
    if flavor in ("monoid", "semigroup"):
        if n is None:
            raise UsageError("evaluation of a flat word needs --n")
        return eval_word(obj, base, n)
    if flavor == "category":
        return eval_path(obj, base)
    return eval_term(obj, base)


def _cmd_eval(args) -> int:
    base = _load_monoid(args.monoid)
    flavor = KIND_FLAVOR.get(args.kind)
    if flavor is None:
        raise UsageError(f"unknown kind {args.kind!r}")
    obj = _parse_by_flavor(args.word, flavor)
    elem = _eval_by_flavor(obj, flavor, base, args.n)
    if args.format == "json":
        print(json.dumps(elem.to_json()))
    else:
        print(f"tuple:  {list(elem.tup.entries)}")
        print(elem.pmap.render())
    return EXIT_OK


def _cmd_word_problem(args) -> int:
    base = _load_monoid(args.monoid)
    flavor = KIND_FLAVOR.get(args.kind)
    if flavor is None:
        raise UsageError(f"unknown kind {args.kind!r}")
    left = _eval_by_flavor(_parse_by_flavor(args.lhs, flavor), flavor, base, args.n)
    right = _eval_by_flavor(_parse_by_flavor(args.rhs, flavor), flavor, base, args.n)
    equal = left == right
    if args.format == "json":
        print(json.dumps({"equal": equal}))
    else:
        print("equal" if equal else "not equal")
    return EXIT_OK if equal else EXIT_FAIL


def _cmd_normal_form(args) -> int:
    base = _load_monoid(args.monoid)
    if args.n is None:
        raise UsageError("normal-form needs --n")
    word = parse_monoid_word(args.word)
    if args.kind == "r-min":
        parts, tail = normal_form_wreath_word(word, base, args.n)
        result = {
            "slots": [" ".join(w) if w else "1" for w in parts],
            "map_word": word_text(tail),
            "word": word_text(reassemble_wreath(parts, tail)),
        }
    elif args.kind == "r-sing-tuples":
        q, sigma, slot_words = normal_form_singular_tuple(word, base, args.n)
        result = {
            "q": q,
            "relabel": list(sigma),
            "slots": [" ".join(w) if w else "1" for w in slot_words],
            "word": word_text(reassemble_singular(q, args.n, slot_words)),
        }
    else:
        raise UsageError("normal-form supports kinds r-min and r-sing-tuples")
    if args.format == "json":
        print(json.dumps(result))
    else:
        for key, val in result.items():
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_translate(args) -> int:
    if args.which in ("psi1", "psi2", "plus", "reverse"):
        obj = parse_monoid_word(args.word) if args.which in ("psi1", "psi2", "reverse") \
            else parse_path(args.word).edges
        out = translate(tuple(obj), args.which)
        print(word_text(out))
    elif args.which == "hat":
        out = translate(parse_path(args.word), "hat")
        print(term_text(out))
    else:
        raise UsageError(f"unknown translation {args.which!r}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    base = _load_monoid(args.monoid)
    if args.variant == "maps":
        cap = args.cap if args.cap is not None else 6
        rows = [e.to_json()
                for e in enumerate_partial_bijections(args.m, args.n, cap=cap)]
    else:
        monoid = base.require_evaluation()
        rows = [e.to_json()
                for e in wreath.enumerate_wreath(
                    monoid, args.m, args.n, args.variant, cap=args.cap)]
    if args.format == "json":
        print(json.dumps({"count": len(rows), "elements": rows}))
    else:
        print(f"count: {len(rows)}")
        if not args.count_only:
            for row in rows:
                print(json.dumps(row))
    return EXIT_OK


def _cmd_matrix(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    cells = config.get("cells", [])
    results = []
    worst = EXIT_OK
    for idx, cell in enumerate(cells):
        entry = {"cell": idx, **cell}
        try:
            base = _load_monoid(cell["monoid"])
            report = _run_verify_cell(cell["kind"], base, cell.get("n"),
                                      cell.get("cap"), cell.get("budget") or _budget(args))
            entry["verdict"] = report.verdict
            entry["report"] = report.to_json()
            worst = max(worst, _report_exit(report))
        except (UsageError, ValueError, KeyError, UnsupportedFlavorError) as exc:
            entry["verdict"] = "error"
            entry["error"] = str(exc)
            worst = max(worst, EXIT_FAIL)
        results.append(entry)
    if args.format == "json":
        print(json.dumps({"cells": results}, indent=2))
    else:
        for entry in results:
            label = f"[{entry['cell']}] {entry.get('kind', '?')} {entry.get('monoid', '?')}"
            if entry.get("n") is not None:
                label += f" n={entry['n']}"
            print(f"{label}: {entry['verdict']}" +
                  (f" ({entry['error']})" if "error" in entry else ""))
    return worst


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invwreath",
        description="Presentations and verification for wreath products of a "
                    "finite monoid with the partial-bijection monoids and category.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, monoid=True, n=True, cap=False, kind=True):
        if kind:
            sp.add_argument("--kind", required=True, help="presentation kind, e.g. r-min")
        if monoid:
            sp.add_argument("--monoid", default="trivial",
                            help="builtin name or JSON file path")
        if n:
            sp.add_argument("--n", type=int, default=None, help="level")
        if cap:
            sp.add_argument("--cap", type=int, default=None, help="object cap")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("emit", help="print a presentation")
    common(sp, cap=True)
    sp.set_defaults(func=_cmd_emit)

    sp = sub.add_parser("verify", help="verify a presentation against brute force")
    common(sp, cap=True)
    sp.add_argument("--budget", type=int, default=None,
                    help=f"node budget (or set {BUDGET_ENV})")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("eval", help="evaluate a word/path/term")
    common(sp, cap=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("word-problem", help="compare two words semantically")
    common(sp)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=_cmd_word_problem)

    sp = sub.add_parser("normal-form", help="canonical factorization of a word")
    common(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=_cmd_normal_form)

    sp = sub.add_parser("translate", help="apply a named translation map")
    sp.add_argument("--which", required=True,
                    choices=("psi1", "psi2", "hat", "plus", "reverse"))
    sp.add_argument("--word", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_translate)

    sp = sub.add_parser("enumerate", help="brute-force enumeration")
    sp.add_argument("--variant", default="full",
                    choices=("maps", "full", "singular-monoid", "singular-tuples"))
    sp.add_argument("--monoid", default="trivial")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=None,
                    help="raise the size cap (exceeding the default is an error)")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("matrix", help="run a verification matrix from a config file")
    sp.add_argument("config", help="JSON file with a 'cells' list")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_matrix)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
