"""Command line front end.

    hopes check    FILE            parse and type-check
    hopes ground   FILE            print the depth-bounded ground program
    hopes model    FILE            the graded minimum model (--trace for stages)
    hopes wf       FILE            the three-valued well-founded collapse
    hopes stable   FILE            two-valued stable models (--ext to flag each)
    hopes stratify FILE            predicate-level stratification
    hopes locstrat FILE            ground-level stratification at the bound
    hopes ext      FILE            extensionality of the minimum model

Common flags: --depth K (default 3) bounds ground term size, --format
text|json picks the output shape, --out writes to a file instead of
stdout.  JSON output is byte-stable across runs.

Exit codes: 0 success; 1 analysis verdict negative (stratification or
extensionality violation); 2 parse or type error; 3 resource budget
exceeded (grounding too large, or too many atoms for stable-model
enumeration).  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import analysis, classical, engine, truth
from .ast import TypedProgram
from .herbrand import DEFAULT_BUDGET, BudgetExceeded, GroundProgram, ground_instantiate
from .parser import ParseError, parse_program
from .typecheck import TypeCheckError, typecheck

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_FRONTEND = 2
EXIT_BUDGET = 3


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _load(path: str) -> TypedProgram:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Failure(EXIT_FRONTEND, f"cannot read {path}: {exc}")
    try:
        return typecheck(parse_program(text))
    except ParseError as exc:
        raise _Failure(EXIT_FRONTEND, f"{path}: parse error: {exc}")
    except TypeCheckError as exc:
        raise _Failure(EXIT_FRONTEND, f"{path}: type error: {exc}")


def _ground(tp: TypedProgram, depth: int) -> GroundProgram:
    try:
        return ground_instantiate(tp, depth, DEFAULT_BUDGET)
    except BudgetExceeded as exc:
        raise _Failure(EXIT_BUDGET, f"grounding budget exceeded: {exc}")


def _emit(args, text_render, json_obj) -> None:
    if args.format == "json":
        out = json.dumps(json_obj, indent=2, sort_keys=True) + "\n"
    else:
        out = text_render
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _warn(notes) -> None:
    for note in notes:
        print(f"note: {note}", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    tp = _load(args.file)
    _warn(tp.notes)
    text = (
        f"ok: {len(tp.predicate_decls)} predicate(s), "
        f"{len(tp.function_decls)} function symbol(s), "
        f"{len(tp.individual_constants)} individual constant(s), "
        f"{len(tp.clauses)} clause(s)\n"
    )
    _emit(
        args,
        text,
        {
            "ok": True,
            "predicates": {p: str(t) for p, t in tp.predicate_decls.items()},
            "functions": {f: str(t) for f, t in tp.function_decls.items()},
            "constants": list(tp.individual_constants),
            "clauses": len(tp.clauses),
            "notes": list(tp.notes),
        },
    )
    return EXIT_OK


def cmd_ground(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    _emit(
        args,
        g.to_text(),
        {
            "depth": args.depth,
            "atoms": list(g.atoms),
            "clauses": [
                {
                    "head": g.atoms[c.head],
                    "pos": [g.atoms[a] for a in c.pos],
                    "neg": [g.atoms[a] for a in c.neg],
                }
                for c in g.clauses
            ],
            "notes": list(g.notes),
        },
    )
    return EXIT_OK


def _model_sort_key(g: GroundProgram, values):
    def key(a: int):
        v = values[a]
        o = truth.order(v)
        return (
            o if o != math.inf else float("inf"),
            0 if v.is_true else 1 if v.is_false else 2,
            g.atoms[a],
        )

    return key


def cmd_model(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    m = engine.minimum_model(g)
    lines = []
    if args.trace:
        for rec in m.trace.stages:
            ts = ", ".join(sorted(g.atoms[a] for a in rec.newly_true))
            fs = ", ".join(sorted(g.atoms[a] for a in rec.newly_false))
            lines.append(f"stage {rec.alpha}: true = {{{ts}}} false = {{{fs}}}")
    order = sorted(range(len(g.atoms)), key=_model_sort_key(g, m.values))
    lines.extend(f"{g.atoms[a]} = {m.values[a]}" for a in order)
    lines.append(f"depth = {m.depth}")
    obj = {
        "depth": m.depth,
        "depth_bound": args.depth,
        "atoms": [
            {
                "atom": g.atoms[a],
                "value": str(m.values[a]),
                "order": None if m.values[a].is_zero else m.values[a].index,
            }
            for a in order
        ],
    }
    if args.trace:
        obj["trace"] = [
            {
                "stage": rec.alpha,
                "true": sorted(g.atoms[a] for a in rec.newly_true),
                "false": sorted(g.atoms[a] for a in rec.newly_false),
            }
            for rec in m.trace.stages
        ]
    _emit(args, "\n".join(lines) + "\n", obj)
    return EXIT_OK


def cmd_wf(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    wf = classical.wf_oracle(g)
    order = sorted(range(len(g.atoms)), key=lambda a: g.atoms[a])
    text = "\n".join(f"{g.atoms[a]} = {wf[a]}" for a in order) + "\n"
    _emit(
        args,
        text,
        {
            "depth_bound": args.depth,
            "atoms": [{"atom": g.atoms[a], "value": str(wf[a])} for a in order],
        },
    )
    return EXIT_OK


def cmd_stable(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    try:
        models = classical.stable_models(g, args.max_atoms)
    except classical.TooManyAtoms as exc:
        raise _Failure(EXIT_BUDGET, f"stable-model enumeration aborted: {exc}")
    lines = []
    out_models = []
    for m in models:
        names = sorted(g.atoms[a] for a in m)
        entry = {"atoms": names}
        line = "{" + ", ".join(names) + "}"
        if args.ext:
            values = [truth.T0 if a in m else truth.F0 for a in range(len(g.atoms))]
            report = analysis.check_extensional(tp, g, values, args.depth)
            entry["extensional"] = report.extensional
            entry["violations"] = [str(v) for v in report.violations]
            line += f"  extensional: {'yes' if report.extensional else 'no'}"
            for v in report.violations:
                line += f"\n    {v}"
        lines.append(line)
        out_models.append(entry)
    if not models:
        lines.append("no stable models")
    _emit(
        args,
        "\n".join(lines) + "\n",
        {"depth_bound": args.depth, "count": len(models), "models": out_models},
    )
    return EXIT_OK


def cmd_stratify(args) -> int:
    tp = _load(args.file)
    result = analysis.check_stratified(tp)
    if isinstance(result, analysis.StrataAssignment):
        by_level: dict[int, list[str]] = {}
        for p, lvl in sorted(result.strata.items()):
            by_level.setdefault(lvl, []).append(p)
        parts = [
            f"S{lvl} = {{{', '.join(by_level[lvl])}}}" for lvl in sorted(by_level)
        ]
        text = "stratified: yes\n" + "\n".join(parts) + "\n"
        _emit(
            args,
            text,
            {"verdict": "stratified", "strata": result.strata, "count": result.count},
        )
        return EXIT_OK
    text = "stratified: no\n" + str(result) + "\n"
    _emit(
        args,
        text,
        {"verdict": "violation", "cycle": [list(step) for step in result.cycle]},
    )
    return EXIT_VERDICT


def cmd_locstrat(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    result = analysis.check_locally_stratified_bounded(g)
    if result.stratified:
        text = f"locally stratified up to depth {args.depth}: yes\n"
        obj = {
            "verdict": "stratified",
            "depth_bound": args.depth,
            "strata": result.strata,
            "count": result.count,
        }
    else:
        steps = ", ".join(f"{u} {rel} {v}" for u, rel, v in result.witness)
        text = (
            f"locally stratified up to depth {args.depth}: no\n"
            f"cycle through negation: {steps}\n"
        )
        obj = {
            "verdict": "violation",
            "depth_bound": args.depth,
            "cycle": [list(step) for step in result.witness],
        }
    _emit(args, text, obj)
    return EXIT_OK


def cmd_ext(args) -> int:
    tp = _load(args.file)
    g = _ground(tp, args.depth)
    _warn(g.notes)
    m = engine.minimum_model(g)
    report = analysis.check_extensional(tp, g, list(m.values), args.depth)
    lines = [f"extensional at depth {args.depth}: {'yes' if report.extensional else 'no'}"]
    lines.append(f"checked types: {', '.join(report.checked_types)}")
    if report.skipped_types:
        lines.append(f"types with empty universes: {', '.join(report.skipped_types)}")
    for v in report.violations:
        lines.append(str(v))
    for typ, a, b in report.vacuous:
        lines.append(f"note: {a} and {b} related at {typ} only vacuously")
    obj = {
        "verdict": "extensional" if report.extensional else "violation",
        "depth": report.depth,
        "checked_types": list(report.checked_types),
        "skipped_types": list(report.skipped_types),
        "witnesses": [
            {
                "type": v.typ,
                "subject": v.subject,
                "arguments": [v.arg_left, v.arg_right],
                "atoms": [{"atom": a, "value": val} for a, val in v.atoms],
            }
            for v in report.violations
        ],
        "vacuous": [list(entry) for entry in report.vacuous],
    }
    _emit(args, "\n".join(lines) + "\n", obj)
    return EXIT_OK if report.extensional else EXIT_VERDICT


# ---------------------------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopes",
        description="Higher-order logic programs with negation: checking, "
        "grounding, graded models, and extensionality analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, depth: bool = True) -> None:
        p.add_argument("file", help="program file (.hop)")
        if depth:
            p.add_argument(
                "--depth",
                "-k",
                type=int,
                default=3,
                help="ground term size bound (default 3)",
            )
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output shape"
        )
        p.add_argument("--out", help="write output to this file instead of stdout")

    common(sub.add_parser("check", help="parse and type-check"), depth=False)
    common(sub.add_parser("ground", help="print the bounded ground program"))
    p_model = sub.add_parser("model", help="graded minimum model")
    common(p_model)
    p_model.add_argument("--trace", action="store_true", help="print stage decisions")
    common(sub.add_parser("wf", help="well-founded (three-valued) model"))
    p_stable = sub.add_parser("stable", help="enumerate stable models")
    common(p_stable)
    p_stable.add_argument(
        "--max-atoms",
        type=int,
        default=classical.DEFAULT_STABLE_CAP,
        help="refuse to enumerate beyond this many atoms (default 24)",
    )
    p_stable.add_argument(
        "--ext", action="store_true", help="flag each model's extensionality"
    )
    common(sub.add_parser("stratify", help="predicate-level stratification"), depth=False)
    common(sub.add_parser("locstrat", help="ground-level stratification"))
    common(sub.add_parser("ext", help="extensionality of the minimum model"))
    return parser


_COMMANDS = {
    "check": cmd_check,
    "ground": cmd_ground,
    "model": cmd_model,
    "wf": cmd_wf,
    "stable": cmd_stable,
    "stratify": cmd_stratify,
    "locstrat": cmd_locstrat,
    "ext": cmd_ext,
}


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    if getattr(args, "depth", None) is not None and args.depth < 1:
        print("error: --depth must be at least 1", file=sys.stderr)
        return EXIT_FRONTEND
    try:
        return _COMMANDS[args.command](args)
    except _Failure as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code


def script_main() -> None:
    sys.exit(main())
