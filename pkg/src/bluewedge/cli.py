"""Command-line front end.

Every subcommand reads JSON (inline, from a file, or from stdin via
``-``), writes deterministic JSON (sorted keys, two-space indent), and
exits with:

* 0 — success / verdict true / relation derived
* 1 — verdict false / mismatches found
* 2 — malformed input
* 3 — indeterminate (budget exhausted or undecided relation)
"""

from __future__ import annotations

import argparse
import json
import sys

from . import compare
from .blueprints import BlueprintError, Decision, make_preset
from .closure import ClosureBudget, decide_leq
from .exterior import hull_realize, idem_realize, wedge
from .matroids import enumerate_gp, is_gp_function, is_plucker_vector, realize_from_matrix
from .serialize import (
    SchemaError,
    exterior_from_json,
    exterior_to_json,
    formal_sum_from_json,
    formal_sum_to_json,
    gp_from_json,
    gp_to_json,
    preset_from_json,
    realized_to_json,
    report_to_json,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_BAD_INPUT = 2
EXIT_UNDECIDED = 3


def _load_payload(raw: str | None):
    """Resolve ``--in``: inline JSON, ``-`` for stdin, or a file path."""
    if raw is None:
        raise SchemaError("this command needs --in")
    text = raw
    if raw == "-":
        text = sys.stdin.read()
    elif not raw.lstrip().startswith(("{", "[", '"')):
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise SchemaError(f"cannot read {raw!r}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None


def _parse_preset(text: str | None):
    if text is None:
        raise SchemaError("this command needs --preset")
    text = text.strip()
    if text.startswith("{"):
        return preset_from_json(_load_payload(text))
    if ":" in text:
        name, _, arg = text.partition(":")
        try:
            param = int(arg)
        except ValueError:
            raise SchemaError(f"bad preset parameter {arg!r}") from None
        try:
            return make_preset(name, param)
        except BlueprintError as e:
            raise SchemaError(str(e)) from None
    return preset_from_json(text)


def _emit(obj, out_path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_exit(verdict) -> int:
    if verdict is None:
        return EXIT_UNDECIDED
    return EXIT_OK if verdict else EXIT_FALSE


def _expect_obj(payload, *fields):
    if not isinstance(payload, dict):
        raise SchemaError("input must be a JSON object")
    missing = [f for f in fields if f not in payload]
    if missing:
        raise SchemaError(f"missing fields: {missing}")
    return payload


# ---------------------------------------------------------------------------
# subcommands


def _cmd_wedge(args) -> int:
    inst = _parse_preset(args.preset)
    payload = _expect_obj(_load_payload(args.input), "x", "y")
    x = exterior_from_json(inst, payload["x"])
    y = exterior_from_json(inst, payload["y"])
    _emit(exterior_to_json(wedge(x, y)), args.out)
    return EXIT_OK


def _cmd_check_gp(args) -> int:
    inst = _parse_preset(args.preset) if args.preset else None
    gp = gp_from_json(_load_payload(args.input), inst)
    report = is_gp_function(gp)
    _emit(report_to_json(report), args.out)
    return _verdict_exit(report.verdict)


def _cmd_check_plucker(args) -> int:
    inst = _parse_preset(args.preset)
    v = exterior_from_json(inst, _load_payload(args.input))
    report = is_plucker_vector(v, args.grade)
    _emit(report_to_json(report), args.out)
    return _verdict_exit(report.verdict)


def _cmd_enumerate_gp(args) -> int:
    inst = _parse_preset(args.preset)
    classes = enumerate_gp(inst, args.n, args.d, cap=args.cap, jobs=args.jobs)
    out = {
        "preset": inst.descriptor(),
        "n": args.n,
        "d": args.d,
        "count": len(classes),
        "classes": [gp_to_json(gp)["values"] for gp in classes],
    }
    _emit(out, args.out)
    return EXIT_OK


def _cmd_realize(args) -> int:
    inst = _parse_preset(args.preset)
    payload = _expect_obj(_load_payload(args.input), "rows")
    rows = payload["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("rows must be a list of lists")
    parsed = [
        [inst.scalar_from_str(v) if isinstance(v, str) else v for v in row]
        for row in rows
    ]
    gp = realize_from_matrix(inst, parsed)
    _emit(gp_to_json(gp), args.out)
    return EXIT_OK


def _cmd_hull(args) -> int:
    inst = _parse_preset(args.preset)
    x = exterior_from_json(inst, _load_payload(args.input))
    _emit(realized_to_json(hull_realize(x)), args.out)
    return EXIT_OK


def _cmd_idem(args) -> int:
    inst = _parse_preset(args.preset)
    x = exterior_from_json(inst, _load_payload(args.input))
    _emit(realized_to_json(idem_realize(x)), args.out)
    return EXIT_OK


def _cmd_oracle_compare(args) -> int:
    report = compare.run_all(seed=args.seed, jobs=args.jobs)
    _emit(report, args.out)
    return EXIT_OK if report["total_mismatches"] == 0 else EXIT_FALSE


def _parse_budget(text: str | None) -> ClosureBudget | None:
    if text is None:
        return None
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return ClosureBudget(max_terms=int(parts[0]))
        if len(parts) == 2:
            return ClosureBudget(max_terms=int(parts[0]), max_states=int(parts[1]))
    except ValueError:
        pass
    raise SchemaError(f"bad budget {text!r}; use MAXTERMS or MAXTERMS,MAXSTATES")


def _cmd_closure(args) -> int:
    inst = _parse_preset(args.preset)
    payload = _expect_obj(_load_payload(args.input), "lhs", "rhs")
    lhs = formal_sum_from_json(inst, payload["lhs"])
    rhs = formal_sum_from_json(inst, payload["rhs"])
    decision = decide_leq(inst, lhs, rhs, budget=_parse_budget(args.budget))
    _emit(
        {
            "decision": decision.name.lower(),
            "lhs": formal_sum_to_json(lhs),
            "rhs": formal_sum_to_json(rhs),
        },
        args.out,
    )
    if decision is Decision.HOLDS:
        return EXIT_OK
    if decision is Decision.FAILS:
        return EXIT_FALSE
    return EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bluewedge",
        description="Exterior algebra, exchange relations, and order closure "
        "over pointed-monoid presets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, preset_required=True, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument(
            "--preset",
            required=preset_required,
            help="preset name, NAME:P, or a JSON descriptor",
        )
        if needs_input:
            p.add_argument(
                "--in",
                dest="input",
                required=True,
                help="inline JSON, a file path, or - for stdin",
            )
        p.add_argument("--out", help="output path (default: stdout)")
        return p

    add("wedge", _cmd_wedge, "multiply two exterior elements")

    p = sub.add_parser("check-gp", help="check a value table against all exchange relations")
    p.set_defaults(func=_cmd_check_gp)
    p.add_argument("--preset", help="override the preset recorded in the input")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")

    p = add("check-plucker", _cmd_check_plucker, "check a coefficient vector's relations")
    p.add_argument("--grade", type=int, default=None, help="expected grade d")

    p = sub.add_parser("enumerate-gp", help="enumerate relation-passing classes")
    p.set_defaults(func=_cmd_enumerate_gp)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--preset", required=True)
    p.add_argument("--cap", type=int, default=None, help="search-space size cap")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    add("realize", _cmd_realize, "maximal minors of a full-rank matrix")
    add("hull", _cmd_hull, "field realization of an exterior element")
    add("idem", _cmd_idem, "idempotent realization of an exterior element")

    p = sub.add_parser("oracle-compare", help="differential run against the reference implementations")
    p.set_defaults(func=_cmd_oracle_compare)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = add("closure", _cmd_closure, "decide lhs <= rhs in the generated order")
    p.add_argument("--budget", help="MAXTERMS or MAXTERMS,MAXSTATES")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, BlueprintError) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, None)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
