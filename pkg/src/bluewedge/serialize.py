"""JSON wire formats for presets, elements, value tables and reports.

Every encoder emits canonical content (sorted keys, canonical scalar
strings) so that equal values serialize to identical bytes; every decoder
validates shape and raises :class:`SchemaError` on malformed input.
"""

from __future__ import annotations

from typing import Any, Mapping

from .blueprints import (
    BlueprintError,
    BlueprintInstance,
    FormalSum,
    make_preset,
)
from .exterior import ExteriorElement
from .free_modules import FreeModuleElement
from .matroids import GPFunction, PluckerReport, RelationWitness

__all__ = [
    "SchemaError",
    "preset_to_json",
    "preset_from_json",
    "formal_sum_to_json",
    "formal_sum_from_json",
    "module_element_to_json",
    "module_element_from_json",
    "exterior_to_json",
    "exterior_from_json",
    "gp_to_json",
    "gp_from_json",
    "report_to_json",
    "realized_to_json",
]


class SchemaError(BlueprintError):
    """Malformed JSON payload."""


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def preset_to_json(inst: BlueprintInstance) -> dict:
    return dict(inst.descriptor())


def preset_from_json(obj: Any) -> BlueprintInstance:
    if isinstance(obj, str):
        try:
            return make_preset(obj)
        except BlueprintError as e:
            raise SchemaError(str(e)) from None
    _expect(isinstance(obj, dict), "preset must be a name or an object")
    try:
        return make_preset(obj)
    except BlueprintError as e:
        raise SchemaError(str(e)) from None


def formal_sum_to_json(x: FormalSum) -> list[str]:
    return [x.inst.scalar_to_str(t) for t in x.terms]


def formal_sum_from_json(inst: BlueprintInstance, obj: Any) -> FormalSum:
    _expect(isinstance(obj, list), "formal sum must be a list of scalar strings")
    vals = []
    for s in obj:
        _expect(isinstance(s, str), f"scalar must be a string, got {s!r}")
        try:
            vals.append(inst.scalar_from_str(s))
        except BlueprintError as e:
            raise SchemaError(str(e)) from None
    return inst.sum_of(vals)


def module_element_to_json(x: FreeModuleElement) -> dict:
    return {
        "n": x.n,
        "coeffs": {str(i): formal_sum_to_json(c) for i, c in x.coeffs},
    }


def module_element_from_json(inst: BlueprintInstance, obj: Any) -> FreeModuleElement:
    _expect(isinstance(obj, dict), "module element must be an object")
    _expect(isinstance(obj.get("n"), int), "missing integer field 'n'")
    coeffs = obj.get("coeffs", {})
    _expect(isinstance(coeffs, Mapping), "'coeffs' must be an object")
    parsed = {}
    for key, val in coeffs.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"bad basis index {key!r}") from None
        parsed[idx] = formal_sum_from_json(inst, val)
    try:
        return FreeModuleElement.of(inst, obj["n"], parsed)
    except BlueprintError as e:
        raise SchemaError(str(e)) from None


def exterior_to_json(x: ExteriorElement) -> dict:
    return {
        "n": x.n,
        "terms": [
            {"I": list(k), "coeff": formal_sum_to_json(c)} for k, c in x.terms
        ],
    }


def exterior_from_json(inst: BlueprintInstance, obj: Any) -> ExteriorElement:
    _expect(isinstance(obj, dict), "exterior element must be an object")
    _expect(isinstance(obj.get("n"), int), "missing integer field 'n'")
    raw = obj.get("terms", [])
    _expect(isinstance(raw, list), "'terms' must be a list")
    terms = []
    for entry in raw:
        _expect(isinstance(entry, dict), "each term must be an object")
        _expect(
            isinstance(entry.get("I"), list), "each term needs an index list 'I'"
        )
        terms.append(
            (tuple(entry["I"]), formal_sum_from_json(inst, entry.get("coeff", [])))
        )
    try:
        return ExteriorElement.of(inst, obj["n"], terms)
    except (BlueprintError, TypeError, ValueError) as e:
        raise SchemaError(str(e)) from None


def _key_to_str(key: tuple) -> str:
    return ",".join(str(i) for i in key)


def _key_from_str(s: str) -> tuple:
    if s == "":
        return ()
    try:
        return tuple(int(part) for part in s.split(","))
    except ValueError:
        raise SchemaError(f"bad subset key {s!r}") from None


def gp_to_json(gp: GPFunction) -> dict:
    return {
        "preset": preset_to_json(gp.inst),
        "n": gp.n,
        "d": gp.d,
        "values": {
            _key_to_str(k): gp.inst.scalar_to_str(v) for k, v in gp.values
        },
    }


def gp_from_json(obj: Any, inst: BlueprintInstance | None = None) -> GPFunction:
    _expect(isinstance(obj, dict), "value table must be an object")
    if inst is None:
        _expect("preset" in obj, "missing 'preset'")
        inst = preset_from_json(obj["preset"])
    _expect(isinstance(obj.get("n"), int), "missing integer field 'n'")
    _expect(isinstance(obj.get("d"), int), "missing integer field 'd'")
    values = obj.get("values")
    _expect(isinstance(values, Mapping), "'values' must be an object")
    parsed = {}
    for key, val in values.items():
        _expect(isinstance(val, str), f"scalar must be a string, got {val!r}")
        try:
            parsed[_key_from_str(key)] = inst.scalar_from_str(val)
        except BlueprintError as e:
            raise SchemaError(str(e)) from None
    try:
        return GPFunction.of(inst, obj["n"], obj["d"], parsed)
    except BlueprintError as e:
        raise SchemaError(str(e)) from None


def _witness_to_json(w: RelationWitness) -> dict:
    return {
        "X": list(w.X),
        "Y": list(w.Y),
        "sum": formal_sum_to_json(w.sum),
    }


def report_to_json(report: PluckerReport) -> dict:
    return {
        "verdict": report.verdict,
        "unit_found": report.unit_found,
        "witnesses": [_witness_to_json(w) for w in report.witnesses],
        "unknowns": [
            {"X": list(x), "Y": list(y)} for x, y in report.unknowns
        ],
    }


def realized_to_json(element) -> dict:
    """Classical/tropical realizations reuse the exterior schema.

    Ring values print as decimal integers or ``q:`` rationals; semifield
    values as ``0``/``1`` or ``q:`` rationals with ``q:-inf`` for bottom.
    """
    from fractions import Fraction

    def show(v):
        if v is None:
            return "q:-inf"
        if isinstance(v, Fraction):
            return f"q:{v}"
        return str(v)

    return {
        "n": element.n,
        "terms": [{"I": list(k), "coeff": [show(v)]} for k, v in element.terms],
    }
