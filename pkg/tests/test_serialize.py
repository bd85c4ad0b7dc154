"""JSON wire formats: canonical round-trips and schema validation."""

import json
from fractions import Fraction

import pytest

from bluewedge import (
    SchemaError,
    free_module,
    hull_realize,
    idem_realize,
    is_gp_function,
    make_preset,
    preset_names,
)
from bluewedge.exterior import ExteriorElement
from bluewedge.matroids import GPFunction, gp_from_support
from bluewedge.serialize import (
    exterior_from_json,
    exterior_to_json,
    formal_sum_from_json,
    formal_sum_to_json,
    gp_from_json,
    gp_to_json,
    module_element_from_json,
    module_element_to_json,
    preset_from_json,
    preset_to_json,
    realized_to_json,
    report_to_json,
)


def all_presets():
    out = []
    for name in preset_names():
        out.append(make_preset(name, 3) if name == "gf" else make_preset(name))
    return out


# ----------------------------------------------------------------- presets


@pytest.mark.parametrize("inst", all_presets(), ids=lambda i: i.descriptor()["preset"])
def test_preset_round_trip(inst):
    blob = preset_to_json(inst)
    assert preset_from_json(blob) == inst
    assert json.loads(json.dumps(blob)) == blob


def test_preset_from_bare_name():
    assert preset_from_json("boolean") == make_preset("boolean")


def test_preset_schema_errors():
    with pytest.raises(SchemaError):
        preset_from_json("no-such-preset")
    with pytest.raises(SchemaError):
        preset_from_json(42)
    with pytest.raises(SchemaError):
        preset_from_json({"preset": "gf"})  # modulus required
    with pytest.raises(SchemaError):
        preset_from_json({"preset": "gf", "p": 4})  # not prime


# ------------------------------------------------------------- formal sums


def test_formal_sum_round_trip_all_presets():
    for inst in all_presets():
        pool = [inst.zero, inst.one, inst.eps]
        car = inst.carrier()
        if car is not None:
            pool = list(car)
        x = inst.sum_of([v for v in pool if v != inst.zero])
        blob = formal_sum_to_json(x)
        assert all(isinstance(s, str) for s in blob)
        assert formal_sum_from_json(inst, blob) == x


def test_formal_sum_canonical_strings():
    gf3 = make_preset("gf", 3)
    assert formal_sum_to_json(gf3.sum_of([1, 2, 2])) == ["1", "2", "2"]
    mp = make_preset("maxplus")
    x = mp.sum_of([Fraction(-3, 2), None, Fraction(5)])
    # the bottom element is the additive identity, so it is never stored
    assert formal_sum_to_json(x) == ["q:-3/2", "q:5"]
    assert formal_sum_from_json(mp, ["q:-inf", "q:5"]) == mp.sum_of([Fraction(5)])
    rat = make_preset("rational")
    assert formal_sum_to_json(rat.sum_of([Fraction(1, 3)])) == ["q:1/3"]


def test_formal_sum_accepts_named_scalars():
    gf3 = make_preset("gf", 3)
    assert formal_sum_from_json(gf3, ["eps", "1"]) == gf3.sum_of([2, 1])


def test_formal_sum_schema_errors():
    gf3 = make_preset("gf", 3)
    with pytest.raises(SchemaError):
        formal_sum_from_json(gf3, {"not": "a list"})
    with pytest.raises(SchemaError):
        formal_sum_from_json(gf3, [1])  # numbers must be quoted
    with pytest.raises(SchemaError):
        formal_sum_from_json(gf3, ["q:1/2"])  # wrong preset syntax


# --------------------------------------------------------- module elements


def test_module_element_round_trip():
    f1pm = make_preset("f1pm")
    mod = free_module(f1pm, 4)
    x = mod.element({1: [f1pm.one, f1pm.eps], 3: f1pm.one})
    blob = module_element_to_json(x)
    assert blob == {"n": 4, "coeffs": {"1": ["1", "eps"], "3": ["1"]}}
    assert module_element_from_json(f1pm, blob) == x


def test_module_element_schema_errors():
    f1pm = make_preset("f1pm")
    with pytest.raises(SchemaError):
        module_element_from_json(f1pm, [])
    with pytest.raises(SchemaError):
        module_element_from_json(f1pm, {"coeffs": {}})  # n missing
    with pytest.raises(SchemaError):
        module_element_from_json(f1pm, {"n": 2, "coeffs": {"x": ["1"]}})
    with pytest.raises(SchemaError):
        module_element_from_json(f1pm, {"n": 2, "coeffs": {"5": ["1"]}})
    with pytest.raises(SchemaError):
        module_element_from_json(f1pm, {"n": 2, "coeffs": ["1"]})


# -------------------------------------------------------- exterior elements


def test_exterior_round_trip():
    f1pm = make_preset("f1pm")
    x = ExteriorElement.of(
        f1pm,
        4,
        {(1, 2): f1pm.sum_of([f1pm.eps]), (3,): f1pm.sum_of([f1pm.one, f1pm.one])},
    )
    blob = exterior_to_json(x)
    assert blob == {
        "n": 4,
        "terms": [  # grade-major term order
            {"I": [3], "coeff": ["1", "1"]},
            {"I": [1, 2], "coeff": ["eps"]},
        ],
    }
    assert exterior_from_json(f1pm, blob) == x


def test_exterior_round_trip_scalar_grade():
    gf3 = make_preset("gf", 3)
    x = ExteriorElement.of(gf3, 3, {(): gf3.sum_of([2])})
    blob = exterior_to_json(x)
    assert blob["terms"] == [{"I": [], "coeff": ["2"]}]
    assert exterior_from_json(gf3, blob) == x


def test_exterior_schema_errors():
    gf3 = make_preset("gf", 3)
    with pytest.raises(SchemaError):
        exterior_from_json(gf3, {"terms": []})  # n missing
    with pytest.raises(SchemaError):
        exterior_from_json(gf3, {"n": 3, "terms": {}})
    with pytest.raises(SchemaError):
        exterior_from_json(gf3, {"n": 3, "terms": ["nope"]})
    with pytest.raises(SchemaError):
        exterior_from_json(gf3, {"n": 3, "terms": [{"coeff": ["1"]}]})
    with pytest.raises(SchemaError):  # unsorted index tuple
        exterior_from_json(gf3, {"n": 3, "terms": [{"I": [2, 1], "coeff": ["1"]}]})
    with pytest.raises(SchemaError):  # index out of range
        exterior_from_json(gf3, {"n": 3, "terms": [{"I": [7], "coeff": ["1"]}]})
    with pytest.raises(SchemaError):  # non-integer index
        exterior_from_json(gf3, {"n": 3, "terms": [{"I": ["a"], "coeff": ["1"]}]})


# -------------------------------------------------------------- value tables


def test_gp_round_trip_with_embedded_preset():
    gf3 = make_preset("gf", 3)
    gp = gp_from_support(gf3, 4, 2, [(1, 2), (3, 4)])
    blob = gp_to_json(gp)
    assert blob["preset"] == {"preset": "gf", "p": 3}
    assert blob["n"] == 4 and blob["d"] == 2
    assert blob["values"]["1,2"] == "1"
    assert blob["values"]["1,3"] == "0"
    back = gp_from_json(blob)
    assert back == gp
    # explicit instance overrides the embedded preset requirement
    assert gp_from_json({k: v for k, v in blob.items() if k != "preset"}, inst=gf3) == gp


def test_gp_round_trip_degenerate_rank_zero():
    bo = make_preset("boolean")
    gp = GPFunction.of(bo, 3, 0, {(): bo.one})
    blob = gp_to_json(gp)
    assert blob["values"] == {"": "1"}
    assert gp_from_json(blob) == gp


def test_gp_schema_errors():
    gf3 = make_preset("gf", 3)
    ok = gp_to_json(gp_from_support(gf3, 3, 1, [(1,)]))
    with pytest.raises(SchemaError):
        gp_from_json("nope")
    with pytest.raises(SchemaError):
        gp_from_json({k: v for k, v in ok.items() if k != "preset"})  # no inst
    with pytest.raises(SchemaError):
        gp_from_json({**ok, "d": "one"})
    with pytest.raises(SchemaError):
        gp_from_json({**ok, "values": {"1,x": "1"}})
    with pytest.raises(SchemaError):
        gp_from_json({**ok, "values": {"1": 1}})  # unquoted scalar
    bad_cover = {**ok, "values": {"1": "1"}}  # keys 2,3 missing
    with pytest.raises(SchemaError):
        gp_from_json(bad_cover)


# ------------------------------------------------------------------ reports


def test_report_serialization_failure_case():
    f1pm = make_preset("f1pm")
    gp = gp_from_support(f1pm, 4, 2, [(i, j) for i in range(1, 4) for j in range(i + 1, 5)])
    blob = report_to_json(is_gp_function(gp))
    assert blob["verdict"] is False
    assert blob["unit_found"] is True
    assert blob["unknowns"] == []
    assert len(blob["witnesses"]) == 4
    w = blob["witnesses"][0]
    assert w["X"] == [1] and w["Y"] == [2, 3, 4]
    assert sorted(w["sum"]) == ["1", "eps", "eps"]
    json.dumps(blob)  # JSON-clean


def test_report_serialization_success_case():
    bo = make_preset("boolean")
    gp = gp_from_support(bo, 4, 2, [(1, 2), (1, 3), (2, 3)])
    blob = report_to_json(is_gp_function(gp))
    assert blob == {
        "verdict": True,
        "unit_found": True,
        "witnesses": [],
        "unknowns": [],
    }


# ------------------------------------------------------------ realizations


def test_realized_classical_element():
    gf3 = make_preset("gf", 3)
    x = ExteriorElement.of(gf3, 3, {(1, 2): gf3.sum_of([1, 1])})
    blob = realized_to_json(hull_realize(x))
    assert blob == {"n": 3, "terms": [{"I": [1, 2], "coeff": ["2"]}]}


def test_realized_rational_element():
    rat = make_preset("rational")
    x = ExteriorElement.of(rat, 2, {(1,): rat.sum_of([Fraction(1, 2), Fraction(1, 3)])})
    blob = realized_to_json(hull_realize(x))
    assert blob["terms"] == [{"I": [1], "coeff": ["q:5/6"]}]


def test_realized_tropical_element_with_bottom():
    mp = make_preset("maxplus")
    x = ExteriorElement.of(
        mp,
        2,
        {(1,): mp.sum_of([Fraction(2), Fraction(5)]), (2,): mp.sum_of([None])},
    )
    realized = idem_realize(x)
    blob = realized_to_json(realized)
    assert {"I": [1], "coeff": ["q:5"]} in blob["terms"]


def test_encoders_are_deterministic():
    gf3 = make_preset("gf", 3)
    gp1 = gp_from_support(gf3, 4, 2, [(1, 2), (3, 4)])
    gp2 = gp_from_support(gf3, 4, 2, [(3, 4), (1, 2)])
    a = json.dumps(gp_to_json(gp1), sort_keys=True)
    b = json.dumps(gp_to_json(gp2), sort_keys=True)
    assert a == b
