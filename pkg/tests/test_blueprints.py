"""Scalar/formal-sum laws, preset rules, and the exact order fragment."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bluewedge as bw
from bluewedge.blueprints import UnsupportedRelationError
from bluewedge.compare import scalar_pool

PRESETS = [
    bw.make_preset("f1pm"),
    bw.make_preset("gf", 2),
    bw.make_preset("gf", 3),
    bw.make_preset("rational"),
    bw.make_preset("boolean"),
    bw.make_preset("maxplus"),
]


def pool_strategy(inst):
    return st.sampled_from(scalar_pool(inst))


def sum_strategy(inst, max_terms=4):
    return st.lists(pool_strategy(inst), max_size=max_terms).map(
        lambda vs: inst.sum_of(vs)
    )


# ---------------------------------------------------------------------------
# preset construction


def test_preset_names_and_descriptors():
    assert bw.preset_names() == ("f1pm", "gf", "rational", "boolean", "maxplus")
    assert bw.make_preset("f1pm").descriptor() == {"preset": "f1pm"}
    assert bw.make_preset("gf", 5).descriptor() == {"preset": "gf", "p": 5}
    assert bw.make_preset({"preset": "gf", "p": 3}) is bw.make_preset("gf", 3)


def test_preset_cache_identity():
    assert bw.make_preset("boolean") is bw.make_preset("boolean")


@pytest.mark.parametrize("bad_p", [0, 1, 4, 6, 9, -3])
def test_gf_requires_prime(bad_p):
    with pytest.raises(bw.BlueprintError):
        bw.make_preset("gf", bad_p)


def test_gf_requires_parameter_and_others_reject_it():
    with pytest.raises(bw.BlueprintError):
        bw.make_preset("gf")
    with pytest.raises(bw.BlueprintError):
        bw.make_preset("boolean", 2)
    with pytest.raises(bw.BlueprintError):
        bw.make_preset("no-such-preset")


def test_distinguished_elements():
    f1 = bw.make_preset("f1pm")
    assert f1.mul(f1.eps, f1.eps) == f1.one
    gf3 = bw.make_preset("gf", 3)
    assert gf3.eps == 2  # additive inverse of 1
    for inst in PRESETS:
        if inst.kind == "idempotent":
            assert inst.eps == inst.one


# ---------------------------------------------------------------------------
# scalars


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_unit_inverse_roundtrip(inst):
    for v in scalar_pool(inst):
        s = inst.scalar(v)
        if s.is_unit():
            assert bw.scalar_mul(s, s.inverse()).value == inst.one
        else:
            with pytest.raises(bw.BlueprintError):
                s.inverse()


def test_scalar_mul_rejects_mixed_instances():
    a = bw.make_preset("f1pm").scalar(1)
    b = bw.make_preset("boolean").scalar(1)
    with pytest.raises(bw.InstanceMismatchError):
        bw.scalar_mul(a, b)


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_coerce_rejects_garbage(inst):
    with pytest.raises(bw.BlueprintError):
        inst.coerce(object())


# ---------------------------------------------------------------------------
# formal sums: semiring laws


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_sum_normal_form_drops_zeros_and_sorts(inst):
    pool = scalar_pool(inst)
    vals = [inst.zero] + pool + [inst.zero]
    s = inst.sum_of(vals)
    assert inst.zero not in [t for t in s.terms if inst.is_zero(t)] or not s.terms
    assert all(not inst.is_zero(t) for t in s.terms)
    assert list(s.terms) == sorted(s.terms, key=inst.sort_key)
    assert inst.sum_of(list(reversed(vals))) == s


@settings(max_examples=60, deadline=None)
@given(data=st.data())
@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_semiring_laws(inst, data):
    x = data.draw(sum_strategy(inst))
    y = data.draw(sum_strategy(inst))
    z = data.draw(sum_strategy(inst))
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    zero = inst.zero_sum()
    one = inst.sum_of([inst.one])
    assert x + zero == x
    assert x * one == x
    assert x * zero == zero


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_scale_matches_singleton_product(inst):
    for v in scalar_pool(inst):
        s = inst.sum_of(scalar_pool(inst))
        assert s.scale(v) == s * inst.sum_of([v])


def test_sum_add_rejects_mixed_instances():
    f1 = bw.make_preset("f1pm")
    gf2 = bw.make_preset("gf", 2)
    with pytest.raises(bw.InstanceMismatchError):
        bw.sum_add(f1.sum_of([1]), gf2.sum_of([1]))


# ---------------------------------------------------------------------------
# the exact order fragment


def test_leq_reflexive_on_equal_sums():
    for inst in PRESETS:
        s = inst.sum_of(scalar_pool(inst))
        assert bw.instance_leq(inst, s, s) is bw.Decision.HOLDS


def test_f1pm_zero_rule_balances_signs():
    f1 = bw.make_preset("f1pm")
    one, eps = f1.one, f1.eps
    zero = f1.zero_sum()
    assert bw.instance_leq(f1, zero, f1.sum_of([one, eps])) is bw.Decision.HOLDS
    assert bw.instance_leq(f1, zero, f1.sum_of([one, one, eps, eps])) is bw.Decision.HOLDS
    assert bw.instance_leq(f1, zero, f1.sum_of([one, one])) is bw.Decision.FAILS
    assert bw.instance_leq(f1, zero, f1.sum_of([one, eps, eps])) is bw.Decision.FAILS
    assert bw.instance_leq(f1, zero, zero) is bw.Decision.HOLDS


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_zero_rule_is_vanishing_sum(p):
    inst = bw.make_preset("gf", p)
    zero = inst.zero_sum()
    assert bw.instance_leq(inst, zero, inst.sum_of([1] * p)) is bw.Decision.HOLDS
    assert bw.instance_leq(inst, zero, inst.sum_of([1] * (p - 1))) is bw.Decision.FAILS
    assert bw.instance_leq(inst, zero, inst.sum_of([1, p - 1])) is bw.Decision.HOLDS


def test_rational_zero_rule():
    rat = bw.make_preset("rational")
    zero = rat.zero_sum()
    s = rat.sum_of([Fraction(1, 2), Fraction(1, 2), Fraction(-1)])
    assert bw.instance_leq(rat, zero, s) is bw.Decision.HOLDS
    assert bw.instance_leq(rat, zero, rat.sum_of([Fraction(1, 2)])) is bw.Decision.FAILS


def test_boolean_zero_rule_rejects_single_terms_only():
    b = bw.make_preset("boolean")
    zero = b.zero_sum()
    assert bw.instance_leq(b, zero, b.sum_of([])) is bw.Decision.HOLDS
    assert bw.instance_leq(b, zero, b.sum_of([1])) is bw.Decision.FAILS
    assert bw.instance_leq(b, zero, b.sum_of([1, 1])) is bw.Decision.HOLDS
    assert bw.instance_leq(b, zero, b.sum_of([1, 1, 1])) is bw.Decision.HOLDS


def test_maxplus_zero_rule_needs_repeated_maximum():
    mp = bw.make_preset("maxplus")
    zero = mp.zero_sum()
    two, three = Fraction(2), Fraction(3)
    assert bw.instance_leq(mp, zero, mp.sum_of([three, three, two])) is bw.Decision.HOLDS
    assert bw.instance_leq(mp, zero, mp.sum_of([three, two])) is bw.Decision.FAILS
    assert bw.instance_leq(mp, zero, mp.sum_of([three])) is bw.Decision.FAILS
    assert bw.instance_leq(mp, zero, mp.sum_of([two, two])) is bw.Decision.HOLDS


def test_unsupported_shapes_raise():
    f1 = bw.make_preset("f1pm")
    lhs = f1.sum_of([f1.one])
    rhs = f1.sum_of([f1.one, f1.one, f1.eps])
    with pytest.raises(UnsupportedRelationError):
        bw.instance_leq(f1, lhs, rhs)


def test_decision_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(bw.Decision.HOLDS)


# ---------------------------------------------------------------------------
# realization collapses


def test_hull_scalar_evaluates_in_the_field():
    rat = bw.make_preset("rational")
    assert bw.hull_scalar(rat, rat.sum_of([Fraction(2), Fraction(-1, 2)])) == Fraction(3, 2)
    gf3 = bw.make_preset("gf", 3)
    assert bw.hull_scalar(gf3, gf3.sum_of([1, 2, 2])) == 2
    assert bw.hull_scalar(gf3, gf3.zero_sum()) == 0
    with pytest.raises(bw.BlueprintError):
        bw.hull_scalar(bw.make_preset("boolean"), bw.make_preset("boolean").zero_sum())


def test_idem_collapse_takes_the_join():
    b = bw.make_preset("boolean")
    assert bw.idem_collapse(b, b.sum_of([1, 1])) == 1
    assert bw.idem_collapse(b, b.zero_sum()) == 0
    mp = bw.make_preset("maxplus")
    assert bw.idem_collapse(mp, mp.sum_of([Fraction(1), Fraction(3)])) == Fraction(3)
    assert bw.idem_collapse(mp, mp.zero_sum()) is None
    with pytest.raises(bw.BlueprintError):
        bw.idem_collapse(bw.make_preset("f1pm"), bw.make_preset("f1pm").zero_sum())


# ---------------------------------------------------------------------------
# scalar wire strings


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_scalar_string_roundtrip(inst):
    for v in scalar_pool(inst):
        assert inst.scalar_from_str(inst.scalar_to_str(v)) == v


def test_scalar_string_conventions():
    assert bw.make_preset("maxplus").scalar_to_str(None) == "q:-inf"
    assert bw.make_preset("maxplus").scalar_to_str(Fraction(-3, 2)) == "q:-3/2"
    assert bw.make_preset("rational").scalar_to_str(Fraction(1)) == "q:1"
    assert bw.make_preset("gf", 3).scalar_to_str(2) == "2"
    assert bw.make_preset("f1pm").scalar_to_str(2) == "eps"


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_named_scalar_strings_accepted_everywhere(inst):
    assert inst.scalar_from_str("0") == inst.zero
    assert inst.scalar_from_str("1") == inst.one
    assert inst.scalar_from_str("eps") == inst.eps


@pytest.mark.parametrize("inst", PRESETS, ids=lambda i: i.name())
def test_bad_scalar_strings_raise(inst):
    bads = ["", "wat", "q:", "q:1/0"]
    if inst.name() not in ("rational", "maxplus"):
        bads.append("1.5")  # fraction presets accept any Fraction syntax
    for bad in bads:
        with pytest.raises(bw.BlueprintError):
            inst.scalar_from_str(bad)
