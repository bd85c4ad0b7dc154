"""Exterior normal form, wedge laws, grading, and realization maps."""

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bluewedge as bw
from bluewedge.compare import random_exterior, scalar_pool
from bluewedge.exterior import ExteriorElement, all_subset_keys, exterior_leq

F1 = bw.make_preset("f1pm")
GF3 = bw.make_preset("gf", 3)
RAT = bw.make_preset("rational")
BOOL = bw.make_preset("boolean")
MP = bw.make_preset("maxplus")

PRESETS = [F1, bw.make_preset("gf", 2), GF3, RAT, BOOL, MP]


# ---------------------------------------------------------------------------
# normalization


def test_normalize_wedge_examples():
    key, c = bw.normalize_wedge(F1, 4, (1, 2))
    assert key == (1, 2) and c.value == F1.one
    key, c = bw.normalize_wedge(F1, 4, (2, 1))
    assert key == (1, 2) and c.value == F1.eps
    key, c = bw.normalize_wedge(F1, 4, (3, 1, 2))
    assert key == (1, 2, 3) and c.value == F1.one  # two inversions
    assert bw.normalize_wedge(F1, 4, (1, 1)) is None
    assert bw.normalize_wedge(F1, 4, (2, 3, 2)) is None
    assert bw.normalize_wedge(F1, 4, (1,), coeff=F1.zero) is None
    key, c = bw.normalize_wedge(F1, 4, ())
    assert key == () and c.value == F1.one


def test_normalize_wedge_range_check():
    with pytest.raises(bw.BlueprintError):
        bw.normalize_wedge(F1, 4, (0, 1))
    with pytest.raises(bw.BlueprintError):
        bw.normalize_wedge(F1, 4, (5,))


def _brute_parity(idx):
    inv = 0
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                inv += 1
    return inv % 2


@settings(max_examples=300, deadline=None)
@given(
    idx=st.lists(st.integers(1, 6), max_size=6),
    preset=st.sampled_from(PRESETS),
)
def test_normalize_matches_bruteforce_inversions(idx, preset):
    got = bw.normalize_wedge(preset, 6, idx)
    if len(set(idx)) != len(idx):
        assert got is None
        return
    key, c = got
    assert key == tuple(sorted(idx))
    want = preset.eps if _brute_parity(idx) else preset.one
    assert c.value == want


def test_element_normal_form_and_equality():
    x = ExteriorElement.of(F1, 4, {(1, 2): F1.sum_of([F1.one]), (3,): F1.sum_of([F1.eps])})
    y = ExteriorElement.of(F1, 4, [((3,), F1.sum_of([F1.eps])), ((1, 2), F1.sum_of([F1.one]))])
    assert x == y
    assert x.keys() == ((3,), (1, 2))  # sorted by (grade, key)
    z = ExteriorElement.of(F1, 4, {(1, 2): F1.zero_sum()})
    assert z.is_zero()
    assert x.coeff((2, 4)).is_zero()


def test_element_rejects_bad_keys():
    with pytest.raises(bw.BlueprintError):
        ExteriorElement.of(F1, 4, {(2, 1): F1.sum_of([F1.one])})
    with pytest.raises(bw.BlueprintError):
        ExteriorElement.of(F1, 4, {(1, 5): F1.sum_of([F1.one])})
    with pytest.raises(bw.InstanceMismatchError):
        ExteriorElement.of(F1, 4, {(1,): GF3.sum_of([1])})


# ---------------------------------------------------------------------------
# wedge laws


def test_wedge_basis_examples():
    e1 = bw.basis_monomial(F1, 4, (1,))
    e2 = bw.basis_monomial(F1, 4, (2,))
    e12 = bw.wedge(e1, e2)
    assert e12.keys() == ((1, 2),)
    assert e12.coeff((1, 2)) == F1.sum_of([F1.one])
    e21 = bw.wedge(e2, e1)
    assert e21.coeff((1, 2)) == F1.sum_of([F1.eps])
    assert bw.wedge(e1, e1).is_zero()


def test_wedge_unit_element():
    unit = bw.basis_monomial(F1, 4, ())
    x = random_exterior(F1, 4, random.Random(3))
    assert bw.wedge(unit, x) == x
    assert bw.wedge(x, unit) == x


@settings(max_examples=40, deadline=None)
@given(data=st.data(), preset=st.sampled_from(PRESETS))
def test_wedge_associative(data, preset):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    x = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    y = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    z = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    assert bw.wedge(bw.wedge(x, y), z) == bw.wedge(x, bw.wedge(y, z))


@settings(max_examples=40, deadline=None)
@given(data=st.data(), preset=st.sampled_from(PRESETS))
def test_wedge_distributes_over_addition(data, preset):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    x = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    y = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    z = random_exterior(preset, 4, rng, max_keys=3, max_terms=2)
    assert bw.wedge(x, y + z) == bw.wedge(x, y) + bw.wedge(x, z)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), preset=st.sampled_from(PRESETS))
def test_grade_one_anticommutes(data, preset):
    """For grade-1 x, y: wedge(x,y) = eps * wedge(y,x) coefficientwise."""
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    pool = scalar_pool(preset)

    def vec():
        return ExteriorElement.of(
            preset,
            4,
            {(i,): preset.sum_of([rng.choice(pool)]) for i in range(1, 5)},
        )

    x, y = vec(), vec()
    left = bw.wedge(x, y)
    right = bw.wedge(y, x).scale(preset.eps)
    assert left == right


def test_wedge_cross_instance_rejected():
    with pytest.raises(bw.InstanceMismatchError):
        bw.wedge(bw.basis_monomial(F1, 4, (1,)), bw.basis_monomial(GF3, 4, (2,)))


# ---------------------------------------------------------------------------
# grading and vector predicates


def test_grades_and_projection():
    x = bw.basis_monomial(F1, 4, (1,)) + bw.basis_monomial(F1, 4, (2, 3))
    assert bw.grades_present(x) == (1, 2)
    assert bw.grade(x, 1).keys() == ((1,),)
    assert bw.grade(x, 0).is_zero()


def test_graded_vector_validates_keys():
    with pytest.raises(bw.BlueprintError):
        bw.graded_vector(F1, 4, 2, {(1,): F1.one})
    v = bw.graded_vector(F1, 4, 2, {k: F1.one for k in all_subset_keys(4, 2)})
    assert bw.grades_present(v) == (2,)


def test_monoid_and_unit_predicates():
    v = bw.graded_vector(F1, 4, 2, {(1, 2): F1.one, (3, 4): F1.eps})
    assert bw.is_monoid_vector(v)
    assert bw.has_unit_coefficient(v)
    assert not bw.is_non_unit_vector(v)

    w = bw.graded_vector(RAT, 4, 2, {(1, 2): Fraction(1)})
    two_terms = w + w  # coefficient 1+1 is a two-term sum
    assert not bw.is_monoid_vector(two_terms)

    z = ExteriorElement.zero(BOOL, 4)
    assert bw.is_monoid_vector(z)
    assert bw.is_non_unit_vector(z)

    mixed = bw.basis_monomial(F1, 4, (1,)) + bw.basis_monomial(F1, 4, (2, 3))
    with pytest.raises(bw.BlueprintError):
        bw.is_monoid_vector(mixed)


def test_all_subset_keys():
    assert all_subset_keys(4, 2) == tuple(combinations(range(1, 5), 2))
    assert all_subset_keys(3, 0) == ((),)


# ---------------------------------------------------------------------------
# componentwise order


def test_exterior_leq_componentwise():
    zero = ExteriorElement.zero(F1, 4)
    bal = ExteriorElement.of(F1, 4, {(1,): F1.sum_of([F1.one, F1.eps])})
    unbal = ExteriorElement.of(F1, 4, {(1,): F1.sum_of([F1.one, F1.one])})
    assert exterior_leq(zero, bal) is bw.Decision.HOLDS
    assert exterior_leq(zero, unbal) is bw.Decision.FAILS
    assert exterior_leq(bal, bal) is bw.Decision.HOLDS


def test_exterior_leq_unknown_component():
    one = ExteriorElement.of(F1, 4, {(1,): F1.sum_of([F1.one])})
    eps = ExteriorElement.of(F1, 4, {(1,): F1.sum_of([F1.eps])})
    assert exterior_leq(one, eps) is bw.Decision.UNKNOWN


# ---------------------------------------------------------------------------
# realization maps


def test_hull_realize_collapses_sums():
    x = ExteriorElement.of(
        GF3,
        4,
        {(1, 2): GF3.sum_of([1, 1]), (3, 4): GF3.sum_of([1, 2])},
    )
    h = bw.hull_realize(x)
    assert h.coeff((1, 2)) == 2
    assert h.coeff((3, 4)) == 0  # 1 + 2 vanishes mod 3


def test_idem_realize_collapses_to_join():
    x = ExteriorElement.of(
        MP,
        4,
        {(1,): MP.sum_of([Fraction(1), Fraction(3)])},
    )
    t = bw.idem_realize(x)
    assert t.coeff((1,)) == Fraction(3)


def test_realize_rejects_wrong_kind():
    with pytest.raises(bw.BlueprintError):
        bw.hull_realize(ExteriorElement.zero(BOOL, 3))
    with pytest.raises(bw.BlueprintError):
        bw.idem_realize(ExteriorElement.zero(GF3, 3))
