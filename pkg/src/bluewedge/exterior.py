"""Exterior algebra over a preset with sign element eps.

Elements are stored in normal form: basis keys are strictly increasing
index tuples, a generator swap contributes a factor eps (eps squared
absorbs to one), and repeated indices annihilate.  Coefficients are formal
sums, so the algebra sits over the semiring layer; grade-d coefficient
vectors embed via :func:`graded_vector`.

``hull_realize`` and ``idem_realize`` push an element into the signed
(classical) or unsigned (idempotent) reference algebras from
:mod:`bluewedge.oracles` by evaluating each coefficient sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .blueprints import (
    BlueprintError,
    BlueprintInstance,
    Decision,
    FormalSum,
    InstanceMismatchError,
    Scalar,
    hull_scalar,
    idem_collapse,
)
from .closure import ClosureBudget, decide_leq
from .oracles import (
    ClassicalExteriorElement,
    TropicalExteriorElement,
    ring_for_preset,
    semifield_for_preset,
)

__all__ = [
    "ExteriorElement",
    "normalize_wedge",
    "basis_monomial",
    "wedge",
    "grade",
    "grades_present",
    "graded_vector",
    "is_monoid_vector",
    "has_unit_coefficient",
    "is_non_unit_vector",
    "exterior_leq",
    "hull_realize",
    "idem_realize",
]


def _norm_terms(inst, n, terms) -> tuple:
    out = []
    items = terms.items() if isinstance(terms, Mapping) else terms
    for key, c in items:
        key = tuple(int(i) for i in key)
        if list(key) != sorted(set(key)) or any(not 1 <= i <= n for i in key):
            raise BlueprintError(f"bad basis key {key}")
        if isinstance(c, Scalar):
            c = c.as_sum()
        elif not isinstance(c, FormalSum):
            c = inst.sum_of(c if isinstance(c, (list, tuple)) else [c])
        if c.inst != inst:
            raise InstanceMismatchError("coefficient from a different instance")
        if not c.is_zero():
            out.append((key, c))
    out.sort(key=lambda kc: (len(kc[0]), kc[0]))
    if len({k for k, _ in out}) != len(out):
        raise BlueprintError("duplicate basis key")
    return tuple(out)


@dataclass(frozen=True)
class ExteriorElement:
    """Normal-form exterior element: sorted keys, formal-sum coefficients."""

    inst: BlueprintInstance
    n: int
    terms: tuple[tuple[tuple[int, ...], FormalSum], ...]

    @staticmethod
    def of(inst: BlueprintInstance, n: int, terms) -> "ExteriorElement":
        return ExteriorElement(inst, n, _norm_terms(inst, n, terms))

    @staticmethod
    def zero(inst: BlueprintInstance, n: int) -> "ExteriorElement":
        return ExteriorElement(inst, n, ())

    def coeff(self, key) -> FormalSum:
        key = tuple(key)
        for k, c in self.terms:
            if k == key:
                return c
        return FormalSum.zero(self.inst)

    def keys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(k for k, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        if self.inst != other.inst or self.n != other.n:
            raise InstanceMismatchError("cannot add across algebras")
        acc = {k: c for k, c in self.terms}
        for k, c in other.terms:
            acc[k] = acc[k] + c if k in acc else c
        return ExteriorElement.of(self.inst, self.n, acc)

    def scale(self, s) -> "ExteriorElement":
        return ExteriorElement.of(
            self.inst, self.n, {k: c.scale(s) for k, c in self.terms}
        )


def normalize_wedge(
    inst: BlueprintInstance,
    n: int,
    indices: Sequence[int],
    coeff: Scalar | Any | None = None,
) -> tuple[tuple[int, ...], Scalar] | None:
    """Normal form of a single wedge word ``coeff * e_{i1} ^ ... ^ e_{ik}``.

    Returns ``(sorted key, coeff * eps**inversions)`` or None when an index
    repeats (or the coefficient is zero), since such words vanish.
    """
    idx = [int(i) for i in indices]
    if any(not 1 <= i <= n for i in idx):
        raise BlueprintError(f"index outside 1..{n}")
    if coeff is None:
        coeff = inst.scalar(inst.one)
    elif not isinstance(coeff, Scalar):
        coeff = inst.scalar(coeff)
    if coeff.inst != inst:
        raise InstanceMismatchError("coefficient from a different instance")
    if len(set(idx)) != len(idx):
        return None
    inversions = sum(
        1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b]
    )
    value = coeff.value
    if inversions % 2:
        value = inst.mul(value, inst.eps)
    if inst.is_zero(value):
        return None
    return tuple(sorted(idx)), Scalar(inst, value)


def basis_monomial(
    inst: BlueprintInstance, n: int, indices: Sequence[int], coeff=None
) -> ExteriorElement:
    """Exterior element of a single wedge word, normalized."""
    norm = normalize_wedge(inst, n, indices, coeff)
    if norm is None:
        return ExteriorElement.zero(inst, n)
    key, c = norm
    return ExteriorElement.of(inst, n, {key: c})


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    """Product in the exterior algebra.

    Keys sharing an index annihilate; interleaving the remaining indices
    into sorted order contributes eps per transposition, applied to the
    coefficient product term by term.
    """
    if x.inst != y.inst or x.n != y.n:
        raise InstanceMismatchError("wedge across different algebras")
    inst = x.inst
    eps = inst.eps
    acc: dict[tuple[int, ...], FormalSum] = {}
    for kx, a in x.terms:
        sx = set(kx)
        for ky, b in y.terms:
            if sx & set(ky):
                continue
            prod = a * b
            crossings = sum(1 for u in kx for v in ky if u > v)
            if crossings % 2:
                prod = prod.scale(eps)
            key = tuple(sorted(kx + ky))
            acc[key] = acc[key] + prod if key in acc else prod
    return ExteriorElement.of(inst, x.n, acc)


def grade(x: ExteriorElement, d: int) -> ExteriorElement:
    """Grade-d part."""
    return ExteriorElement.of(
        x.inst, x.n, {k: c for k, c in x.terms if len(k) == d}
    )


def grades_present(x: ExteriorElement) -> tuple[int, ...]:
    return tuple(sorted({len(k) for k, _ in x.terms}))


def graded_vector(
    inst: BlueprintInstance, n: int, d: int, coeffs: Mapping
) -> ExteriorElement:
    """Embed a coefficient family over the d-subsets of [n] as an element."""
    terms = {}
    for key, c in coeffs.items():
        key = tuple(int(i) for i in key)
        if len(key) != d:
            raise BlueprintError(f"key {key} is not a {d}-subset")
        terms[key] = c
    return ExteriorElement.of(inst, n, terms)


def _pure_grade(x: ExteriorElement, d: int | None) -> int:
    gr = grades_present(x)
    if d is None:
        if len(gr) > 1:
            raise BlueprintError("not a pure-grade element")
        return gr[0] if gr else 0
    if set(gr) - {d}:
        raise BlueprintError(f"element has grades {gr}, expected {d}")
    return d


def is_monoid_vector(x: ExteriorElement, d: int | None = None) -> bool:
    """True when x is a grade-d coefficient vector with monoid coefficients.

    Monoid coefficients means every stored coefficient is a single term
    (absent keys carry zero, which also belongs to the monoid).
    """
    _pure_grade(x, d)
    return all(len(c) == 1 for _, c in x.terms)


def has_unit_coefficient(x: ExteriorElement) -> bool:
    return any(
        len(c) == 1 and x.inst.is_unit_value(c.terms[0]) for _, c in x.terms
    )


def is_non_unit_vector(x: ExteriorElement, d: int | None = None) -> bool:
    """Monoid vector whose coefficients are all non-units (zero included)."""
    return is_monoid_vector(x, d) and not has_unit_coefficient(x)


def exterior_leq(
    x: ExteriorElement,
    y: ExteriorElement,
    budget: ClosureBudget | None = None,
) -> Decision:
    """Componentwise order on coefficients; Fails dominates Unknown."""
    if x.inst != y.inst or x.n != y.n:
        raise InstanceMismatchError("order across different algebras")
    saw_unknown = False
    for key in sorted(set(x.keys()) | set(y.keys()), key=lambda k: (len(k), k)):
        d = decide_leq(x.inst, x.coeff(key), y.coeff(key), budget=budget)
        if d is Decision.FAILS:
            return Decision.FAILS
        if d is Decision.UNKNOWN:
            saw_unknown = True
    return Decision.UNKNOWN if saw_unknown else Decision.HOLDS


def hull_realize(x: ExteriorElement) -> ClassicalExteriorElement:
    """Evaluate coefficients in the underlying field (field presets).

    Collapsing every formal sum to its field value turns the eps-signed
    algebra into the usual signed exterior algebra.
    """
    ring = ring_for_preset(x.inst)
    return ClassicalExteriorElement.of(
        ring, x.n, {k: hull_scalar(x.inst, c) for k, c in x.terms}
    )


def idem_realize(x: ExteriorElement) -> TropicalExteriorElement:
    """Evaluate coefficients in the idempotent semifield (idempotent presets).

    Identifying 1 + 1 with 1 collapses each coefficient multiset to its
    semifield sum and lands in the unsigned tropical algebra.
    """
    sf = semifield_for_preset(x.inst)
    return TropicalExteriorElement.of(
        sf, x.n, {k: idem_collapse(x.inst, c) for k, c in x.terms}
    )


def all_subset_keys(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographic d-subsets of 1..n (shared key order everywhere)."""
    return tuple(combinations(range(1, n + 1), d))
