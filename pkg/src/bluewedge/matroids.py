"""Grassmann-Pluecker functions over a preset and the vector cryptomorphism.

A GP function assigns a monoid value to every d-subset of [n], takes a
unit somewhere, and satisfies ``0 <= sum`` for every exchange relation:
for each (d-1)-subset X and (d+1)-subset Y the relation collects the
terms ``eps^k * f(X + i_k) * f(Y - i_k)`` over the positions ``i_k`` of Y
outside X (k is the 1-based position of ``i_k`` in Y).  All (X, Y) pairs
count, including those with X not contained in Y; for d = 0 and d = n the
relation universe is empty and only the unit condition remains.

The same relations read off a grade-d coefficient vector make the
cryptomorphism: vectors with monoid coefficients and a unit coefficient
correspond bijectively to GP functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .blueprints import (
    BlueprintError,
    BlueprintInstance,
    FormalSum,
    InstanceMismatchError,
    Scalar,
    make_preset,
)
from .exterior import (
    ExteriorElement,
    graded_vector,
    has_unit_coefficient,
    is_monoid_vector,
)

__all__ = [
    "GPFunction",
    "RelationWitness",
    "PluckerReport",
    "CapExceededError",
    "pair_contraction",
    "plucker_relation_sum",
    "relation_universe",
    "is_gp_function",
    "is_plucker_vector",
    "gp_from_vector",
    "vector_from_gp",
    "canonical_class",
    "gp_equivalent",
    "enumerate_gp",
    "realize_from_matrix",
    "support_family",
    "gp_from_support",
    "boolean_gp_support_sweep",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 1 << 20


class CapExceededError(BlueprintError):
    """Enumeration space larger than the configured cap."""


def _subset_keys(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(1, n + 1), d))


@dataclass(frozen=True)
class GPFunction:
    """Total map from the d-subsets of [n] into a preset's monoid."""

    inst: BlueprintInstance
    n: int
    d: int
    values: tuple  # ((key, payload), ...) in lexicographic key order

    @staticmethod
    def of(inst: BlueprintInstance, n: int, d: int, values: Mapping) -> "GPFunction":
        if not 0 <= d <= n:
            raise BlueprintError(f"rank {d} outside 0..{n}")
        keys = _subset_keys(n, d)
        norm = {}
        for key, v in values.items():
            try:
                key = tuple(int(i) for i in key)
            except (TypeError, ValueError):
                raise BlueprintError(f"bad subset key {key!r}") from None
            if isinstance(v, Scalar):
                if v.inst != inst:
                    raise InstanceMismatchError("value from a different instance")
                v = v.value
            norm[key] = inst.coerce(v)
        missing = [k for k in keys if k not in norm]
        extra = [k for k in norm if k not in set(keys)]
        if missing or extra:
            raise BlueprintError(
                f"values must cover the {len(keys)} d-subsets exactly"
                f" (missing {missing[:3]}, extra {extra[:3]})"
            )
        return GPFunction(inst, n, d, tuple((k, norm[k]) for k in keys))

    def value(self, key) -> Scalar:
        key = tuple(key)
        for k, v in self.values:
            if k == key:
                return Scalar(self.inst, v)
        raise KeyError(key)

    def payloads(self) -> dict[tuple[int, ...], Any]:
        return {k: v for k, v in self.values}

    def has_unit(self) -> bool:
        return any(self.inst.is_unit_value(v) for _, v in self.values)


@dataclass(frozen=True)
class RelationWitness:
    """One failing (or undecided) exchange relation and its term multiset."""

    X: tuple[int, ...]
    Y: tuple[int, ...]
    sum: FormalSum


@dataclass(frozen=True)
class PluckerReport:
    """Verdict plus witnesses; verdict None means some relation undecided."""

    verdict: bool | None
    witnesses: tuple[RelationWitness, ...] = ()
    unknowns: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    unit_found: bool = True


def _term_parity(X: tuple, k: int, ik: int) -> bool:
    """Sign parity of one exchange term: odd means a factor of eps.

    ``k`` is the 1-based position of ``ik`` in the sorted large set; the
    entries of X above ``ik`` add the reordering cost of inserting ``ik``
    into X in sorted position.
    """
    return (k + sum(1 for x in X if x > ik)) % 2 == 1


def pair_contraction(
    inst: BlueprintInstance,
    X: Sequence[int],
    Y: Sequence[int],
    I: Sequence[int],
    J: Sequence[int],
) -> Scalar:
    """Pairing coefficient of basis keys (I, J) against the pair (X, Y).

    Nonzero exactly when ``I == X + {i_k}`` and ``J == Y - {i_k}`` for the
    k-th smallest element ``i_k`` of Y; the value is then ``eps`` raised to
    k plus the number of entries of X above ``i_k``.
    """
    X, Y, I, J = (tuple(sorted(int(v) for v in s)) for s in (X, Y, I, J))
    for k, ik in enumerate(Y, start=1):
        if ik in X:
            continue
        if tuple(sorted(X + (ik,))) == I and tuple(v for v in Y if v != ik) == J:
            return Scalar(inst, inst.eps if _term_parity(X, k, ik) else inst.one)
    return Scalar(inst, inst.zero)


@lru_cache(maxsize=None)
def relation_universe(
    n: int, d: int
) -> tuple[tuple[tuple[int, ...], tuple[int, ...], tuple], ...]:
    """All (X, Y, terms) with X a (d-1)-subset, Y a (d+1)-subset of [n].

    ``terms`` lists ``(odd_sign, I, J)`` for the surviving positions of Y:
    I = X + {i_k}, J = Y - {i_k}, sign parity per :func:`_term_parity`.
    """
    if d < 1 or d >= n:
        return ()
    ground = range(1, n + 1)
    out = []
    for X in combinations(ground, d - 1):
        xs = set(X)
        for Y in combinations(ground, d + 1):
            terms = []
            for k, ik in enumerate(Y, start=1):
                if ik in xs:
                    continue
                I = tuple(sorted(X + (ik,)))
                J = tuple(v for v in Y if v != ik)
                terms.append((_term_parity(X, k, ik), I, J))
            out.append((X, Y, tuple(terms)))
    return tuple(out)


def _relation_terms(inst, lookup, terms) -> list:
    """Payload terms of one relation sum; zeros dropped."""
    eps = inst.eps
    vals = []
    for odd, I, J in terms:
        a = lookup(I)
        if inst.is_zero(a):
            continue
        b = lookup(J)
        if inst.is_zero(b):
            continue
        v = inst.mul(a, b)
        if odd:
            v = inst.mul(v, eps)
        if not inst.is_zero(v):
            vals.append(v)
    return vals


def plucker_relation_sum(gp: GPFunction, X: Sequence[int], Y: Sequence[int]) -> FormalSum:
    """The exchange-relation sum attached to one (X, Y) pair."""
    X = tuple(sorted(int(v) for v in X))
    Y = tuple(sorted(int(v) for v in Y))
    if len(X) != gp.d - 1 or len(Y) != gp.d + 1:
        raise BlueprintError("X must be a (d-1)-subset and Y a (d+1)-subset")
    inst = gp.inst
    table = gp.payloads()
    xs = set(X)
    terms = []
    for k, ik in enumerate(Y, start=1):
        if ik in xs:
            continue
        I = tuple(sorted(X + (ik,)))
        J = tuple(v for v in Y if v != ik)
        terms.append((_term_parity(X, k, ik), I, J))
    return FormalSum.of(inst, _relation_terms(inst, table.__getitem__, terms))


def _relation_scan(inst, lookup, n, d, collect_witnesses=True, early_exit=False):
    """Run every relation; returns (ok, witnesses). ok is None if undecided."""
    witnesses = []
    for X, Y, terms in relation_universe(n, d):
        vals = _relation_terms(inst, lookup, terms)
        if inst.zero_leq_terms(tuple(sorted(vals, key=inst.sort_key))):
            continue
        if early_exit:
            return False, []
        if collect_witnesses:
            witnesses.append(RelationWitness(X, Y, FormalSum.of(inst, vals)))
    return (not witnesses), witnesses


def is_gp_function(gp: GPFunction) -> PluckerReport:
    """Full check: a unit value exists and every relation sum passes.

    Witnesses list every failing (X, Y) with its term multiset.
    """
    unit = gp.has_unit()
    table = gp.payloads()
    ok, wits = _relation_scan(gp.inst, table.__getitem__, gp.n, gp.d)
    return PluckerReport(
        verdict=bool(unit and ok), witnesses=tuple(wits), unit_found=unit
    )


def is_plucker_vector(v: ExteriorElement, d: int | None = None) -> PluckerReport:
    """Same relations read off a grade-d coefficient vector.

    Requires monoid coefficients (single-term sums) with some unit
    coefficient; absent keys contribute zero to the relation sums.
    """
    if d is None:
        grades = {len(k) for k, _ in v.terms}
        if len(grades) > 1:
            raise BlueprintError("not a pure-grade element")
        d = grades.pop() if grades else 0
    if not is_monoid_vector(v, d):
        return PluckerReport(verdict=False, unit_found=has_unit_coefficient(v))
    inst = v.inst
    table = {k: c.terms[0] for k, c in v.terms}
    unit = has_unit_coefficient(v)

    def lookup(key):
        return table.get(key, inst.zero)

    ok, wits = _relation_scan(inst, lookup, v.n, d)
    return PluckerReport(
        verdict=bool(unit and ok), witnesses=tuple(wits), unit_found=unit
    )


def gp_from_vector(v: ExteriorElement, n: int | None = None, d: int | None = None) -> GPFunction:
    """Read a monoid-coefficient vector as a total value table."""
    if n is None:
        n = v.n
    if d is None:
        grades = {len(k) for k, _ in v.terms}
        if len(grades) > 1:
            raise BlueprintError("not a pure-grade element")
        d = grades.pop() if grades else 0
    if not is_monoid_vector(v, d):
        raise BlueprintError("coefficients must be single monoid terms")
    inst = v.inst
    table = {k: c.terms[0] for k, c in v.terms}
    values = {key: table.get(key, inst.zero) for key in _subset_keys(n, d)}
    return GPFunction.of(inst, n, d, values)


def vector_from_gp(gp: GPFunction) -> ExteriorElement:
    """The coefficient vector of a value table (zero values dropped)."""
    return graded_vector(
        gp.inst, gp.n, gp.d, {k: gp.inst.sum_of([v]) for k, v in gp.values}
    )


def canonical_class(gp: GPFunction) -> GPFunction:
    """Unit-rescaling normal form.

    Divides by the value at the lexicographically first key holding a
    unit, so the result takes value one there; two functions are equivalent
    up to unit scaling exactly when their normal forms are equal.
    """
    inst = gp.inst
    for key, v in gp.values:
        if inst.is_unit_value(v):
            inv = inst.inv(v)
            return GPFunction.of(
                inst, gp.n, gp.d, {k: inst.mul(w, inv) for k, w in gp.values}
            )
    raise BlueprintError("no unit value to normalize at")


def gp_equivalent(a: GPFunction, b: GPFunction) -> bool:
    if (a.inst, a.n, a.d) != (b.inst, b.n, b.d):
        return False
    return canonical_class(a) == canonical_class(b)


def _check_candidate(inst, n, d, vals, keys) -> bool:
    if not any(inst.is_unit_value(v) for v in vals):
        return False
    table = dict(zip(keys, vals))
    ok, _ = _relation_scan(
        inst, table.__getitem__, n, d, collect_witnesses=False, early_exit=True
    )
    return bool(ok)


def _enumerate_range(descriptor, n, d, start, stop):
    """Canonical value tuples of GP functions among candidates [start, stop)."""
    inst = make_preset(descriptor)
    keys = _subset_keys(n, d)
    car = inst.carrier()
    base = len(car)
    width = len(keys)
    found = set()
    for idx in range(start, stop):
        digits = []
        rem = idx
        for _ in range(width):
            digits.append(car[rem % base])
            rem //= base
        vals = tuple(digits)
        if _check_candidate(inst, n, d, vals, keys):
            canon = canonical_class(GPFunction.of(inst, n, d, dict(zip(keys, vals))))
            found.add(tuple(v for _, v in canon.values))
    return found


def enumerate_gp(
    inst: BlueprintInstance,
    n: int,
    d: int,
    cap: int | None = DEFAULT_ENUM_CAP,
    jobs: int = 1,
) -> tuple[GPFunction, ...]:
    """All unit-rescaling classes of GP functions, lexicographically sorted.

    Exhausts every value table over a finite carrier; the space size
    ``|carrier| ** C(n, d)`` must not exceed ``cap`` (``None`` keeps the
    default cap).
    """
    if cap is None:
        cap = DEFAULT_ENUM_CAP
    car = inst.carrier()
    if car is None:
        raise BlueprintError(f"{inst.name()} has an infinite carrier")
    keys = _subset_keys(n, d)
    total = len(car) ** len(keys)
    if total > cap:
        raise CapExceededError(f"{total} candidate tables exceed cap {cap}")

    desc = inst.descriptor()
    if jobs > 1 and total >= 4096:
        from concurrent.futures import ProcessPoolExecutor

        chunk = (total + jobs - 1) // jobs
        spans = [(i, min(i + chunk, total)) for i in range(0, total, chunk)]
        found = set()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_enumerate_range, desc, n, d, lo, hi) for lo, hi in spans
            ]
            for fut in futures:
                found |= fut.result()
    else:
        found = _enumerate_range(desc, n, d, 0, total)

    classes = [
        GPFunction.of(inst, n, d, dict(zip(keys, vals))) for vals in found
    ]
    classes.sort(key=lambda g: tuple(inst.sort_key(v) for _, v in g.values))
    return tuple(classes)


def realize_from_matrix(inst: BlueprintInstance, rows: Sequence[Sequence]) -> GPFunction:
    """Maximal minors of a full-rank d x n matrix over a field preset."""
    if inst.kind != "field":
        raise BlueprintError(f"{inst.name()} is not a field preset")
    mat = [[inst.coerce(v) for v in row] for row in rows]
    d = len(mat)
    if d == 0 or any(len(row) != len(mat[0]) for row in mat):
        raise BlueprintError("matrix must be rectangular and nonempty")
    n = len(mat[0])
    if d > n:
        raise BlueprintError(f"need d <= n, got {d} x {n}")
    if _field_rank(inst, mat) < d:
        raise BlueprintError("matrix rank is below d")
    values = {}
    for key in _subset_keys(n, d):
        sub = [[mat[r][c - 1] for c in key] for r in range(d)]
        values[key] = _field_det(inst, sub)
    return GPFunction.of(inst, n, d, values)


def _field_rank(inst, rows) -> int:
    m = [row[:] for row in rows]
    nrow, ncol = len(m), len(m[0])
    rank = 0
    for col in range(ncol):
        pivot = next(
            (r for r in range(rank, nrow) if not inst.is_zero(m[r][col])), None
        )
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = inst.field_inv(m[rank][col])
        for r in range(nrow):
            if r != rank and not inst.is_zero(m[r][col]):
                factor = inst.mul(m[r][col], inv)
                neg = inst.field_neg(factor)
                m[r] = [
                    inst.field_add(a, inst.mul(neg, b)) for a, b in zip(m[r], m[rank])
                ]
        rank += 1
        if rank == nrow:
            break
    return rank


def _field_det(inst, rows) -> Any:
    m = [row[:] for row in rows]
    size = len(m)
    det = inst.one
    for col in range(size):
        pivot = next((r for r in range(col, size) if not inst.is_zero(m[r][col])), None)
        if pivot is None:
            return inst.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = inst.mul(det, inst.eps)  # eps realizes -1 in a field preset
        det = inst.mul(det, m[col][col])
        inv = inst.field_inv(m[col][col])
        for r in range(col + 1, size):
            if not inst.is_zero(m[r][col]):
                factor = inst.mul(m[r][col], inv)
                neg = inst.field_neg(factor)
                m[r] = [
                    inst.field_add(a, inst.mul(neg, b)) for a, b in zip(m[r], m[col])
                ]
    return det


# ---------------------------------------------------------------------------
# boolean support sweeps (compiled kernel with fallback)


def support_family(n: int, d: int, mask: int) -> tuple[tuple[int, ...], ...]:
    """The family of d-subsets selected by a support bitmask (lex order)."""
    keys = _subset_keys(n, d)
    return tuple(k for i, k in enumerate(keys) if (mask >> i) & 1)


def gp_from_support(
    inst: BlueprintInstance, n: int, d: int, family: Iterable[Iterable[int]]
) -> GPFunction:
    """0/1 value table with ones exactly on the given subsets."""
    chosen = {tuple(sorted(int(i) for i in b)) for b in family}
    values = {
        key: (inst.one if key in chosen else inst.zero) for key in _subset_keys(n, d)
    }
    return GPFunction.of(inst, n, d, values)


def boolean_gp_support_sweep(n: int, d: int):
    """GP verdict over the boolean preset for every 0/1 support family.

    Returns a boolean array indexed by bitmask over the lexicographic
    d-subsets; the empty family (mask 0) is False for lack of a unit.
    """
    from . import _kernels

    return _kernels.gp_support_sweep(n, d).astype(bool)
