"""Independent reference implementations used for differential testing.

Everything here is built on plain ring/semifield arithmetic, not on the
formal-sum layer: a signed exterior product over a field, an unsigned
(symmetric) one over an idempotent semifield, the basis-exchange axiom,
the dropped-term test for tropical Pluecker relations, and a row-reduced
enumeration of subspaces over a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Iterable, Mapping

from .blueprints import BlueprintError, BlueprintInstance

__all__ = [
    "ModRing",
    "RationalRing",
    "BooleanSemifield",
    "MaxPlusSemifield",
    "ClassicalExteriorElement",
    "TropicalExteriorElement",
    "classical_wedge",
    "tropical_wedge",
    "basis_exchange_check",
    "tropical_plucker_check",
    "subspace_plucker_enumerate",
    "basis_exchange_support_sweep",
    "ring_for_preset",
    "semifield_for_preset",
]


@dataclass(frozen=True)
class ModRing:
    p: int

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def coerce(self, v):
        return int(v) % self.p


@dataclass(frozen=True)
class RationalRing:
    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def coerce(self, v):
        return Fraction(v)


@dataclass(frozen=True)
class BooleanSemifield:
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def coerce(self, v):
        v = int(v)
        if v not in (0, 1):
            raise BlueprintError(f"not a boolean semifield value: {v!r}")
        return v


@dataclass(frozen=True)
class MaxPlusSemifield:
    """Rationals with -infinity (None) as zero; plus is max, times is +."""

    @property
    def zero(self):
        return None

    @property
    def one(self):
        return Fraction(0)

    def add(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return max(a, b)

    def mul(self, a, b):
        if a is None or b is None:
            return None
        return a + b

    def coerce(self, v):
        return None if v is None else Fraction(v)


def ring_for_preset(inst: BlueprintInstance):
    d = inst.descriptor()
    if d["preset"] == "gf":
        return ModRing(d["p"])
    if d["preset"] == "rational":
        return RationalRing()
    raise BlueprintError(f"{inst.name()} has no associated ring")


def semifield_for_preset(inst: BlueprintInstance):
    d = inst.descriptor()
    if d["preset"] == "boolean":
        return BooleanSemifield()
    if d["preset"] == "maxplus":
        return MaxPlusSemifield()
    raise BlueprintError(f"{inst.name()} has no associated semifield")


def _norm_graded_terms(alg, n, terms) -> tuple:
    out = []
    items = terms.items() if isinstance(terms, Mapping) else terms
    for key, val in items:
        key = tuple(int(i) for i in key)
        if any(not 1 <= i <= n for i in key) or list(key) != sorted(set(key)):
            raise BlueprintError(f"bad basis key {key}")
        val = alg.coerce(val) if not _is_zero(alg, val) else alg.zero
        if not _is_zero(alg, val):
            out.append((key, val))
    out.sort(key=lambda kv: (len(kv[0]), kv[0]))
    if len({k for k, _ in out}) != len(out):
        raise BlueprintError("duplicate basis key")
    return tuple(out)


def _is_zero(alg, v) -> bool:
    return v == alg.zero or v is alg.zero


@dataclass(frozen=True)
class ClassicalExteriorElement:
    """Exterior-algebra element with coefficients in a ring."""

    ring: Any
    n: int
    terms: tuple

    @staticmethod
    def of(ring, n, terms) -> "ClassicalExteriorElement":
        return ClassicalExteriorElement(ring, n, _norm_graded_terms(ring, n, terms))

    def coeff(self, key) -> Any:
        key = tuple(key)
        for k, v in self.terms:
            if k == key:
                return v
        return self.ring.zero

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class TropicalExteriorElement:
    """Exterior-algebra element with coefficients in an idempotent semifield."""

    semifield: Any
    n: int
    terms: tuple

    @staticmethod
    def of(semifield, n, terms) -> "TropicalExteriorElement":
        return TropicalExteriorElement(
            semifield, n, _norm_graded_terms(semifield, n, terms)
        )

    def coeff(self, key) -> Any:
        key = tuple(key)
        for k, v in self.terms:
            if k == key:
                return v
        return self.semifield.zero

    def is_zero(self) -> bool:
        return not self.terms


def _cross_inversions(left: tuple, right: tuple) -> int:
    return sum(1 for a in left for b in right if a > b)


def classical_wedge(
    x: ClassicalExteriorElement, y: ClassicalExteriorElement
) -> ClassicalExteriorElement:
    """Signed wedge: repeated indices vanish, transpositions flip sign."""
    if x.ring != y.ring or x.n != y.n:
        raise BlueprintError("wedge across different algebras")
    ring = x.ring
    acc: dict[tuple, Any] = {}
    for kx, a in x.terms:
        sx = set(kx)
        for ky, b in y.terms:
            if sx & set(ky):
                continue
            key = tuple(sorted(kx + ky))
            val = ring.mul(a, b)
            if _cross_inversions(kx, ky) % 2:
                val = ring.neg(val)
            acc[key] = ring.add(acc[key], val) if key in acc else val
    return ClassicalExteriorElement.of(ring, x.n, acc)


def tropical_wedge(
    x: TropicalExteriorElement, y: TropicalExteriorElement
) -> TropicalExteriorElement:
    """Unsigned wedge: repeated indices vanish, no sign, idempotent sum."""
    if x.semifield != y.semifield or x.n != y.n:
        raise BlueprintError("wedge across different algebras")
    sf = x.semifield
    acc: dict[tuple, Any] = {}
    for kx, a in x.terms:
        sx = set(kx)
        for ky, b in y.terms:
            if sx & set(ky):
                continue
            key = tuple(sorted(kx + ky))
            val = sf.mul(a, b)
            acc[key] = sf.add(acc[key], val) if key in acc else val
    return TropicalExteriorElement.of(sf, x.n, acc)


def basis_exchange_check(family: Iterable[Iterable[int]]) -> bool:
    """Matroid basis-exchange axiom on a nonempty equicardinal set family."""
    fam = {frozenset(b) for b in family}
    if not fam:
        raise BlueprintError("empty family")
    sizes = {len(b) for b in fam}
    if len(sizes) != 1:
        raise BlueprintError("family members differ in size")
    for a_set in fam:
        for b_set in fam:
            for a in a_set - b_set:
                base = a_set - {a}
                if not any(base | {b} in fam for b in b_set - a_set):
                    return False
    return True


def tropical_plucker_check(v: TropicalExteriorElement, d: int | None = None) -> bool:
    """Dropped-term test over an idempotent semifield.

    For every (d+1)-set A and (d-1)-set X, the sum over ``i in A - X`` of
    ``v[A - i] * v[X + i]`` must be unchanged when any single term is
    dropped.  Requires a nonzero pure-grade element.
    """
    if v.is_zero():
        raise BlueprintError("zero element")
    grades = {len(k) for k, _ in v.terms}
    if d is None:
        if len(grades) != 1:
            raise BlueprintError("not a pure-grade element")
        d = grades.pop()
    elif grades - {d}:
        raise BlueprintError("not a pure-grade element")
    sf = v.semifield
    n = v.n
    if d < 1 or d >= n:
        return True
    ground = range(1, n + 1)
    for a_key in combinations(ground, d + 1):
        a_set = set(a_key)
        for x_key in combinations(ground, d - 1):
            x_set = set(x_key)
            idxs = sorted(a_set - x_set)
            terms = []
            for i in idxs:
                left = v.coeff(tuple(sorted(a_set - {i})))
                right = v.coeff(tuple(sorted(x_set | {i})))
                terms.append(sf.mul(left, right))
            total = sf.zero
            for t in terms:
                total = sf.add(total, t)
            for skip in range(len(terms)):
                dropped = sf.zero
                for j, t in enumerate(terms):
                    if j != skip:
                        dropped = sf.add(dropped, t)
                if dropped != total:
                    return False
    return True


def _det_mod(rows: list[list[int]], p: int) -> int:
    """Determinant of a small square matrix over GF(p)."""
    m = [row[:] for row in rows]
    size = len(m)
    det = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = (det * m[col][col]) % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, size):
            factor = (m[r][col] * inv) % p
            if factor:
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[col])]
    return det % p


def _rref_matrices(p: int, n: int, d: int):
    """Yield every d x n row-reduced echelon matrix of rank d over GF(p)."""
    for pivots in combinations(range(n), d):
        free = [
            (r, c)
            for r in range(d)
            for c in range(n)
            if c not in pivots and c > pivots[r]
        ]
        for assignment in product(range(p), repeat=len(free)):
            mat = [[0] * n for _ in range(d)]
            for r, c in zip(range(d), pivots):
                mat[r][c] = 1
            for (r, c), val in zip(free, assignment):
                mat[r][c] = val
            yield mat


def subspace_plucker_enumerate(p: int, n: int, d: int) -> frozenset:
    """Canonical maximal-minor classes of all rank-d subspaces of GF(p)^n."""
    from .matroids import GPFunction, canonical_class
    from .blueprints import make_preset

    inst = make_preset("gf", p)
    out = set()
    for mat in _rref_matrices(p, n, d):
        values = {}
        for key in combinations(range(1, n + 1), d):
            sub = [[mat[r][c - 1] for c in key] for r in range(d)]
            values[key] = _det_mod(sub, p)
        gp = GPFunction.of(inst, n, d, values)
        out.add(canonical_class(gp))
    return frozenset(out)


def basis_exchange_support_sweep(n: int, d: int):
    """Exchange-axiom verdict for every 0/1 family of d-subsets of [n].

    Returns a boolean array indexed by support bitmask over the
    lexicographic list of d-subsets; the empty family is False.
    """
    from . import _kernels

    return _kernels.exchange_sweep(n, d).astype(bool)
