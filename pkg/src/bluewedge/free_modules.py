"""Free modules over a preset, tensor products, and bilinear maps.

Elements of the rank-n free module are coefficient maps from basis indices
``1..n`` to formal sums; zero coefficients are never stored.  The module
order is componentwise.  ``direct_sum`` concatenates bases but remembers
the summand blocks: its underlying-set predicate is the wedge of the
summands' underlying sets (support inside a single block), while a plain
``free_module`` uses the product predicate (every coefficient a single
monoid term).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .blueprints import (
    BlueprintError,
    BlueprintInstance,
    Decision,
    FormalSum,
    InstanceMismatchError,
    Scalar,
)
from .closure import ClosureBudget, decide_leq

__all__ = [
    "FreeModule",
    "FreeModuleElement",
    "TensorElement",
    "free_module",
    "module_leq",
    "tensor",
    "direct_sum",
    "CorrespondenceReport",
    "bilinear_correspondence_check",
]


def _norm_coeffs(inst, n, coeffs) -> tuple[tuple[int, FormalSum], ...]:
    out = []
    for i, c in coeffs.items() if isinstance(coeffs, Mapping) else coeffs:
        i = int(i)
        if not 1 <= i <= n:
            raise BlueprintError(f"basis index {i} outside 1..{n}")
        if isinstance(c, Scalar):
            c = c.as_sum()
        elif not isinstance(c, FormalSum):
            c = inst.sum_of(c if isinstance(c, (list, tuple)) else [c])
        if c.inst != inst:
            raise InstanceMismatchError("coefficient from a different instance")
        if not c.is_zero():
            out.append((i, c))
    out.sort(key=lambda pair: pair[0])
    if len({i for i, _ in out}) != len(out):
        raise BlueprintError("duplicate basis index")
    return tuple(out)


@dataclass(frozen=True)
class FreeModuleElement:
    """Element of the rank-n free module: sparse coefficient tuple."""

    inst: BlueprintInstance
    n: int
    coeffs: tuple[tuple[int, FormalSum], ...]

    @staticmethod
    def of(inst: BlueprintInstance, n: int, coeffs) -> "FreeModuleElement":
        return FreeModuleElement(inst, n, _norm_coeffs(inst, n, coeffs))

    def coeff(self, i: int) -> FormalSum:
        for j, c in self.coeffs:
            if j == i:
                return c
        return FormalSum.zero(self.inst)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        if self.inst != other.inst or self.n != other.n:
            raise InstanceMismatchError("cannot add across modules")
        acc = {i: c for i, c in self.coeffs}
        for i, c in other.coeffs:
            acc[i] = acc[i] + c if i in acc else c
        return FreeModuleElement.of(self.inst, self.n, acc)

    def scale(self, s) -> "FreeModuleElement":
        return FreeModuleElement.of(
            self.inst, self.n, {i: c.scale(s) for i, c in self.coeffs}
        )


@dataclass(frozen=True)
class FreeModule:
    """Handle for a free module; tracks direct-sum blocks when present."""

    inst: BlueprintInstance
    n: int
    blocks: tuple[tuple[int, int], ...] | None = None  # (offset, length) pairs

    def basis(self, i: int) -> FreeModuleElement:
        return FreeModuleElement.of(self.inst, self.n, {i: self.inst.scalar(self.inst.one)})

    def basis_elements(self) -> tuple[FreeModuleElement, ...]:
        return tuple(self.basis(i) for i in range(1, self.n + 1))

    def zero(self) -> FreeModuleElement:
        return FreeModuleElement.of(self.inst, self.n, {})

    def element(self, coeffs) -> FreeModuleElement:
        return FreeModuleElement.of(self.inst, self.n, coeffs)

    def is_monoid_element(self, x: FreeModuleElement) -> bool:
        """Membership in the underlying set.

        Plain modules: every coefficient is a single monoid term.  Direct
        sums additionally require the support to sit inside one block
        (summand underlying sets glued at zero).
        """
        if x.inst != self.inst or x.n != self.n:
            raise InstanceMismatchError("element from a different module")
        if any(len(c) > 1 for _, c in x.coeffs):
            return False
        if self.blocks is not None and x.coeffs:
            idxs = x.support()
            return any(
                all(off < i <= off + length for i in idxs)
                for off, length in self.blocks
            )
        return True

    def embed(self, which: int, x: FreeModuleElement) -> FreeModuleElement:
        """Image of a summand element under the direct-sum inclusion."""
        if self.blocks is None:
            raise BlueprintError("not a direct sum")
        off, length = self.blocks[which]
        if x.n != length:
            raise BlueprintError(f"summand {which} has rank {length}, got {x.n}")
        return FreeModuleElement.of(
            self.inst, self.n, {i + off: c for i, c in x.coeffs}
        )


def free_module(inst: BlueprintInstance, n: int) -> FreeModule:
    if n < 0:
        raise BlueprintError("rank must be nonnegative")
    return FreeModule(inst, n)


def direct_sum(modules: Sequence[FreeModule]) -> FreeModule:
    """Coproduct of free modules: concatenated basis, wedge underlying set."""
    if not modules:
        raise BlueprintError("empty direct sum")
    inst = modules[0].inst
    blocks = []
    off = 0
    for m in modules:
        if m.inst != inst:
            raise InstanceMismatchError("direct sum across instances")
        blocks.append((off, m.n))
        off += m.n
    return FreeModule(inst, off, tuple(blocks))


def module_leq(
    x: FreeModuleElement,
    y: FreeModuleElement,
    budget: ClosureBudget | None = None,
) -> Decision:
    """Componentwise order decision; Fails dominates Unknown."""
    if x.inst != y.inst or x.n != y.n:
        raise InstanceMismatchError("order across different modules")
    saw_unknown = False
    for i in sorted(set(x.support()) | set(y.support())):
        d = decide_leq(x.inst, x.coeff(i), y.coeff(i), budget=budget)
        if d is Decision.FAILS:
            return Decision.FAILS
        if d is Decision.UNKNOWN:
            saw_unknown = True
    return Decision.UNKNOWN if saw_unknown else Decision.HOLDS


@dataclass(frozen=True)
class TensorElement:
    """Element of the tensor square of two free modules, basis (i, j)."""

    inst: BlueprintInstance
    n: int
    m: int
    coeffs: tuple[tuple[tuple[int, int], FormalSum], ...]

    @staticmethod
    def of(inst, n, m, coeffs) -> "TensorElement":
        out = []
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for (i, j), c in items:
            i, j = int(i), int(j)
            if not (1 <= i <= n and 1 <= j <= m):
                raise BlueprintError(f"tensor index {(i, j)} outside bounds")
            if isinstance(c, Scalar):
                c = c.as_sum()
            if c.inst != inst:
                raise InstanceMismatchError("coefficient from a different instance")
            if not c.is_zero():
                out.append(((i, j), c))
        out.sort(key=lambda pair: pair[0])
        if len({k for k, _ in out}) != len(out):
            raise BlueprintError("duplicate tensor index")
        return TensorElement(inst, n, m, tuple(out))

    def coeff(self, i: int, j: int) -> FormalSum:
        for k, c in self.coeffs:
            if k == (i, j):
                return c
        return FormalSum.zero(self.inst)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        if (self.inst, self.n, self.m) != (other.inst, other.n, other.m):
            raise InstanceMismatchError("cannot add across tensor modules")
        acc = {k: c for k, c in self.coeffs}
        for k, c in other.coeffs:
            acc[k] = acc[k] + c if k in acc else c
        return TensorElement.of(self.inst, self.n, self.m, acc)

    def scale(self, s) -> "TensorElement":
        return TensorElement.of(
            self.inst, self.n, self.m, {k: c.scale(s) for k, c in self.coeffs}
        )


def tensor(x: FreeModuleElement, y: FreeModuleElement) -> TensorElement:
    """Pure tensor, coefficients multiplied out to bilinear normal form."""
    if x.inst != y.inst:
        raise InstanceMismatchError("tensor across instances")
    coeffs = {}
    for i, a in x.coeffs:
        for j, b in y.coeffs:
            coeffs[(i, j)] = a * b
    return TensorElement.of(x.inst, x.n, y.n, coeffs)


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of the bilinear-table vs tensor-morphism comparison."""

    table_count: int
    distinct_morphisms: int
    injective: bool
    recovered: int
    surjective: bool
    collisions: tuple = ()


def _induced(inst, table) -> Callable[[TensorElement], FormalSum]:
    def h(t: TensorElement) -> FormalSum:
        acc = FormalSum.zero(inst)
        for k, c in t.coeffs:
            if k in table:
                acc = acc + (c * table[k])
        return acc

    return h


def _sample_tensors(inst, n, m, count, seed) -> list[TensorElement]:
    rng = random.Random(seed)
    car = inst.carrier()
    pool = list(car) if car is not None else [inst.zero, inst.one, inst.eps]
    out = []
    for _ in range(count):
        coeffs = {}
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                vals = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
                coeffs[(i, j)] = inst.sum_of(vals)
        out.append(TensorElement.of(inst, n, m, coeffs))
    return out


def bilinear_correspondence_check(
    inst: BlueprintInstance,
    n: int,
    m: int,
    tables: Sequence[Mapping[tuple[int, int], Any]],
    samples: int = 8,
    seed: int = 0,
) -> CorrespondenceReport:
    """Check the bilinear-map / tensor-morphism correspondence on a family.

    Each table assigns a value to every basis pair ``(i, j)`` and induces a
    morphism on the tensor module by linear extension.  The check evaluates
    every induced morphism on all basis tensors plus ``samples`` shared
    random tensor elements: distinct tables must induce distinct morphisms
    (injectivity), and restricting a morphism back to basis pairs must
    reproduce it (surjectivity onto the sampled family).
    """
    norm_tables = []
    for t in tables:
        nt = {}
        for k, v in t.items():
            key = (int(k[0]), int(k[1]))
            if isinstance(v, Scalar):
                v = v.as_sum()
            elif not isinstance(v, FormalSum):
                v = inst.sum_of([v])
            nt[key] = v
        norm_tables.append(nt)

    basis_keys = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    basis_tensors = [
        TensorElement.of(inst, n, m, {k: inst.sum_of([inst.one])}) for k in basis_keys
    ]
    probes = basis_tensors + _sample_tensors(inst, n, m, samples, seed)

    fingerprints = []
    for t in norm_tables:
        h = _induced(inst, t)
        fingerprints.append(tuple(h(p) for p in probes))

    collisions = []
    seen: dict[tuple, int] = {}
    for idx, fp in enumerate(fingerprints):
        if fp in seen:
            collisions.append((seen[fp], idx))
        else:
            seen[fp] = idx
    injective = not collisions

    recovered = 0
    for t, fp in zip(norm_tables, fingerprints):
        h = _induced(inst, t)
        restriction = {k: h(bt) for k, bt in zip(basis_keys, basis_tensors)}
        h2 = _induced(inst, restriction)
        if all(h2(p) == want for p, want in zip(probes, fp)):
            recovered += 1
    surjective = recovered == len(norm_tables)

    return CorrespondenceReport(
        table_count=len(norm_tables),
        distinct_morphisms=len(seen),
        injective=injective,
        recovered=recovered,
        surjective=surjective,
        collisions=tuple(collisions),
    )
