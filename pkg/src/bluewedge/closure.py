"""Bounded closure engine for generated order relations.

Given a set of generating relations ``lhs_i <= rhs_i`` between formal sums,
the engine explores the smallest preorder containing them that is closed
under adding a common sum to both sides, scaling both sides by a monoid
element, and chaining.  Concretely it runs a breadth-first search over
multiset rewrite states: a state ``s`` is reachable from ``start`` when
``start <= s`` is derivable, and each step replaces an embedded, scaled
copy of some generator's left side by its right side.

The search is sound by construction and deliberately incomplete: states
are pruned by a term-count bound and a state-count budget, and a failure
to derive is reported as ``Decision.UNKNOWN``, never as a refutation.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .blueprints import (
    BlueprintInstance,
    Decision,
    FormalSum,
    InstanceMismatchError,
    UnsupportedRelationError,
    instance_leq,
)

__all__ = [
    "ClosureBudget",
    "RelationSet",
    "closure_decide_leq",
    "reachable_sums",
    "standard_generators",
    "decide_leq",
]


@dataclass(frozen=True)
class ClosureBudget:
    """Search bounds: maximum terms per sum and explored states."""

    max_terms: int = 8
    max_states: int = 100_000


@dataclass(frozen=True)
class RelationSet:
    """Canonically ordered generating relations of one instance.

    Two presentations compare equal exactly when their generator multisets
    are equal, regardless of construction order.
    """

    inst: BlueprintInstance
    pairs: tuple[tuple[FormalSum, FormalSum], ...]

    @staticmethod
    def of(
        inst: BlueprintInstance,
        pairs: Iterable[tuple[FormalSum, FormalSum]],
    ) -> "RelationSet":
        norm = []
        for lhs, rhs in pairs:
            if lhs.inst != inst or rhs.inst != inst:
                raise InstanceMismatchError("generator from a different instance")
            norm.append((lhs, rhs))
        key = lambda pr: (
            tuple(inst.sort_key(t) for t in pr[0].terms),
            tuple(inst.sort_key(t) for t in pr[1].terms),
        )
        norm.sort(key=key)
        return RelationSet(inst, tuple(norm))

    def __len__(self) -> int:
        return len(self.pairs)


def standard_generators(
    inst: BlueprintInstance,
    scalars: Sequence | None = None,
    max_terms: int = 3,
) -> RelationSet:
    """Default generating relations of a preset.

    For the sign preset this is the single defining relation
    ``0 <= 1 + eps``.  For field presets it is every ``b <= a_1 + ... + a_m``
    with ``m <= max_terms`` and ``b`` the field sum of the ``a_i``, the
    ``a_i`` drawn from ``scalars`` (default: the nonzero carrier, which must
    then be finite).  For idempotent presets it is every such relation whose
    right side keeps its maximum when any one term is dropped, i.e.
    ``b`` equals the maximum or the maximum is attained at least twice.
    """
    if inst.kind == "sign":
        return RelationSet.of(
            inst, [(inst.zero_sum(), inst.sum_of([inst.one, inst.eps]))]
        )

    if scalars is None:
        car = inst.carrier()
        if car is None:
            raise UnsupportedRelationError(
                f"{inst.name()} has an infinite carrier; pass explicit scalars"
            )
        pool = [v for v in car if not inst.is_zero(v)]
    else:
        pool = []
        for v in scalars:
            v = inst.coerce(v)
            if not inst.is_zero(v) and v not in pool:
                pool.append(v)
    pool.sort(key=inst.sort_key)

    pairs: list[tuple[FormalSum, FormalSum]] = []
    for size in range(2, max_terms + 1):
        for combo in combinations_with_replacement(pool, size):
            rhs = inst.sum_of(combo)
            if inst.kind == "field":
                b = inst.hull_value(combo)
                pairs.append((inst.sum_of([b]), rhs))
            else:
                top = max(combo, key=inst.sort_key)
                top_twice = (
                    sum(1 for v in combo if inst.sort_key(v) == inst.sort_key(top)) >= 2
                )
                pairs.append((inst.sum_of([top]), rhs))
                if top_twice:
                    pairs.append((inst.zero_sum(), rhs))
    return RelationSet.of(inst, pairs)


def _default_scales(inst, gens, lhs, rhs):
    car = inst.carrier()
    if car is not None:
        return [v for v in car if not inst.is_zero(v)]
    seen = {inst.one, inst.eps}
    for fs in (lhs, rhs):
        seen.update(fs.terms)
    for gl, gr in gens.pairs:
        seen.update(gl.terms)
        seen.update(gr.terms)
    return sorted((v for v in seen if not inst.is_zero(v)), key=inst.sort_key)


def _expand_rules(inst, gens, scales):
    rules = []
    seen = set()
    for gl, gr in gens.pairs:
        for m in scales:
            left = gl.scale(m)
            right = gr.scale(m)
            if left.terms == right.terms:
                continue
            key = (left.terms, right.terms)
            if key not in seen:
                seen.add(key)
                rules.append((Counter(left.terms), len(left.terms), right.terms))
    return rules


def _search(inst, gens, start, target, budget, scales, collect):
    """BFS core. With ``collect`` returns the reachable set, else a Decision."""
    if budget is None:
        budget = ClosureBudget()
    if not isinstance(gens, RelationSet):
        gens = RelationSet.of(inst, gens)
    if scales is None:
        scales = _default_scales(inst, gens, start, target if target else start)
    rules = _expand_rules(inst, gens, scales)

    start_t = start.terms
    target_t = target.terms if target is not None else None
    if target_t is not None and start_t == target_t:
        return Decision.HOLDS
    seen = {start_t}
    queue = deque([start_t])
    states = 1
    while queue:
        cur = queue.popleft()
        cur_count = Counter(cur)
        for left_count, left_len, right_terms in rules:
            if left_len > len(cur):
                continue
            if any(cur_count[v] < k for v, k in left_count.items()):
                continue
            rest = cur_count - left_count
            merged = list(rest.elements()) + list(right_terms)
            if len(merged) > budget.max_terms:
                continue
            merged.sort(key=inst.sort_key)
            new = tuple(merged)
            if target_t is not None and new == target_t:
                return Decision.HOLDS
            if new not in seen:
                seen.add(new)
                states += 1
                if states > budget.max_states:
                    return seen if collect else Decision.UNKNOWN
                queue.append(new)
    return seen if collect else Decision.UNKNOWN


def closure_decide_leq(
    inst: BlueprintInstance,
    gens: RelationSet | Iterable,
    lhs: FormalSum,
    rhs: FormalSum,
    budget: ClosureBudget | None = None,
    scales: Sequence | None = None,
) -> Decision:
    """Sound bounded derivation of ``lhs <= rhs`` from ``gens``.

    Returns ``HOLDS`` only when a derivation was found; ``UNKNOWN`` means
    the budget ran out or no derivation exists at this size.
    """
    return _search(inst, gens, lhs, rhs, budget, scales, collect=False)


def reachable_sums(
    inst: BlueprintInstance,
    gens: RelationSet | Iterable,
    start: FormalSum,
    budget: ClosureBudget | None = None,
    scales: Sequence | None = None,
) -> set[tuple]:
    """All term tuples ``t`` with ``start <= sum(t)`` derivable in budget."""
    out = _search(inst, gens, start, None, budget, scales, collect=True)
    assert isinstance(out, set)
    return out


def decide_leq(
    inst: BlueprintInstance,
    lhs: FormalSum,
    rhs: FormalSum,
    generators: RelationSet | Iterable | None = None,
    budget: ClosureBudget | None = None,
) -> Decision:
    """Combined order decision: exact fragment first, then bounded closure.

    The exact per-preset rule answers ``lhs == rhs`` and ``0 <= sum``
    definitively.  Other shapes are attempted with the closure engine and
    come back ``HOLDS`` or ``UNKNOWN``.
    """
    try:
        return instance_leq(inst, lhs, rhs)
    except UnsupportedRelationError:
        pass
    if generators is None:
        try:
            generators = standard_generators(inst)
        except UnsupportedRelationError:
            pool = sorted(set(lhs.terms) | set(rhs.terms), key=inst.sort_key)
            generators = standard_generators(inst, scalars=pool)
    return closure_decide_leq(inst, generators, lhs, rhs, budget=budget)
