"""Differential suites: formal layer against the reference implementations.

Each suite returns a small JSON-friendly report ``{"checked": int,
"mismatches": [...]}`` so the command-line front end and the test suite
can share one implementation.  All sampling is seeded and deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import _kernels
from .blueprints import BlueprintInstance, FormalSum, make_preset
from .exterior import (
    ExteriorElement,
    all_subset_keys,
    basis_monomial,
    graded_vector,
    hull_realize,
    idem_realize,
    wedge,
)
from .matroids import (
    GPFunction,
    boolean_gp_support_sweep,
    enumerate_gp,
    gp_from_support,
    gp_from_vector,
    is_gp_function,
    is_plucker_vector,
    support_family,
    vector_from_gp,
)
from .oracles import (
    TropicalExteriorElement,
    basis_exchange_check,
    basis_exchange_support_sweep,
    classical_wedge,
    semifield_for_preset,
    subspace_plucker_enumerate,
    tropical_plucker_check,
    tropical_wedge,
)

__all__ = [
    "scalar_pool",
    "random_sum",
    "random_exterior",
    "random_monoid_vector",
    "hull_agreement",
    "idem_agreement",
    "crypto_agreement",
    "boolean_exchange_agreement",
    "boolean_exchange_sweep_agreement",
    "maxplus_tropical_agreement",
    "field_class_comparison",
    "run_all",
]


def scalar_pool(inst: BlueprintInstance) -> list:
    """A small representative carrier sample (finite carriers in full)."""
    car = inst.carrier()
    if car is not None:
        return list(car)
    name = inst.descriptor()["preset"]
    if name == "rational":
        return [Fraction(v) for v in (0, 1, -1, 2, -2)] + [Fraction(1, 2)]
    # max-plus: bottom plus a few rationals
    return [None, Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]


def random_sum(inst, rng: random.Random, max_terms: int = 3) -> FormalSum:
    pool = scalar_pool(inst)
    return inst.sum_of([rng.choice(pool) for _ in range(rng.randint(0, max_terms))])


def random_exterior(
    inst, n: int, rng: random.Random, max_keys: int = 5, max_terms: int = 3
) -> ExteriorElement:
    all_keys = [k for d in range(n + 1) for k in combinations(range(1, n + 1), d)]
    chosen = rng.sample(all_keys, k=min(rng.randint(1, max_keys), len(all_keys)))
    return ExteriorElement.of(
        inst, n, {k: random_sum(inst, rng, max_terms) for k in chosen}
    )


def random_monoid_vector(
    inst, n: int, d: int, rng: random.Random, unit_bias: float = 0.5
) -> ExteriorElement:
    """Random grade-d vector with single-term coefficients."""
    pool = scalar_pool(inst)
    units = [v for v in pool if inst.is_unit_value(v)]
    coeffs = {}
    for key in all_subset_keys(n, d):
        if rng.random() < unit_bias and units:
            coeffs[key] = inst.sum_of([rng.choice(units)])
        else:
            coeffs[key] = inst.sum_of([rng.choice(pool)])
    return graded_vector(inst, n, d, coeffs)


def _basis_elements(inst, n) -> list[ExteriorElement]:
    keys = [k for d in range(n + 1) for k in combinations(range(1, n + 1), d)]
    return [basis_monomial(inst, n, k) for k in keys]


def hull_agreement(preset, n: int = 4, pairs: int = 500, seed: int = 0) -> dict:
    """Field realization functoriality: hull(x ^ y) == hull(x) ^ hull(y)."""
    inst = make_preset(preset) if not isinstance(preset, BlueprintInstance) else preset
    rng = random.Random(seed)
    checked = 0
    mismatches = []

    def check(x, y):
        nonlocal checked
        checked += 1
        left = hull_realize(wedge(x, y))
        right = classical_wedge(hull_realize(x), hull_realize(y))
        if left != right:
            mismatches.append({"preset": inst.name(), "case": checked})

    basis = _basis_elements(inst, n)
    for x in basis:
        for y in basis:
            check(x, y)
    for _ in range(pairs):
        check(random_exterior(inst, n, rng), random_exterior(inst, n, rng))
    return {"checked": checked, "mismatches": mismatches}


def idem_agreement(preset, n: int = 4, pairs: int = 500, seed: int = 0) -> dict:
    """Idempotent realization functoriality against the unsigned wedge."""
    inst = make_preset(preset) if not isinstance(preset, BlueprintInstance) else preset
    rng = random.Random(seed)
    checked = 0
    mismatches = []

    def check(x, y):
        nonlocal checked
        checked += 1
        left = idem_realize(wedge(x, y))
        right = tropical_wedge(idem_realize(x), idem_realize(y))
        if left != right:
            mismatches.append({"preset": inst.name(), "case": checked})

    basis = _basis_elements(inst, n)
    for x in basis:
        for y in basis:
            check(x, y)
    for _ in range(pairs):
        check(random_exterior(inst, n, rng), random_exterior(inst, n, rng))
    return {"checked": checked, "mismatches": mismatches}


def crypto_agreement(
    preset, count: int = 1000, seed: int = 0, n_max: int = 5, d_max: int = 3
) -> dict:
    """Vector checks agree with value-table checks; round-trip is identity."""
    inst = make_preset(preset) if not isinstance(preset, BlueprintInstance) else preset
    rng = random.Random(seed)
    checked = 0
    mismatches = []
    for case in range(count):
        n = rng.randint(1, n_max)
        d = rng.randint(0, min(d_max, n))
        v = random_monoid_vector(inst, n, d, rng, unit_bias=rng.choice([0.2, 0.6]))
        rv = is_plucker_vector(v, d)
        gp = gp_from_vector(v, n, d)
        rg = is_gp_function(gp)
        checked += 1
        ok = rv.verdict == rg.verdict
        ok = ok and {(w.X, w.Y) for w in rv.witnesses} == {
            (w.X, w.Y) for w in rg.witnesses
        }
        ok = ok and vector_from_gp(gp) == v
        if not ok:
            mismatches.append({"preset": inst.name(), "case": case, "n": n, "d": d})
    return {"checked": checked, "mismatches": mismatches}


def boolean_exchange_agreement(n: int, d: int) -> dict:
    """Object-level sweep: boolean GP verdict vs the exchange axiom."""
    inst = make_preset("boolean")
    npos = len(all_subset_keys(n, d))
    checked = 0
    mismatches = []
    for mask in range(1, 1 << npos):
        family = support_family(n, d, mask)
        gp_ok = is_gp_function(gp_from_support(inst, n, d, family)).verdict
        ex_ok = basis_exchange_check(family)
        checked += 1
        if bool(gp_ok) != bool(ex_ok):
            mismatches.append({"n": n, "d": d, "mask": mask})
    return {"checked": checked, "mismatches": mismatches}


def boolean_exchange_sweep_agreement(n: int, d: int) -> dict:
    """Kernel sweep: GP verdicts vs exchange verdicts for every mask."""
    gp = boolean_gp_support_sweep(n, d)
    ex = basis_exchange_support_sweep(n, d)
    diff = (gp != ex).nonzero()[0]
    return {
        "checked": int(gp.shape[0]),
        "backend": _kernels.BACKEND,
        "mismatches": [{"n": n, "d": d, "mask": int(m)} for m in diff[:32]],
    }


def _random_maxplus_gp(inst, n, d, rng) -> GPFunction:
    pool = [None, Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(5, 2)]
    keys = all_subset_keys(n, d)
    values = {k: rng.choice(pool) for k in keys}
    if all(v is None for v in values.values()):
        values[keys[0]] = Fraction(0)
    return GPFunction.of(inst, n, d, values)


def maxplus_tropical_agreement(count: int = 1000, seed: int = 0, n_max: int = 5) -> dict:
    """Max-plus GP verdict vs the dropped-term tropical test."""
    inst = make_preset("maxplus")
    sf = semifield_for_preset(inst)
    rng = random.Random(seed)
    checked = 0
    mismatches = []
    for case in range(count):
        n = rng.randint(2, n_max)
        d = 2 if n >= 2 else 1
        gp = _random_maxplus_gp(inst, n, min(d, n), rng)
        left = is_gp_function(gp).verdict
        terms = {k: v for k, v in gp.values if v is not None}
        trop = TropicalExteriorElement.of(sf, n, terms)
        right = tropical_plucker_check(trop, gp.d)
        checked += 1
        if bool(left) != bool(right):
            mismatches.append({"case": case, "n": n, "d": gp.d})
    return {"checked": checked, "mismatches": mismatches}


def field_class_comparison(p: int, shapes=((3, 1), (4, 2))) -> dict:
    """Brute-force enumeration vs row-reduced subspace enumeration."""
    inst = make_preset("gf", p)
    checked = 0
    mismatches = []
    counts = {}
    for n, d in shapes:
        classes = set(enumerate_gp(inst, n, d))
        subspaces = subspace_plucker_enumerate(p, n, d)
        counts[f"{n},{d}"] = {
            "enumerated": len(classes),
            "subspaces": len(subspaces),
        }
        checked += 1
        if classes != set(subspaces):
            mismatches.append({"p": p, "n": n, "d": d})
    return {"checked": checked, "mismatches": mismatches, "counts": counts}


def run_all(seed: int = 0, jobs: int = 1) -> dict:
    """CLI-sized composite run of every suite."""
    suites = {
        "hull_vs_classical": {
            name: hull_agreement(name, pairs=100, seed=seed)
            for name in ("rational",)
        }
        | {
            f"gf({p})": hull_agreement(make_preset("gf", p), pairs=100, seed=seed)
            for p in (2, 3)
        },
        "idem_vs_tropical": {
            name: idem_agreement(name, pairs=100, seed=seed)
            for name in ("boolean", "maxplus")
        },
        "vector_vs_table": {
            name: crypto_agreement(name, count=150, seed=seed)
            for name in ("f1pm", "boolean", "maxplus", "rational")
        }
        | {"gf(3)": crypto_agreement(make_preset("gf", 3), count=150, seed=seed)},
        "boolean_vs_exchange": {
            "4,2": boolean_exchange_agreement(4, 2),
            "5,2(sweep)": boolean_exchange_sweep_agreement(5, 2),
        },
        "maxplus_vs_tropical": maxplus_tropical_agreement(count=200, seed=seed),
        "gf2_subspace_classes": field_class_comparison(2, shapes=((3, 1), (4, 2))),
    }
    total_mismatches = 0

    def count(node):
        nonlocal total_mismatches
        if isinstance(node, dict):
            if "mismatches" in node:
                total_mismatches += len(node["mismatches"])
            else:
                for v in node.values():
                    count(v)

    count(suites)
    return {"seed": seed, "total_mismatches": total_mismatches, "suites": suites}
