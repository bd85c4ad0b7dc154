"""Exterior algebra over pointed-monoid presets, with exchange relations,
a bounded order-closure engine, and reference implementations to check
everything against.

The formal layer works with coefficients that are *formal sums* of
monoid elements, ordered by a generated partial order; realization maps
collapse those sums into a field or an idempotent semifield and must
commute with the wedge.  Fast bitmask kernels sweep all 0/1 support
families; a compiled extension is used when available with a NumPy
fallback otherwise.
"""

from .blueprints import (
    BlueprintError,
    BlueprintInstance,
    Decision,
    FormalSum,
    InstanceMismatchError,
    Scalar,
    UnsupportedRelationError,
    hull_scalar,
    idem_collapse,
    instance_leq,
    is_unit,
    make_preset,
    preset_names,
    scalar_mul,
    sum_add,
    sum_mul,
)
from .closure import (
    ClosureBudget,
    RelationSet,
    closure_decide_leq,
    decide_leq,
    reachable_sums,
    standard_generators,
)
from .exterior import (
    ExteriorElement,
    basis_monomial,
    grade,
    grades_present,
    graded_vector,
    has_unit_coefficient,
    hull_realize,
    idem_realize,
    is_monoid_vector,
    is_non_unit_vector,
    normalize_wedge,
    wedge,
)
from .free_modules import (
    FreeModule,
    FreeModuleElement,
    TensorElement,
    bilinear_correspondence_check,
    direct_sum,
    free_module,
    module_leq,
    tensor,
)
from .matroids import (
    DEFAULT_ENUM_CAP,
    CapExceededError,
    GPFunction,
    PluckerReport,
    RelationWitness,
    canonical_class,
    enumerate_gp,
    gp_equivalent,
    gp_from_support,
    gp_from_vector,
    is_gp_function,
    is_plucker_vector,
    pair_contraction,
    plucker_relation_sum,
    realize_from_matrix,
    support_family,
    vector_from_gp,
)
from .serialize import SchemaError

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # blueprints
    "BlueprintError",
    "BlueprintInstance",
    "Decision",
    "FormalSum",
    "InstanceMismatchError",
    "Scalar",
    "UnsupportedRelationError",
    "hull_scalar",
    "idem_collapse",
    "instance_leq",
    "is_unit",
    "make_preset",
    "preset_names",
    "scalar_mul",
    "sum_add",
    "sum_mul",
    # closure
    "ClosureBudget",
    "RelationSet",
    "closure_decide_leq",
    "decide_leq",
    "reachable_sums",
    "standard_generators",
    # exterior
    "ExteriorElement",
    "basis_monomial",
    "grade",
    "grades_present",
    "graded_vector",
    "has_unit_coefficient",
    "hull_realize",
    "idem_realize",
    "is_monoid_vector",
    "is_non_unit_vector",
    "normalize_wedge",
    "wedge",
    # free modules
    "FreeModule",
    "FreeModuleElement",
    "TensorElement",
    "bilinear_correspondence_check",
    "direct_sum",
    "free_module",
    "module_leq",
    "tensor",
    # matroids
    "DEFAULT_ENUM_CAP",
    "CapExceededError",
    "GPFunction",
    "PluckerReport",
    "RelationWitness",
    "canonical_class",
    "enumerate_gp",
    "gp_equivalent",
    "gp_from_support",
    "gp_from_vector",
    "is_gp_function",
    "is_plucker_vector",
    "pair_contraction",
    "plucker_relation_sum",
    "realize_from_matrix",
    "support_family",
    "vector_from_gp",
    # serialization
    "SchemaError",
]
