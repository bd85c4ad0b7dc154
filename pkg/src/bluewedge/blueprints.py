"""Preset algebras and formal-sum arithmetic.

Each preset couples a commutative pointed monoid (absorbing zero, neutral
one, and a distinguished sign element ``eps`` with ``eps * eps == 1``) with
the semiring of formal sums of its nonzero elements.  A formal sum is a
finite multiset of nonzero monoid elements; the empty sum is the semiring
zero.  Order questions ``lhs <= rhs`` are answered exactly on the fragment
``0 <= sum of monoid terms`` by a per-preset rule; everything outside that
fragment raises :class:`UnsupportedRelationError` so callers can fall back
to the bounded closure engine in :mod:`bluewedge.closure`.

Shipped presets
---------------
``f1pm``       three-element sign algebra ``{0, 1, eps}``; ``0 <= sum``
               holds iff the sum has as many ``1`` terms as ``eps`` terms.
``gf(p)``      prime-field monoid with ``eps = p - 1``; the rule is
               "the terms sum to zero mod p".
``rational``   exact rational field with ``eps = -1``; same vanishing rule.
``boolean``    two-element idempotent semifield (``eps = 1``); the rule is
               "zero terms, or at least two".
``maxplus``    max-plus rationals with an explicit bottom element as zero
               and ``eps = 0`` (the multiplicative unit); the rule is
               "the maximum is attained at least twice, or no terms".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

__all__ = [
    "BlueprintError",
    "InstanceMismatchError",
    "UnsupportedRelationError",
    "Decision",
    "Scalar",
    "FormalSum",
    "BlueprintInstance",
    "make_preset",
    "preset_names",
    "scalar_mul",
    "sum_add",
    "sum_mul",
    "is_unit",
    "instance_leq",
    "hull_scalar",
    "idem_collapse",
]


class BlueprintError(Exception):
    """Base error for preset and arithmetic misuse."""


class InstanceMismatchError(BlueprintError):
    """Operands belong to different preset instances."""


class UnsupportedRelationError(BlueprintError):
    """The order fragment does not cover this relation shape."""


class Decision(enum.Enum):
    """Three-valued outcome of an order query."""

    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("Decision is three-valued; compare explicitly")


def _check_same(a: "BlueprintInstance", b: "BlueprintInstance") -> None:
    if a != b:
        raise InstanceMismatchError(f"mixed instances: {a.name()} vs {b.name()}")


@dataclass(frozen=True)
class Scalar:
    """A monoid element of one preset instance."""

    inst: "BlueprintInstance"
    value: Any

    def __mul__(self, other: "Scalar") -> "Scalar":
        return scalar_mul(self, other)

    def is_zero(self) -> bool:
        return self.inst.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.inst.is_unit_value(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.inst, self.inst.inv(self.value))

    def as_sum(self) -> "FormalSum":
        return FormalSum.of(self.inst, [self.value])

    def __repr__(self) -> str:
        return f"Scalar({self.inst.name()}, {self.inst.scalar_to_str(self.value)!r})"


@dataclass(frozen=True)
class FormalSum:
    """Finite multiset of nonzero monoid elements; the semiring carrier.

    ``terms`` is kept sorted by the instance's canonical key, so equal
    multisets compare and hash equal.  The empty tuple is the zero.
    """

    inst: "BlueprintInstance"
    terms: tuple

    @staticmethod
    def of(inst: "BlueprintInstance", values: Iterable[Any]) -> "FormalSum":
        vals = [v.value if isinstance(v, Scalar) else inst.coerce(v) for v in values]
        vals = [v for v in vals if not inst.is_zero(v)]
        vals.sort(key=inst.sort_key)
        return FormalSum(inst, tuple(vals))

    @staticmethod
    def zero(inst: "BlueprintInstance") -> "FormalSum":
        return FormalSum(inst, ())

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def scalars(self) -> tuple[Scalar, ...]:
        return tuple(Scalar(self.inst, v) for v in self.terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        _check_same(self.inst, other.inst)
        return FormalSum.of(self.inst, self.terms + other.terms)

    def __mul__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        _check_same(self.inst, other.inst)
        inst = self.inst
        prods = [inst.mul(a, b) for a in self.terms for b in other.terms]
        return FormalSum.of(inst, prods)

    def scale(self, s: Scalar | Any) -> "FormalSum":
        """Multiply every term by one monoid element."""
        v = s.value if isinstance(s, Scalar) else self.inst.coerce(s)
        if self.inst.is_zero(v):
            return FormalSum.zero(self.inst)
        return FormalSum.of(self.inst, [self.inst.mul(v, t) for t in self.terms])

    def __repr__(self) -> str:
        body = "+".join(self.inst.scalar_to_str(t) for t in self.terms) or "0"
        return f"FormalSum({self.inst.name()}, {body})"


class BlueprintInstance:
    """One preset: monoid arithmetic plus the exact order fragment.

    Subclasses fill in the carrier-specific pieces.  ``kind`` is one of
    ``"sign"`` (the minimal eps algebra), ``"field"`` (monoid of a field,
    hull-realizable) or ``"idempotent"`` (monoid of an idempotent
    semifield, idem-realizable).
    """

    kind: str = "?"

    # -- identity ---------------------------------------------------------

    def descriptor(self) -> dict:
        raise NotImplementedError

    def name(self) -> str:
        d = self.descriptor()
        return d["preset"] if len(d) == 1 else f"{d['preset']}({d['p']})"

    def _key(self) -> tuple:
        return tuple(sorted(self.descriptor().items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BlueprintInstance) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<preset {self.name()}>"

    # -- monoid carrier ----------------------------------------------------

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    @property
    def eps(self) -> Any:
        raise NotImplementedError

    def coerce(self, v: Any) -> Any:
        """Accept a raw payload and return the canonical carrier value."""
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        raise NotImplementedError

    def is_unit_value(self, a: Any) -> bool:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        """Inverse of a unit; raises on non-units."""
        raise NotImplementedError

    def sort_key(self, a: Any):
        raise NotImplementedError

    def carrier(self) -> tuple | None:
        """All carrier values for finite presets, else None."""
        return None

    def units(self) -> tuple | None:
        c = self.carrier()
        if c is None:
            return None
        return tuple(v for v in c if self.is_unit_value(v))

    # -- exact order fragment ----------------------------------------------

    def zero_leq_terms(self, terms: tuple) -> bool:
        """Exact rule for ``0 <= sum of the given nonzero terms``."""
        raise NotImplementedError

    # -- realization targets -------------------------------------------------

    def hull_value(self, terms: tuple) -> Any:
        raise UnsupportedRelationError(f"{self.name()} has no ring hull")

    def idem_value(self, terms: tuple) -> Any:
        raise UnsupportedRelationError(f"{self.name()} has no idempotent collapse")

    # -- serialization -------------------------------------------------------

    def scalar_to_str(self, v: Any) -> str:
        raise NotImplementedError

    def scalar_from_str(self, s: str) -> Any:
        raise NotImplementedError

    # -- conveniences ----------------------------------------------------------

    def scalar(self, v: Any) -> Scalar:
        return Scalar(self, self.coerce(v))

    def sum_of(self, values: Iterable[Any]) -> FormalSum:
        return FormalSum.of(self, values)

    def zero_sum(self) -> FormalSum:
        return FormalSum.zero(self)


class _F1pm(BlueprintInstance):
    """The three-element sign algebra: carrier {0, 1, eps}, eps*eps = 1."""

    kind = "sign"
    _ZERO, _ONE, _EPS = 0, 1, 2

    def descriptor(self) -> dict:
        return {"preset": "f1pm"}

    @property
    def zero(self):
        return self._ZERO

    @property
    def one(self):
        return self._ONE

    @property
    def eps(self):
        return self._EPS

    def coerce(self, v):
        if v in (0, 1, 2):
            return v
        raise BlueprintError(f"not an f1pm value: {v!r}")

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        return 1  # eps * eps

    def is_zero(self, a):
        return a == 0

    def is_unit_value(self, a):
        return a in (1, 2)

    def inv(self, a):
        if a in (1, 2):
            return a
        raise BlueprintError("0 is not a unit")

    def sort_key(self, a):
        return a

    def carrier(self):
        return (0, 1, 2)

    def zero_leq_terms(self, terms):
        ones = sum(1 for t in terms if t == 1)
        return ones * 2 == len(terms)

    def scalar_to_str(self, v):
        return ("0", "1", "eps")[v]

    def scalar_from_str(self, s):
        try:
            return {"0": 0, "1": 1, "eps": 2}[s]
        except KeyError:
            raise BlueprintError(f"not an f1pm scalar: {s!r}") from None


class _PrimeField(BlueprintInstance):
    """Multiplicative monoid of GF(p) with eps = p - 1."""

    kind = "field"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise BlueprintError(f"p must be prime, got {p}")
        self.p = p

    def descriptor(self) -> dict:
        return {"preset": "gf", "p": self.p}

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def eps(self):
        return self.p - 1

    def coerce(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise BlueprintError(f"not a gf({self.p}) value: {v!r}")
        return v % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_zero(self, a):
        return a == 0

    def is_unit_value(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise BlueprintError("0 is not a unit")
        return pow(a, -1, self.p)

    def sort_key(self, a):
        return a

    def carrier(self):
        return tuple(range(self.p))

    def zero_leq_terms(self, terms):
        return sum(terms) % self.p == 0

    def hull_value(self, terms):
        return sum(terms) % self.p

    # field arithmetic for elimination-style consumers
    def field_add(self, a, b):
        return (a + b) % self.p

    def field_neg(self, a):
        return (-a) % self.p

    def field_inv(self, a):
        return self.inv(a)

    def scalar_to_str(self, v):
        return str(v)

    def scalar_from_str(self, s):
        if s == "eps":
            return self.eps
        try:
            return int(s, 10) % self.p
        except ValueError:
            raise BlueprintError(f"not a gf({self.p}) scalar: {s!r}") from None


class _Rational(BlueprintInstance):
    """Multiplicative monoid of the rational field, eps = -1."""

    kind = "field"

    def descriptor(self) -> dict:
        return {"preset": "rational"}

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def eps(self):
        return Fraction(-1)

    def coerce(self, v):
        if isinstance(v, bool) or isinstance(v, float):
            raise BlueprintError(f"not a rational value: {v!r}")
        try:
            return Fraction(v)
        except (TypeError, ValueError):
            raise BlueprintError(f"not a rational value: {v!r}") from None

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit_value(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise BlueprintError("0 is not a unit")
        return 1 / a

    def sort_key(self, a):
        return a

    def zero_leq_terms(self, terms):
        return sum(terms) == 0

    def hull_value(self, terms):
        return sum(terms, Fraction(0))

    def field_add(self, a, b):
        return a + b

    def field_neg(self, a):
        return -a

    def field_inv(self, a):
        return self.inv(a)

    def scalar_to_str(self, v):
        return f"q:{v}"

    def scalar_from_str(self, s):
        if s == "0":
            return Fraction(0)
        if s == "1":
            return Fraction(1)
        if s == "eps":
            return Fraction(-1)
        body = s[2:] if s.startswith("q:") else s
        try:
            return Fraction(body)
        except (ValueError, ZeroDivisionError):
            raise BlueprintError(f"not a rational scalar: {s!r}") from None


class _Boolean(BlueprintInstance):
    """Two-element idempotent semifield; eps coincides with 1."""

    kind = "idempotent"

    def descriptor(self) -> dict:
        return {"preset": "boolean"}

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def eps(self):
        return 1

    def coerce(self, v):
        if v in (0, 1):
            return int(v)
        raise BlueprintError(f"not a boolean value: {v!r}")

    def mul(self, a, b):
        return a & b

    def is_zero(self, a):
        return a == 0

    def is_unit_value(self, a):
        return a == 1

    def inv(self, a):
        if a != 1:
            raise BlueprintError("0 is not a unit")
        return 1

    def sort_key(self, a):
        return a

    def carrier(self):
        return (0, 1)

    def zero_leq_terms(self, terms):
        # all nonzero terms equal 1; dropping any one must not change the sum
        return len(terms) != 1

    def idem_value(self, terms):
        return 1 if terms else 0

    def scalar_to_str(self, v):
        return str(v)

    def scalar_from_str(self, s):
        if s == "eps":
            return 1
        if s in ("0", "1"):
            return int(s)
        raise BlueprintError(f"not a boolean scalar: {s!r}")


class _MaxPlus(BlueprintInstance):
    """Max-plus rationals: zero is a distinct bottom, product is +."""

    kind = "idempotent"
    _BOTTOM = None

    def descriptor(self) -> dict:
        return {"preset": "maxplus"}

    @property
    def zero(self):
        return self._BOTTOM

    @property
    def one(self):
        return Fraction(0)

    @property
    def eps(self):
        return Fraction(0)

    def coerce(self, v):
        if v is None:
            return None
        if isinstance(v, bool) or isinstance(v, float):
            raise BlueprintError(f"not a max-plus value: {v!r}")
        try:
            return Fraction(v)
        except (TypeError, ValueError):
            raise BlueprintError(f"not a max-plus value: {v!r}") from None

    def mul(self, a, b):
        if a is None or b is None:
            return None
        return a + b

    def is_zero(self, a):
        return a is None

    def is_unit_value(self, a):
        return a is not None

    def inv(self, a):
        if a is None:
            raise BlueprintError("bottom is not a unit")
        return -a

    def sort_key(self, a):
        return (0, Fraction(0)) if a is None else (1, a)

    def zero_leq_terms(self, terms):
        if not terms:
            return True
        if len(terms) == 1:
            return False
        return terms[-1] == terms[-2]  # terms sorted: max attained twice

    def idem_value(self, terms):
        return max(terms) if terms else None

    def scalar_to_str(self, v):
        return "q:-inf" if v is None else f"q:{v}"

    def scalar_from_str(self, s):
        if s in ("0", "q:-inf"):
            return None
        if s == "1" or s == "eps":
            return Fraction(0)
        body = s[2:] if s.startswith("q:") else s
        try:
            return Fraction(body)
        except (ValueError, ZeroDivisionError):
            raise BlueprintError(f"not a max-plus scalar: {s!r}") from None


_CACHE: dict[tuple, BlueprintInstance] = {}


def preset_names() -> tuple[str, ...]:
    return ("f1pm", "gf", "rational", "boolean", "maxplus")


def make_preset(descriptor: str | dict, p: int | None = None) -> BlueprintInstance:
    """Build (or fetch) a preset instance.

    ``descriptor`` is a name or a dict like ``{"preset": "gf", "p": 3}``.
    ``make_preset("gf", 3)`` is accepted as a shorthand.  Unknown names and
    non-prime p raise :class:`BlueprintError`.
    """
    if isinstance(descriptor, str):
        name, param = descriptor, p
    elif isinstance(descriptor, dict):
        name = descriptor.get("preset")
        param = descriptor.get("p")
        extra = set(descriptor) - {"preset", "p"}
        if extra:
            raise BlueprintError(f"unknown preset fields: {sorted(extra)}")
    else:
        raise BlueprintError(f"bad preset descriptor: {descriptor!r}")

    key = (name, param)
    if key in _CACHE:
        return _CACHE[key]
    if name == "f1pm":
        inst: BlueprintInstance = _F1pm()
    elif name == "gf":
        if not isinstance(param, int):
            raise BlueprintError("gf preset needs an integer p")
        inst = _PrimeField(param)
    elif name == "rational":
        inst = _Rational()
    elif name == "boolean":
        inst = _Boolean()
    elif name == "maxplus":
        inst = _MaxPlus()
    else:
        raise BlueprintError(f"unknown preset: {name!r}")
    if name != "gf" and param is not None:
        raise BlueprintError(f"preset {name!r} takes no parameter")
    _CACHE[key] = inst
    return inst


# ---------------------------------------------------------------------------
# operations


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    _check_same(a.inst, b.inst)
    return Scalar(a.inst, a.inst.mul(a.value, b.value))


def sum_add(x: FormalSum, y: FormalSum) -> FormalSum:
    return x + y


def sum_mul(x: FormalSum, y: FormalSum) -> FormalSum:
    return x * y


def is_unit(a: Scalar) -> bool:
    return a.is_unit()


def instance_leq(inst: BlueprintInstance, lhs: FormalSum, rhs: FormalSum) -> Decision:
    """Exact order decision on the supported fragment.

    Supported shapes: ``lhs == rhs`` (reflexivity) and ``0 <= sum``.
    Anything else raises :class:`UnsupportedRelationError`; use
    :func:`bluewedge.closure.decide_leq` for a sound bounded fallback.
    """
    _check_same(inst, lhs.inst)
    _check_same(inst, rhs.inst)
    if lhs.terms == rhs.terms:
        return Decision.HOLDS
    if lhs.is_zero():
        return Decision.HOLDS if inst.zero_leq_terms(rhs.terms) else Decision.FAILS
    raise UnsupportedRelationError(
        "only 'lhs == rhs' and '0 <= sum' relations are decided exactly"
    )


def hull_scalar(inst: BlueprintInstance, x: FormalSum) -> Any:
    """Evaluate a formal sum in the underlying field (field presets only)."""
    _check_same(inst, x.inst)
    if inst.kind != "field":
        raise BlueprintError(f"{inst.name()} is not a field preset")
    return inst.hull_value(x.terms)


def idem_collapse(inst: BlueprintInstance, x: FormalSum) -> Any:
    """Evaluate a formal sum in the idempotent semifield (idempotent presets)."""
    _check_same(inst, x.inst)
    if inst.kind != "idempotent":
        raise BlueprintError(f"{inst.name()} is not an idempotent preset")
    return inst.idem_value(x.terms)
