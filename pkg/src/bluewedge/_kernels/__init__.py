"""Sweep kernels: compiled implementation with a vectorized fallback.

The compiled module is optional; when it failed to build (or was removed)
the numpy implementation takes over transparently.  ``BACKEND`` names the
active choice.
"""

from __future__ import annotations

from . import tables
from . import _pybits

try:
    from . import _speedups as _active  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _active = _pybits
    BACKEND = "numpy"

__all__ = ["BACKEND", "gp_support_sweep", "exchange_sweep", "backends", "tables"]


def gp_support_sweep(n: int, d: int, impl=None):
    """Boolean-preset GP verdicts for all 2**C(n,d) support masks (uint8)."""
    offsets, pos_a, pos_b, npos = tables.gp_relation_pairs(n, d)
    module = impl or _active
    return module.gp_support_sweep(1 << npos, offsets, pos_a, pos_b, npos)


def exchange_sweep(n: int, d: int, impl=None):
    """Exchange-axiom verdicts for all 2**C(n,d) support masks (uint8)."""
    pair_a, pair_b, row_offsets, cand_masks, npos = tables.exchange_tables(n, d)
    module = impl or _active
    return module.exchange_sweep(
        1 << npos, pair_a, pair_b, row_offsets, cand_masks, npos
    )


def backends() -> dict:
    """Importable kernel implementations keyed by name."""
    out = {"numpy": _pybits}
    if BACKEND == "cython":
        out["cython"] = _active
    return out
