"""Precomputed index tables shared by the sweep kernels.

Positions index the lexicographic list of d-subsets of 1..n.  The GP
table flattens, per (X, Y) relation, the position pairs of the surviving
terms; the exchange table flattens, per ordered pair (A, B) of distinct
subsets, one candidate bitmask per element of A - B.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def subset_positions(n: int, d: int):
    subs = list(combinations(range(1, n + 1), d))
    return subs, {s: i for i, s in enumerate(subs)}


def gp_relation_pairs(n: int, d: int):
    """Flattened relation table: (offsets, pos_a, pos_b, num_positions)."""
    subs, index = subset_positions(n, d)
    offsets = [0]
    pos_a: list[int] = []
    pos_b: list[int] = []
    if 1 <= d < n:
        ground = range(1, n + 1)
        for X in combinations(ground, d - 1):
            xs = set(X)
            for Y in combinations(ground, d + 1):
                for ik in Y:
                    if ik in xs:
                        continue
                    I = tuple(sorted(X + (ik,)))
                    J = tuple(v for v in Y if v != ik)
                    pos_a.append(index[I])
                    pos_b.append(index[J])
                offsets.append(len(pos_a))
    return (
        np.asarray(offsets, dtype=np.int64),
        np.asarray(pos_a, dtype=np.int32),
        np.asarray(pos_b, dtype=np.int32),
        len(subs),
    )


def exchange_tables(n: int, d: int):
    """Flattened exchange table: (pair_a, pair_b, row_offsets, cand_masks, m)."""
    subs, index = subset_positions(n, d)
    pair_a: list[int] = []
    pair_b: list[int] = []
    row_offsets = [0]
    cand_masks: list[int] = []
    for ai, A in enumerate(subs):
        sa = set(A)
        for bi, B in enumerate(subs):
            if ai == bi:
                continue
            sb = set(B)
            pair_a.append(ai)
            pair_b.append(bi)
            for a in sorted(sa - sb):
                mask = 0
                base = sa - {a}
                for b in sorted(sb - sa):
                    mask |= 1 << index[tuple(sorted(base | {b}))]
                cand_masks.append(mask)
            row_offsets.append(len(cand_masks))
    return (
        np.asarray(pair_a, dtype=np.int32),
        np.asarray(pair_b, dtype=np.int32),
        np.asarray(row_offsets, dtype=np.int64),
        np.asarray(cand_masks, dtype=np.uint32),
        len(subs),
    )
