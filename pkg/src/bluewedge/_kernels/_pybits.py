"""Vectorized fallback kernels (no compiled extension required)."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _bit_columns(nmasks: int, npos: int):
    masks = np.arange(nmasks, dtype=np.uint32)
    return masks, [((masks >> np.uint32(i)) & 1).astype(bool) for i in range(npos)]


def gp_support_sweep(nmasks, offsets, pos_a, pos_b, npos):
    masks, bits = _bit_columns(nmasks, npos)
    bad = np.zeros(nmasks, dtype=bool)
    for r in range(len(offsets) - 1):
        lo, hi = int(offsets[r]), int(offsets[r + 1])
        cnt = np.zeros(nmasks, dtype=np.uint8)
        for t in range(lo, hi):
            cnt += bits[int(pos_a[t])] & bits[int(pos_b[t])]
        bad |= cnt == 1
    out = ~bad
    out[0] = False
    return out.astype(np.uint8)


def exchange_sweep(nmasks, pair_a, pair_b, row_offsets, cand_masks, npos):
    masks, bits = _bit_columns(nmasks, npos)
    bad = np.zeros(nmasks, dtype=bool)
    for p in range(len(pair_a)):
        both = bits[int(pair_a[p])] & bits[int(pair_b[p])]
        if not both.any():
            continue
        for rr in range(int(row_offsets[p]), int(row_offsets[p + 1])):
            bad |= both & ((masks & np.uint32(int(cand_masks[rr]))) == 0)
    out = ~bad
    out[0] = False
    return out.astype(np.uint8)
