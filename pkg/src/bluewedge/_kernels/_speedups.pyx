# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels over support bitmasks."""

import numpy as np

BACKEND = "cython"


def gp_support_sweep(Py_ssize_t nmasks,
                     long long[::1] offsets,
                     int[::1] pos_a,
                     int[::1] pos_b,
                     int npos):
    """Relation-count verdict for every support mask.

    A mask passes when no relation has exactly one surviving term pair;
    mask 0 (empty family) is rejected outright.
    """
    cdef Py_ssize_t nrel = offsets.shape[0] - 1
    out_arr = np.zeros(nmasks, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef unsigned long long mask
    cdef Py_ssize_t r
    cdef long long t, lo, hi
    cdef int cnt, ok
    for mask in range(1, <unsigned long long> nmasks):
        ok = 1
        for r in range(nrel):
            cnt = 0
            lo = offsets[r]
            hi = offsets[r + 1]
            for t in range(lo, hi):
                if ((mask >> pos_a[t]) & 1) and ((mask >> pos_b[t]) & 1):
                    cnt += 1
                    if cnt > 1:
                        break
            if cnt == 1:
                ok = 0
                break
        out[mask] = <unsigned char> ok
    return out_arr


def exchange_sweep(Py_ssize_t nmasks,
                   int[::1] pair_a,
                   int[::1] pair_b,
                   long long[::1] row_offsets,
                   unsigned int[::1] cand_masks,
                   int npos):
    """Exchange-axiom verdict for every support mask (mask 0 rejected)."""
    cdef Py_ssize_t npairs = pair_a.shape[0]
    out_arr = np.zeros(nmasks, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef unsigned long long mask
    cdef Py_ssize_t p
    cdef long long rr, lo, hi
    cdef int ok
    for mask in range(1, <unsigned long long> nmasks):
        ok = 1
        for p in range(npairs):
            if ((mask >> pair_a[p]) & 1) and ((mask >> pair_b[p]) & 1):
                lo = row_offsets[p]
                hi = row_offsets[p + 1]
                for rr in range(lo, hi):
                    if (cand_masks[rr] & mask) == 0:
                        ok = 0
                        break
                if ok == 0:
                    break
        out[mask] = <unsigned char> ok
    return out_arr
