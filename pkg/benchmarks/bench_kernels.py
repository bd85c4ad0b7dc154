"""Benchmark the sweep kernels: compiled extension vs vectorized fallback.

Runs both backends (when both are importable) on the full support sweeps
and prints a timing table plus the verdict counts, checking along the way
that every backend produces identical output.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--shapes 5,2 6,3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bluewedge import _kernels


def parse_shape(text: str) -> tuple[int, int]:
    n, d = text.split(",")
    return int(n), int(d)


def bench(fn, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument(
        "--shapes",
        nargs="*",
        type=parse_shape,
        default=[(5, 2), (6, 3)],
        metavar="N,D",
    )
    args = parser.parse_args()

    impls = _kernels.backends()
    print(f"active backend: {_kernels.BACKEND}; available: {sorted(impls)}")
    header = f"{'sweep':<14}{'shape':<8}{'masks':>9}  " + "".join(
        f"{name:>12}" for name in sorted(impls)
    )
    print(header)
    print("-" * len(header))

    status = 0
    for n, d in args.shapes:
        for sweep_name, sweep in (
            ("gp-support", _kernels.gp_support_sweep),
            ("exchange", _kernels.exchange_sweep),
        ):
            times = {}
            outputs = {}
            for name, mod in impls.items():
                times[name], outputs[name] = bench(
                    lambda mod=mod: sweep(n, d, impl=mod), args.repeat
                )
            ref_name = sorted(outputs)[0]
            agree = all(
                np.array_equal(outputs[ref_name], arr) for arr in outputs.values()
            )
            if not agree:
                status = 1
            row = f"{sweep_name:<14}({n},{d})  {len(outputs[ref_name]):>9}  " + "".join(
                f"{times[name] * 1000:>10.1f}ms" for name in sorted(impls)
            )
            suffix = "" if agree else "   << MISMATCH"
            print(row + f"   passing={int(outputs[ref_name].sum())}" + suffix)

    return status


if __name__ == "__main__":
    raise SystemExit(main())
