"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--scale 1.0] [--repeat 3]

The numba path is warmed up once (JIT compile / cache load) before timing.
"""
import argparse
import math
import os
import time

import numpy as np

from deaconescu import kernels
from deaconescu.arith import sieve_array


def _set_backend(name):
    os.environ["DEACONESCU_DISABLE_NUMBA"] = "1" if name == "numpy" else "0"


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    n_lin = int(5_000_000 * args.scale)
    seg_lo = int(10**9 * args.scale)
    seg_hi = seg_lo + 2**18 - 1
    base = sieve_array(math.isqrt(seg_hi) + 1)
    n_exc = int(20_000 * args.scale)
    spf, _, _ = kernels.linear_sieve(n_exc)

    cases = [
        (f"linear_sieve({n_lin})", lambda: kernels.linear_sieve(n_lin)),
        (f"segment_totients(2^18 @ {seg_lo})", lambda: kernels.segment_totients(seg_lo, seg_hi, base)),
        (f"count_exceptional_range(1..{n_exc})", lambda: kernels.count_exceptional_range(1, n_exc, spf)),
    ]

    print(f"{'kernel':42s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases:
        _set_backend("numba")
        fn()  # warm-up
        t_nb, out_nb = best_of(fn, args.repeat)
        _set_backend("numpy")
        t_np, out_np = best_of(fn, args.repeat)
        outs_nb = out_nb if isinstance(out_nb, tuple) else (out_nb,)
        outs_np = out_np if isinstance(out_np, tuple) else (out_np,)
        same = all(np.array_equal(a, b) for a, b in zip(outs_nb, outs_np))
        print(f"{name:42s} {t_nb:10.3f} {t_np:10.3f} {t_np / t_nb:7.1f}x" + ("" if same else "  MISMATCH"))
    os.environ.pop("DEACONESCU_DISABLE_NUMBA", None)


if __name__ == "__main__":
    main()
