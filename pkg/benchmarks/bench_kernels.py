"""Timing comparison of the compiled kernels against the pure-python twins.

Run:  python3 benchmarks/bench_kernels.py
Set DARKPORT_NO_NUMBA=1 to confirm the fallback path alone.
"""

import math
import time

import numpy as np
from scipy.special import gammaln

from darkport import _kernels


def best_of(func, repeats=7):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_dsv(kernel, size=4000):
    x, r = 3.0, 1.2
    gamma = math.tanh(r)
    zeta2 = 1.0 / (-math.expm1(-4.0 * r))
    expo = 2.0 * gamma / (1.0 + gamma) * zeta2
    c = np.empty(size)
    dc = np.empty(size)
    logmag = np.empty(size)
    sign = np.empty(size)
    return best_of(lambda: kernel(x, gamma, math.sqrt(zeta2), expo,
                                  c, dc, logmag, sign))


def bench_thin(kernel, size=1500):
    rng = np.random.default_rng(0)
    p = rng.random(size)
    p /= p.sum()
    dp = rng.standard_normal(size)
    lgam = gammaln(np.arange(size, dtype=float) + 1.0)
    out_p = np.empty(size)
    out_dp = np.empty(size)
    return best_of(lambda: kernel(p, dp, lgam, math.log1p(-0.002),
                                  math.log(0.002), out_p, out_dp))


def report(name, fast, slow):
    line = f"{name:12s} python {slow * 1e3:8.3f} ms"
    if fast is not None:
        line += f"   compiled {fast * 1e3:8.3f} ms   speedup {slow / fast:6.1f}x"
    print(line)


def main():
    print(f"numba in use: {_kernels.USING_NUMBA}")
    if _kernels.USING_NUMBA:
        bench_dsv(_kernels.dsv_scan, size=8)
        bench_thin(_kernels.thin_pair, size=8)
        report("dsv_scan", bench_dsv(_kernels.dsv_scan),
               bench_dsv(_kernels.dsv_scan_py))
        report("thin_pair", bench_thin(_kernels.thin_pair),
               bench_thin(_kernels.thin_pair_py))
    else:
        report("dsv_scan", None, bench_dsv(_kernels.dsv_scan_py))
        report("thin_pair", None, bench_thin(_kernels.thin_pair_py))


if __name__ == "__main__":
    main()
