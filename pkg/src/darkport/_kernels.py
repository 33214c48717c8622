"""Hot numerical loops with a compiled path and a pure-Python twin.

Every kernel below exists twice: the ``*_py`` reference implementation and,
when numba is importable and ``DARKPORT_NO_NUMBA`` is unset, a jit-compiled
version of the same code. The module exports the selected implementation
under the bare name; both stay importable so the test suite can assert
equivalence and the benchmark can time them against each other.

Kernels are deliberately leaf-level (no allocation beyond outputs, no
callbacks) so the selection mechanism stays trivial.
"""

import math
import os

import numpy as np

_RESCALE = 1e140
_LOG_RESCALE = math.log(_RESCALE)


def _numba_disabled():
    return os.environ.get("DARKPORT_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}


try:
    if _numba_disabled():
        raise ImportError("disabled by DARKPORT_NO_NUMBA")
    from numba import njit as _njit
    USING_NUMBA = True
except ImportError:
    _njit = None
    USING_NUMBA = False


def dsv_scan_py(x, gamma, zeta, expo, c, dc, logmag, sign):
    """Displaced-squeezed-vacuum number amplitudes up to len(c)-1.

    Fills c[n] with the amplitude, dc[n] with its x-derivative, and
    (logmag, sign) with the log-magnitude representation. The Hermite
    recurrence runs with periodic rescaling so n ~ 1e3 stays finite.
    """
    nmax = len(c) - 1
    z = 2.0 * zeta * x
    lnpref0 = 0.25 * math.log1p(-gamma * gamma)
    ax2 = expo * x * x
    h_prev = 1.0
    h_cur = z
    shift = 0.0
    for n in range(nmax + 1):
        if n == 0:
            h = 1.0
            sh = 0.0
        elif n == 1:
            h = z
            sh = 0.0
        else:
            h_next = z * h_cur - (n - 1) * h_prev
            m = max(abs(h_next), abs(h_cur))
            if m > _RESCALE:
                h_next /= _RESCALE
                h_cur /= _RESCALE
                shift += _LOG_RESCALE
            h_prev = h_cur
            h_cur = h_next
            h = h_cur
            sh = shift
        ln_k = lnpref0 + 0.5 * n * math.log(gamma) - 0.5 * math.lgamma(n + 1.0)
        if h == 0.0:
            c[n] = 0.0
            logmag[n] = -np.inf
            sign[n] = 1.0
        else:
            lm = ln_k + math.log(abs(h)) + sh - ax2
            logmag[n] = lm
            sign[n] = 1.0 if h > 0.0 else -1.0
            c[n] = sign[n] * math.exp(lm)
        if n == 0:
            dc[0] = -2.0 * expo * x * c[0]
        else:
            dc[n] = 2.0 * zeta * math.sqrt(gamma * n) * c[n - 1] - 2.0 * expo * x * c[n]


def coherent_scan_py(x, c, dc, logmag, sign):
    """Coherent-state limit of dsv_scan: Poisson amplitudes with mean x**2."""
    nmax = len(c) - 1
    if x == 0.0:
        for n in range(nmax + 1):
            c[n] = 0.0
            dc[n] = 0.0
            logmag[n] = -np.inf
            sign[n] = 1.0
        c[0] = 1.0
        logmag[0] = 0.0
        if nmax >= 1:
            dc[1] = 1.0
        return
    lnx = math.log(x)
    half_x2 = 0.5 * x * x
    for n in range(nmax + 1):
        lm = n * lnx - half_x2 - 0.5 * math.lgamma(n + 1.0)
        logmag[n] = lm
        sign[n] = 1.0
        c[n] = math.exp(lm)
        if n == 0:
            dc[0] = -x * c[0]
        else:
            dc[n] = math.sqrt(n) * c[n - 1] - x * c[n]


def thin_pair_py(p, dp, lgam, log_keep, log_loss, out_p, out_dp):
    """Binomial loss convolution of a distribution and its derivative.

    lgam[i] must hold ln(i!). out arrays select the output cutoff; rows use
    the full inner support of p. log_keep = ln(1-eps), log_loss = ln(eps).
    """
    nin = len(p) - 1
    nout = len(out_p) - 1
    for n in range(nout + 1):
        acc_p = 0.0
        acc_dp = 0.0
        base = n * log_keep - lgam[n]
        for j in range(n, nin + 1):
            w = math.exp(base + lgam[j] - lgam[j - n] + (j - n) * log_loss)
            acc_p += w * p[j]
            acc_dp += w * dp[j]
        out_p[n] = acc_p
        out_dp[n] = acc_dp


def thin_select_py(p, lgam, log_keep, log_loss, rows, out):
    """Loss convolution restricted to the listed output rows."""
    nin = len(p) - 1
    for i in range(len(rows)):
        n = rows[i]
        acc = 0.0
        base = n * log_keep - lgam[n]
        for j in range(n, nin + 1):
            acc += math.exp(base + lgam[j] - lgam[j - n] + (j - n) * log_loss) * p[j]
        out[i] = acc


def delta_factors_py(x_eff, zero_flat, zero_offsets, eps_beta, out):
    """Interference reduction factors delta_n for n = 0 .. len(out)-1.

    zero_flat holds the positive amplitude zeros of every n concatenated;
    zero_offsets[n]:zero_offsets[n+1] slices out those of n. Odd n pick up
    an extra factor for the origin zero.
    """
    for n in range(len(out)):
        prod = 1.0
        for i in range(zero_offsets[n], zero_offsets[n + 1]):
            d = x_eff - zero_flat[i]
            d2 = d * d
            prod *= d2 / (d2 + eps_beta)
        if n % 2 == 1:
            x2 = x_eff * x_eff
            prod *= x2 / (x2 + eps_beta)
        out[n] = 1.0 - prod


if USING_NUMBA:
    dsv_scan = _njit(cache=True)(dsv_scan_py)
    coherent_scan = _njit(cache=True)(coherent_scan_py)
    thin_pair = _njit(cache=True)(thin_pair_py)
    thin_select = _njit(cache=True)(thin_select_py)
    delta_factors = _njit(cache=True)(delta_factors_py)
else:
    dsv_scan = dsv_scan_py
    coherent_scan = coherent_scan_py
    thin_pair = thin_pair_py
    thin_select = thin_select_py
    delta_factors = delta_factors_py
