"""Exact photon-number statistics of displaced squeezed states."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, expm

from . import _kernels
from .errors import CutoffError, DarkportError

COHERENT_LIMIT_R = 1e-12
HARD_CUTOFF = 10 ** 6
DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class PhotonDistribution:
    """Probabilities indexed by photon number, with the tail bookkeeping."""

    probs: np.ndarray
    cutoff: int
    norm_deficit: float


@dataclass(frozen=True)
class AmplitudeSet:
    """Number-state amplitudes in log-magnitude + sign form (amplitudes are real)."""

    log_magnitude: np.ndarray
    sign: np.ndarray
    cutoff: int

    @property
    def amplitudes(self):
        with np.errstate(over="ignore"):
            return self.sign * np.exp(self.log_magnitude)


@dataclass(frozen=True)
class ZeroPoint:
    """k-th positive zero of p_n(x), counted from large displacements inward."""

    n: int
    k: int
    x: float


@dataclass(frozen=True)
class ZeroSet:
    """Positive zeros of p_n in descending order plus an origin flag."""

    n: int
    points: tuple
    has_origin: bool

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, idx):
        return self.points[idx]


def _scan(x, r, nmax):
    """Amplitudes, x-derivatives, and log-magnitude form up to nmax."""
    size = nmax + 1
    c = np.empty(size)
    dc = np.empty(size)
    logmag = np.empty(size)
    sign = np.empty(size)
    if r < COHERENT_LIMIT_R:
        _kernels.coherent_scan(float(x), c, dc, logmag, sign)
    else:
        gamma = math.tanh(r)
        zeta2 = 1.0 / (-math.expm1(-4.0 * r))
        expo = 2.0 * gamma / (1.0 + gamma) * zeta2
        _kernels.dsv_scan(float(x), gamma, math.sqrt(zeta2), expo, c, dc, logmag, sign)
    return c, dc, logmag, sign


def _initial_cutoff(x, r):
    nbar = x * x + math.sinh(r) ** 2
    var = x * x * math.exp(-2.0 * r) + math.sinh(2.0 * r) ** 2 / 2.0
    return int(math.ceil(nbar + 12.0 * math.sqrt(var) + 20.0))


def _pure_scan_to_tol(x, r, tail_tol):
    """Scan with the cutoff doubled until the tail deficit meets tail_tol."""
    nmax = _initial_cutoff(x, r)
    while True:
        arrays = _scan(x, r, nmax)
        deficit = max(0.0, 1.0 - float(np.sum(arrays[0] ** 2)))
        if deficit <= tail_tol:
            return nmax, arrays, deficit
        if 2 * nmax > HARD_CUTOFF:
            raise CutoffError(
                f"cutoff {nmax} at hard limit, deficit {deficit:.3e} > {tail_tol:.3e}",
                achieved_deficit=deficit,
            )
        nmax *= 2


def _check_args(x, tail_tol=1.0):
    if x < 0:
        raise ValueError("displacement must be >= 0")
    if tail_tol <= 0:
        raise ValueError("tail tolerance must be positive")


def amplitude(n, x, spec):
    """Number-state amplitude <n|state(x)>; real in this convention."""
    if n < 0:
        raise ValueError("photon number must be >= 0")
    _check_args(x)
    c, _, _, _ = _scan(x, spec.r, n)
    return float(c[n])


def amplitude_set(x, spec, tail_tol=DEFAULT_TAIL_TOL):
    _check_args(x, tail_tol)
    nmax, (_, _, logmag, sign), _ = _pure_scan_to_tol(x, spec.r, tail_tol)
    return AmplitudeSet(log_magnitude=logmag, sign=sign, cutoff=nmax)


def distribution(x, spec, tail_tol=DEFAULT_TAIL_TOL):
    """Photon-number distribution with an auto-extended cutoff."""
    dist, _ = distribution_pair(x, spec, tail_tol)
    return dist


def distribution_derivative(x, spec, tail_tol=DEFAULT_TAIL_TOL):
    """Analytic x-derivative of every p_n, aligned with distribution()."""
    _, deriv = distribution_pair(x, spec, tail_tol)
    return deriv


def distribution_pair(x, spec, tail_tol=DEFAULT_TAIL_TOL):
    """Distribution and its derivative from a single amplitude scan."""
    _check_args(x, tail_tol)
    nmax, (c, dc, _, _), deficit = _pure_scan_to_tol(x, spec.r, tail_tol)
    dist = PhotonDistribution(probs=c * c, cutoff=nmax, norm_deficit=deficit)
    return dist, 2.0 * c * dc


def moments(dist):
    """Mean photon number and variance of a distribution."""
    p = np.asarray(dist.probs)
    n = np.arange(p.size, dtype=float)
    nbar = float(p @ n)
    return nbar, float(p @ (n * n)) - nbar * nbar


def expected_photon_number(x, spec):
    return x * x + math.sinh(spec.r) ** 2


def photon_number_variance(x, spec):
    return x * x * math.exp(-2.0 * spec.r) + math.sinh(2.0 * spec.r) ** 2 / 2.0


_root_cache = {}


def _hermite_pair(z, n):
    """He_n and He_{n-1} at z, jointly rescaled; only their ratio is meaningful."""
    z = np.asarray(z, dtype=float)
    h_prev = np.ones_like(z)
    h_cur = z.copy()
    for m in range(2, n + 1):
        h_next = z * h_cur - (m - 1) * h_prev
        big = np.maximum(np.abs(h_next), np.abs(h_cur)) > 1e140
        h_next[big] /= 1e140
        h_cur[big] /= 1e140
        h_prev, h_cur = h_cur, h_next
    return h_cur, h_prev


def hermite_positive_roots(n):
    """Positive roots of the probabilists' Hermite polynomial, descending."""
    if n < 2:
        return np.array([])
    if n not in _root_cache:
        ev = eigh_tridiagonal(np.zeros(n), np.sqrt(np.arange(1.0, n)),
                              eigvals_only=True)
        z = np.sort(ev[ev > 1e-9])[::-1]
        for _ in range(2):
            h_n, h_n1 = _hermite_pair(z, n)
            z = z - h_n / (n * h_n1)
        _root_cache[n] = z
    return _root_cache[n]


def zeros(n, spec):
    """Displacements where p_n vanishes; k=1 is the outermost."""
    if n < 1:
        raise ValueError("photon number must be >= 1")
    scale = 0.5 * math.sqrt(-math.expm1(-4.0 * spec.r))
    points = tuple(
        ZeroPoint(n=n, k=k, x=float(scale * z))
        for k, z in enumerate(hermite_positive_roots(n), start=1)
    )
    return ZeroSet(n=n, points=points, has_origin=(n % 2 == 1))


def number_state_amplitudes(m, x, spec, tail_tol=DEFAULT_TAIL_TOL):
    """Amplitude vector <n|D(x)S(r)|m> over n, cutoff extended to tail_tol."""
    if m < 0 or int(m) != m:
        raise ValueError("number-state index must be a nonnegative integer")
    m = int(m)
    _check_args(x, tail_tol)
    r = spec.r
    nbar = x * x + math.sinh(r) ** 2 + m * math.cosh(2.0 * r)
    var = (2 * m + 1) * (x * x * math.exp(-2.0 * r)
                         + math.sinh(2.0 * r) ** 2 / 2.0) + m
    nmax = int(math.ceil(nbar + 12.0 * math.sqrt(var) + 20.0 + 2 * m))
    while True:
        cur = _scan(x, r, nmax + m)[0]
        for step in range(1, m + 1):
            cur = _ladder_step(cur, x, r, step)
        deficit = max(0.0, 1.0 - float(np.sum(cur * cur)))
        if deficit <= tail_tol:
            return cur
        if 2 * nmax > HARD_CUTOFF:
            raise CutoffError(
                f"cutoff {nmax} at hard limit, deficit {deficit:.3e}",
                achieved_deficit=deficit,
            )
        nmax *= 2


def _ladder_step(prev, x, r, step):
    """One rung of <n|D S|step> from <n|D S|step-1>; shrinks the array by one."""
    ch = math.cosh(r)
    sh = math.sinh(r)
    xer = x * math.exp(r)
    top = prev.size - 2
    out = np.empty(top + 1)
    root = 1.0 / math.sqrt(step)
    out[0] = (sh * prev[1] - xer * prev[0]) * root
    for k in range(1, top + 1):
        out[k] = (ch * math.sqrt(k) * prev[k - 1]
                  + sh * math.sqrt(k + 1) * prev[k + 1]
                  - xer * prev[k]) * root
    return out


def displaced_squeezed_number_amplitude(n, m, x, spec):
    """<n|D(x)S(r)|m> for any number state m >= 0."""
    if n < 0:
        raise ValueError("photon number must be >= 0")
    if m == 0:
        return amplitude(n, x, spec)
    cur = _scan(x, spec.r, n + m)[0]
    for step in range(1, m + 1):
        cur = _ladder_step(cur, x, spec.r, step)
    return float(cur[n])


def brute_force_state(m, x, spec, dim=None):
    """Truncated matrix-exponential oracle for D(x)S(r)|m>."""
    if m < 0:
        raise ValueError("number-state index must be >= 0")
    _check_args(x)
    if dim is None:
        dim = 4 * _initial_cutoff(x, spec.r) + 4 * m
    if dim <= m:
        raise ValueError("dimension must exceed the number-state index")
    a = np.diag(np.sqrt(np.arange(1.0, dim)), 1)
    ad = a.T.copy()
    squeezer = expm(0.5 * spec.r * (a @ a - ad @ ad))
    displacer = expm(x * (ad - a))
    vec = np.zeros(dim)
    vec[m] = 1.0
    psi = displacer @ (squeezer @ vec)
    deficit = abs(1.0 - float(psi @ psi))
    tail = float(np.sum(psi[-5:] ** 2))
    if deficit > 1e-12 or tail > 1e-20:
        raise DarkportError(
            f"oracle dimension {dim} too small: deficit {deficit:.3e}, tail {tail:.3e}"
        )
    return psi
