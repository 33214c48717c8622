"""Fisher-information analysis of lossy photon-number detection."""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, fock, loss

P_FLOOR = 1e-30

CSV_COLUMNS = ("x", "cfi_exact", "ifisher_approx", "i_avg", "qfi")


@dataclass(frozen=True)
class DipAnnotation:
    """Loss-induced Fisher dip tied to one interference zero."""

    n: int
    k: int
    x_dip: float
    depth: float


@dataclass(frozen=True)
class FisherCurve:
    x_grid: np.ndarray
    cfi_exact: np.ndarray
    ifisher_approx: np.ndarray
    i_avg: np.ndarray
    qfi: float
    dips: tuple

    def to_json_dict(self):
        return {
            "schema": "darkport.fisher_curve.v1",
            "x": list(map(float, self.x_grid)),
            "cfi_exact": list(map(float, self.cfi_exact)),
            "ifisher_approx": list(map(float, self.ifisher_approx)),
            "i_avg": list(map(float, self.i_avg)),
            "qfi": float(self.qfi),
            "dips": [
                {"n": d.n, "k": d.k, "x_dip": d.x_dip, "depth": d.depth}
                for d in self.dips
            ],
        }

    def to_json(self, path):
        with open(path, "w") as handle:
            json.dump(self.to_json_dict(), handle, indent=1)

    def to_csv(self, path):
        with open(path, "w") as handle:
            handle.write(",".join(CSV_COLUMNS) + "\n")
            for i in range(self.x_grid.size):
                row = (self.x_grid[i], self.cfi_exact[i], self.ifisher_approx[i],
                       self.i_avg[i], self.qfi)
                handle.write(",".join(f"{v:.17g}" for v in row) + "\n")


def classical_fisher(dist, dist_derivative, zero_limits=None, p_floor=P_FLOOR):
    """Sum of (dP_n)^2 / P_n with explicit handling of vanishing terms.

    Terms with P_n below p_floor contribute zero_limits[n] when a limit
    array is supplied (pure states at interference zeros) and 0 otherwise
    (lossy statistics, where those contributions vanish identically).
    """
    probs = np.asarray(getattr(dist, "probs", dist), dtype=float)
    derivs = np.asarray(dist_derivative, dtype=float)
    if probs.shape != derivs.shape:
        raise ValueError("distribution and derivative sizes differ")
    if np.any(probs < 0):
        raise ValueError("negative probabilities")
    live = probs > p_floor
    total = float(np.sum(derivs[live] ** 2 / probs[live]))
    if zero_limits is not None:
        total += float(np.sum(np.asarray(zero_limits)[~live]))
    return total


def pure_state_fisher_terms(x, spec, n_max):
    """Per-outcome Fisher contributions 4*(dc_n)^2 of the pure state.

    Equals (dp_n)^2/p_n wherever p_n > 0 and its limit 2*d2p_n at the zeros,
    so it doubles as the zero_limits array for classical_fisher.
    """
    _, dc, _, _ = fock._scan(x, spec.r, n_max)
    return 4.0 * dc * dc


def exact_fisher(x, spec, channel=None, tail_tol=fock.DEFAULT_TAIL_TOL):
    """Classical Fisher information of the (lossy) photon statistics."""
    if channel is None or channel.epsilon == 0.0:
        dist, deriv = fock.distribution_pair(x, spec, tail_tol)
        limits = pure_state_fisher_terms(x, spec, dist.cutoff)
        return classical_fisher(dist, deriv, zero_limits=limits)
    dist, deriv = loss.lossy_pair(x, spec, channel, tail_tol)
    return classical_fisher(dist, deriv)


def quantum_fisher(spec, channel=None):
    """Displacement QFI of the (lossy) state; 4e^(2r) without loss."""
    eps = 0.0 if channel is None else channel.epsilon
    up = (1.0 - eps) * math.exp(2.0 * spec.r) + eps
    down = (1.0 - eps) * math.exp(-2.0 * spec.r) + eps
    return 4.0 * math.sqrt(up / down)


def avg_photon_sensitivity(x, spec, channel=None, tail_tol=fock.DEFAULT_TAIL_TOL):
    """Sensitivity of estimation from the mean photon number alone."""
    if x == 0.0:
        return 0.0
    if channel is None or channel.epsilon == 0.0:
        dist = fock.distribution(x, spec, tail_tol)
        dmean = 2.0 * x
    else:
        dist = loss.lossy_distribution(x, spec, channel, tail_tol)
        dmean = 2.0 * (1.0 - channel.epsilon) * x
    _, var = fock.moments(dist)
    return dmean * dmean / var


def reduction_factor(n, x_eff, spec, channel, zeros=None):
    """Sigmoid interpolation delta_n between the interference minima."""
    eff = loss.effective_spec(spec, channel)
    if zeros is None:
        zeros = [zp.x for zp in fock.zeros(n, eff)] if n >= 1 else []
    eps_beta = channel.epsilon * loss.dip_sharpness(spec, channel)
    if eps_beta == 0.0:
        hit = any(x_eff == z for z in zeros) or (n % 2 == 1 and x_eff == 0.0)
        return 1.0 if hit else 0.0
    prod = 1.0
    for z in zeros:
        d2 = (x_eff - z) ** 2
        prod *= d2 / (d2 + eps_beta)
    if n % 2 == 1:
        x2 = x_eff * x_eff
        prod *= x2 / (x2 + eps_beta)
    return 1.0 - prod


def _zero_ladder(n_max, scale):
    """All positive zeros for n = 0..n_max, flattened with slice offsets."""
    offsets = np.zeros(n_max + 2, dtype=np.int64)
    chunks = []
    for n in range(n_max + 1):
        roots = fock.hermite_positive_roots(n) * scale if n >= 2 else np.array([])
        chunks.append(roots)
        offsets[n + 1] = offsets[n] + roots.size
    flat = np.concatenate(chunks) if chunks else np.array([])
    return flat, offsets


def approx_fisher(x, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    """Loss-reduction model of the Fisher information.

    The pure-state information at the effective squeezing is reduced by a
    sum of sigmoid dips anchored at the interference zeros, then rescaled
    by the detection efficiency.
    """
    eps = channel.epsilon
    qfi_eff = quantum_fisher(spec, channel)
    if eps == 0.0:
        return qfi_eff
    eff = loss.effective_spec(spec, channel)
    x_eff = channel.displacement_scale * x
    n_max = fock._initial_cutoff(x_eff, eff.r)
    terms = pure_state_fisher_terms(x_eff, eff, n_max)
    scale = 0.5 * math.sqrt(-math.expm1(-4.0 * eff.r))
    flat, offsets = _zero_ladder(n_max, scale)
    deltas = np.empty(n_max + 1)
    _kernels.delta_factors(x_eff, flat, offsets,
                           eps * loss.dip_sharpness(spec, channel), deltas)
    reduction = float(terms @ deltas)
    return (1.0 - eps) * (qfi_eff - reduction)


def outcome_fisher_term(n, x, spec, channel=None, tail_tol=fock.DEFAULT_TAIL_TOL,
                        p_floor=P_FLOOR):
    """Single-outcome contribution I_n = (dP_n)^2 / P_n at displacement x."""
    if channel is None or channel.epsilon == 0.0:
        dist, deriv = fock.distribution_pair(x, spec, tail_tol)
        if n > dist.cutoff:
            return 0.0
        if dist.probs[n] <= p_floor:
            return float(pure_state_fisher_terms(x, spec, n)[n])
        return float(deriv[n] ** 2 / dist.probs[n])
    dist, deriv = loss.lossy_pair(x, spec, channel, tail_tol)
    if n > dist.cutoff or dist.probs[n] <= p_floor:
        return 0.0
    return float(deriv[n] ** 2 / dist.probs[n])


def dip_annotations(spec, channel, n_max, x_min=None, x_max=None, depth_floor=0.0):
    """Dips (n, k, position, depth) sorted by position, optionally windowed."""
    if channel.epsilon <= 0.0:
        raise ValueError("dip annotations require a lossy channel")
    eff = loss.effective_spec(spec, channel)
    stretch = 1.0 / channel.displacement_scale
    out = []
    for n in range(2, n_max + 1):
        for zp in fock.zeros(n, eff):
            x_dip = zp.x * stretch
            if x_min is not None and x_dip < x_min:
                continue
            if x_max is not None and x_dip > x_max:
                continue
            depth = float(pure_state_fisher_terms(zp.x, eff, n)[n])
            if depth < depth_floor:
                continue
            out.append(DipAnnotation(n=n, k=zp.k, x_dip=float(x_dip), depth=depth))
    out.sort(key=lambda d: d.x_dip)
    return tuple(out)


def refine_dip_location(annotation, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    """Locate the true minimum of I_n near its closed-form dip position."""
    width = math.sqrt(channel.epsilon * loss.dip_sharpness(spec, channel))
    lo = max(annotation.x_dip - 2.0 * width, 0.0)
    hi = annotation.x_dip + 2.0 * width

    def target(x):
        return outcome_fisher_term(annotation.n, x, spec, channel, tail_tol)

    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - ratio * (hi - lo)
    d = lo + ratio * (hi - lo)
    fc, fd = target(c), target(d)
    while hi - lo > 1e-9:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - ratio * (hi - lo)
            fc = target(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + ratio * (hi - lo)
            fd = target(d)
    return 0.5 * (lo + hi)


def fisher_curve(x_grid, spec, channel=None, tail_tol=fock.DEFAULT_TAIL_TOL,
                 dip_n_max=None, dip_depth_floor=0.0):
    """Exact, approximate, and mean-photon sensitivities over a grid."""
    x_grid = np.asarray(x_grid, dtype=float)
    cfi = np.array([exact_fisher(x, spec, channel, tail_tol) for x in x_grid])
    if channel is None or channel.epsilon == 0.0:
        approx = np.full(x_grid.size, quantum_fisher(spec))
        dips = ()
    else:
        approx = np.array([approx_fisher(x, spec, channel, tail_tol) for x in x_grid])
        if dip_n_max is None:
            eff = loss.effective_spec(spec, channel)
            dip_n_max = fock._initial_cutoff(
                channel.displacement_scale * float(x_grid.max()), eff.r)
        dips = dip_annotations(spec, channel, dip_n_max,
                               x_min=float(x_grid.min()), x_max=float(x_grid.max()),
                               depth_floor=dip_depth_floor)
    iavg = np.array([avg_photon_sensitivity(x, spec, channel, tail_tol)
                     for x in x_grid])
    return FisherCurve(x_grid=x_grid, cfi_exact=cfi, ifisher_approx=approx,
                       i_avg=iavg, qfi=quantum_fisher(spec, channel), dips=dips)
