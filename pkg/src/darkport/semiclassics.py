"""Semiclassical approximations of the photon-number distribution.

The fringe-zone model writes p_n as an envelope in the radial coordinate
y = sqrt(n + 1/2 - (zeta*x)^2) times an interference factor cos^2(S - pi/4).
The interference phase S is evaluated from the exact circular-segment area;
the cubic small-y approximation 2y^3/(3 zeta x) is exposed separately via
action() and drives the closed-form minima ladder.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import fock

MIN_DISPLACEMENT = 1e-6


def _require_squeezing(spec):
    if spec.r <= 0:
        raise ValueError("semiclassical forms need a positive squeezing parameter")


def _require_displacement(x):
    if x < MIN_DISPLACEMENT:
        raise ValueError(
            f"displacement below {MIN_DISPLACEMENT:g} is singular for the action"
        )


@dataclass(frozen=True)
class MinimaGeometry:
    """Fringe-minima ladder at a fixed displacement."""

    x: float
    y_min: tuple
    n_min: tuple
    k_count: int


def envelope(n, x, spec, forbidden="error"):
    """Coarse-grained (fringe-averaged) probability density at photon number n.

    forbidden selects the behaviour outside the classically allowed region:
    "error" raises, "zero" returns 0 there.
    """
    _require_squeezing(spec)
    n_arr = np.asarray(n, dtype=float)
    zx = spec.chord_scale * x
    y2 = n_arr + 0.5 - zx * zx
    allowed = y2 > 0
    if forbidden == "error":
        if not np.all(allowed):
            raise ValueError("photon number in the classically forbidden region")
    elif forbidden != "zero":
        raise ValueError("forbidden must be 'error' or 'zero'")
    var_y = spec.y_uncertainty ** 2
    out = np.zeros_like(n_arr)
    y2_ok = np.where(allowed, y2, 1.0)
    out = np.where(
        allowed,
        np.exp(-y2_ok / (2.0 * var_y)) / np.sqrt(2.0 * math.pi * var_y * y2_ok),
        0.0,
    )
    if n_arr.ndim == 0:
        return float(out)
    return out


def action(y, x, spec):
    """Cubic interference phase 2*y^3/(3*zeta*x); singular at x = 0."""
    _require_squeezing(spec)
    _require_displacement(x)
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0):
        raise ValueError("radial coordinate must be >= 0")
    out = 2.0 * y_arr ** 3 / (3.0 * spec.chord_scale * x)
    if y_arr.ndim == 0:
        return float(out)
    return out


def segment_action(n, x, spec):
    """Exact circular-segment interference phase for allowed photon numbers."""
    _require_squeezing(spec)
    _require_displacement(x)
    n_arr = np.asarray(n, dtype=float)
    r2 = n_arr + 0.5
    zx = spec.chord_scale * x
    y2 = r2 - zx * zx
    if np.any(y2 <= 0):
        raise ValueError("photon number in the classically forbidden region")
    out = r2 * np.arccos(zx / np.sqrt(r2)) - zx * np.sqrt(y2)
    if n_arr.ndim == 0:
        return float(out)
    return out


def wkb_probability(n, x, spec):
    """Envelope times interference factor; 0 in the forbidden region."""
    _require_squeezing(spec)
    _require_displacement(x)
    n_arr = np.asarray(n, dtype=float)
    zx = spec.chord_scale * x
    y2 = n_arr + 0.5 - zx * zx
    allowed = y2 > 0
    rho = envelope(n_arr, x, spec, forbidden="zero")
    r2 = n_arr + 0.5
    y2_ok = np.where(allowed, y2, 1.0)
    phase = r2 * np.arccos(np.minimum(zx / np.sqrt(r2), 1.0)) - zx * np.sqrt(y2_ok)
    out = np.where(allowed, 2.0 * rho * np.cos(phase - 0.25 * math.pi) ** 2, 0.0)
    if n_arr.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class WkbApprox:
    """Fringe-model snapshot at one displacement."""

    x: float
    spec: object
    approx_probs: np.ndarray

    def envelope(self, n):
        return envelope(n, self.x, self.spec, forbidden="zero")

    def action(self, n):
        return segment_action(n, self.x, self.spec)


def wkb_approximation(x, spec, n_max=None):
    _require_squeezing(spec)
    _require_displacement(x)
    if n_max is None:
        n_max = fock._initial_cutoff(x, spec.r)
    probs = wkb_probability(np.arange(n_max + 1), x, spec)
    return WkbApprox(x=float(x), spec=spec, approx_probs=probs)


def minima_count(y, x, spec):
    """Number of fringe minima at or below radial coordinate y."""
    return int(math.floor(action(y, x, spec) / math.pi + 0.25 + 1e-12))


def y_of_minimum(k, x, spec):
    """Radial position of the k-th fringe minimum (cubic-action ladder)."""
    _require_squeezing(spec)
    _require_displacement(x)
    if k < 1:
        raise ValueError("minimum index must be >= 1")
    return ((4.0 * k - 1.0) * 3.0 * math.pi * spec.chord_scale * x / 8.0) ** (1.0 / 3.0)


def n_of_minimum(k, x, spec):
    """Photon number of the k-th fringe minimum."""
    zx = spec.chord_scale * x
    y = y_of_minimum(k, x, spec)
    return zx * zx + y * y - 0.5


def minima_geometry(x, spec, y_limit):
    """Ladder of fringe minima with radial coordinate up to y_limit."""
    count = minima_count(y_limit, x, spec)
    ys = tuple(y_of_minimum(k, x, spec) for k in range(1, count + 1))
    ns = tuple(n_of_minimum(k, x, spec) for k in range(1, count + 1))
    return MinimaGeometry(x=float(x), y_min=ys, n_min=ns, k_count=count)


def first_fringe_displacement(spec):
    """Displacement whose first fringe minimum sits one y-spread out."""
    _require_squeezing(spec)
    dy = spec.y_uncertainty
    return 8.0 * dy ** 3 / (9.0 * math.pi * spec.chord_scale)


def gaussian_approx(n, x, spec):
    """Single-peak normal density with the exact mean and variance."""
    n_arr = np.asarray(n, dtype=float)
    nbar = fock.expected_photon_number(x, spec)
    var = fock.photon_number_variance(x, spec)
    out = np.exp(-((n_arr - nbar) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)
    if n_arr.ndim == 0:
        return float(out)
    return out


def phase_gap(n, x):
    """Angular separation of the two interfering phase-space points.

    Returns (gap, fringe_period): the period is the photon-number spacing
    2*pi/gap of consecutive minima near n.
    """
    r2 = n + 0.5
    if x * x >= r2:
        raise ValueError("photon number in the classically forbidden region")
    gap = 2.0 * math.acos(x / math.sqrt(r2))
    return gap, 2.0 * math.pi / gap
