"""Photon-loss channel for lossy number-resolved detection.

Loss with probability epsilon thins the photon statistics binomially and is
equivalent to replacing the pure displaced squeezed state by a displaced
squeezed thermal state with a reduced squeezing parameter and a rescaled
displacement. Both descriptions are implemented; the convolution is the
authoritative one.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from . import _kernels, fock
from .errors import DarkportError
from .gaussian import SqueezedVacuumSpec

MIXTURE_MAX_EPSILON = 0.1
MIXTURE_WARN_EPSILON = 0.02


@dataclass(frozen=True)
class LossChannel:
    """Detection loss with probability epsilon per photon."""

    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("loss probability must be in [0, 1]")

    @property
    def displacement_scale(self):
        """Displacement shrinks by sqrt(1-eps) when loss precedes displacement."""
        return math.sqrt(1.0 - self.epsilon)


def compose_channels(first, second):
    """Sequential losses combine into a single loss channel."""
    keep = (1.0 - first.epsilon) * (1.0 - second.epsilon)
    return LossChannel(epsilon=1.0 - keep)


def thermal_coefficient(spec, channel):
    """Geometric weight of the thermal decomposition of the lossy state."""
    eps = channel.epsilon
    gain = math.sqrt(1.0 + 4.0 * (1.0 - eps) * eps * math.sinh(spec.r) ** 2)
    return (gain - 1.0) / (gain + 1.0)


def effective_squeezing(spec, channel):
    """Squeezing parameter of the equivalent squeezed thermal state."""
    eps = channel.epsilon
    up = (1.0 - eps) * math.exp(2.0 * spec.r) + eps
    down = (1.0 - eps) * math.exp(-2.0 * spec.r) + eps
    return 0.25 * math.log(up / down)


def effective_spec(spec, channel):
    return SqueezedVacuumSpec(r=effective_squeezing(spec, channel))


def dip_sharpness(spec, channel):
    """Sharpness coefficient of loss-induced Fisher dips, width sqrt(eps*beta)."""
    return math.sinh(spec.r) ** 2 * math.exp(-2.0 * effective_squeezing(spec, channel))


def thermal_decomposition(spec, channel, weight_tol=1e-14):
    """(thermal coefficient, effective squeezing, number-state weights)."""
    lam = thermal_coefficient(spec, channel)
    r_eff = effective_squeezing(spec, channel)
    if lam == 0.0:
        return lam, r_eff, np.array([1.0])
    m_max = int(math.ceil(math.log(weight_tol / (1.0 - lam)) / math.log(lam)))
    weights = (1.0 - lam) * lam ** np.arange(m_max + 1, dtype=float)
    return lam, r_eff, weights


def lossy_expected_photon_number(x, spec, channel):
    return (1.0 - channel.epsilon) * fock.expected_photon_number(x, spec)


def lossy_photon_number_variance(x, spec, channel):
    keep = 1.0 - channel.epsilon
    return (keep * keep * fock.photon_number_variance(x, spec)
            + channel.epsilon * keep * fock.expected_photon_number(x, spec))


def lossy_pair(x, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    """Lossy distribution and its x-derivative from one inner scan."""
    eps = channel.epsilon
    if eps == 0.0:
        return fock.distribution_pair(x, spec, tail_tol)
    if eps == 1.0:
        probs = np.array([1.0])
        return fock.PhotonDistribution(probs=probs, cutoff=0, norm_deficit=0.0), \
            np.array([0.0])
    # inner support resolved 100x tighter so the convolution inherits the tail
    nin, (c, dc, _, _), _ = fock._pure_scan_to_tol(x, spec.r, tail_tol * 1e-2)
    p = c * c
    dp = 2.0 * c * dc
    lgam = gammaln(np.arange(nin + 1, dtype=float) + 1.0)
    out_p = np.empty(nin + 1)
    out_dp = np.empty(nin + 1)
    _kernels.thin_pair(p, dp, lgam, math.log1p(-eps), math.log(eps), out_p, out_dp)
    deficit = max(0.0, 1.0 - float(out_p.sum()))
    dist = fock.PhotonDistribution(probs=out_p, cutoff=nin, norm_deficit=deficit)
    return dist, out_dp


def lossy_distribution(x, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    dist, _ = lossy_pair(x, spec, channel, tail_tol)
    return dist


def lossy_distribution_derivative(x, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    _, deriv = lossy_pair(x, spec, channel, tail_tol)
    return deriv


def mixture_approx_distribution(x, spec, channel, tail_tol=fock.DEFAULT_TAIL_TOL):
    """First-order mixture model of the lossy state, valid for small losses."""
    eps = channel.epsilon
    if eps > MIXTURE_MAX_EPSILON:
        raise DarkportError(
            f"mixture model supports eps <= {MIXTURE_MAX_EPSILON}; got {eps}"
        )
    if eps > MIXTURE_WARN_EPSILON:
        warnings.warn(
            f"mixture model degrades above eps = {MIXTURE_WARN_EPSILON}",
            stacklevel=2,
        )
    eff = effective_spec(spec, channel)
    x_eff = channel.displacement_scale * x
    weight = eps * math.sinh(spec.r) ** 2
    base = fock.number_state_amplitudes(0, x_eff, eff, tail_tol)
    probs = (1.0 - weight) * base * base
    if weight > 0.0:
        single = fock.number_state_amplitudes(1, x_eff, eff, tail_tol)
        size = max(probs.size, single.size)
        mix = np.zeros(size)
        mix[:probs.size] = probs
        mix[:single.size] += weight * single * single
        probs = mix
    deficit = max(0.0, 1.0 - float(probs.sum()))
    return fock.PhotonDistribution(probs=probs, cutoff=probs.size - 1,
                                   norm_deficit=deficit)


def density_operator_oracle(x, spec, channel, dim=None, displace_first=True):
    """Kraus-operator reference for the lossy state's density matrix.

    displace_first=True loses the displaced state; False loses the squeezed
    vacuum first and then displaces by the rescaled displacement. The two
    agree exactly for this channel.
    """
    eps = channel.epsilon
    if dim is None:
        dim = 4 * fock._initial_cutoff(x, spec.r)
    psi = fock._scan(x if displace_first else 0.0, spec.r, dim - 1)[0]
    deficit = max(0.0, 1.0 - float(psi @ psi))
    if deficit > 1e-10:
        raise DarkportError(f"oracle dimension {dim} too small: tail {deficit:.3e}")
    if eps == 0.0:
        rho = np.outer(psi, psi)
    else:
        keep_half = (1.0 - eps) ** (0.5 * np.arange(dim))
        rho = np.zeros((dim, dim))
        vec = psi.copy()
        trace = 0.0
        for k in range(dim):
            if k > 0:
                vec = np.append(np.sqrt(np.arange(1.0, dim)) * vec[1:], 0.0)
            if k > 0:
                log_f = 0.5 * (k * math.log(eps) - math.lgamma(k + 1.0))
            else:
                log_f = 0.0
            branch = math.exp(log_f) * keep_half * vec
            rho += np.outer(branch, branch)
            trace += float(branch @ branch)
            if 1.0 - trace <= 1e-14:
                break
    if not displace_first:
        a = np.diag(np.sqrt(np.arange(1.0, dim)), 1)
        displacer = expm(channel.displacement_scale * x * (a.T - a))
        rho = displacer @ rho @ displacer.T
    return rho
