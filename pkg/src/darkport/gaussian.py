"""Gaussian model of the two-path interferometer and its dark port.

Conventions used throughout the package: X = (a + a')/2, Y = (a - a')/(2i),
so the vacuum has variance 1/4 in both quadratures; displacing by x shifts
<X> by x; squeezing by r gives quadrature spreads e^(-r)/2 and e^(r)/2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCovarianceError

VACUUM_VARIANCE = 0.25

COVARIANCE_TOL = 1e-10


@dataclass(frozen=True)
class SqueezedVacuumSpec:
    """Single squeezing parameter with its derived constants."""

    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("squeezing parameter must be >= 0")

    @property
    def gamma(self):
        return math.tanh(self.r)

    @property
    def chord_scale(self):
        """1/sqrt(1 - e^(-4r)); scales displacement into Hermite argument."""
        if self.r == 0:
            return math.inf
        return 1.0 / math.sqrt(-math.expm1(-4.0 * self.r))

    @property
    def x_uncertainty(self):
        return 0.5 * math.exp(-self.r)

    @property
    def y_uncertainty(self):
        return 0.5 * math.exp(self.r)

    @property
    def photon_number_std(self):
        return math.sinh(2.0 * self.r) / math.sqrt(2.0)

    @property
    def critical_displacement(self):
        """Displacement where mean-photon estimation reaches half the QFI."""
        return (math.exp(3.0 * self.r) - math.exp(-self.r)) / (2.0 * math.sqrt(2.0))

    @property
    def qfi(self):
        return 4.0 * math.exp(2.0 * self.r)


@dataclass(frozen=True)
class InterferometerConfig:
    """Coherent drive amplitude, phase difference, and squeezing."""

    alpha: float
    phi: float
    r: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("coherent amplitude must be positive")
        if not abs(self.phi) < math.pi:
            raise ValueError("phase must satisfy |phi| < pi")


def symplectic_form():
    """Standard symplectic form in the (X1, Y1, X2, Y2) ordering."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((4, 4))
    out[:2, :2] = j
    out[2:, 2:] = j
    return out


@dataclass(frozen=True)
class TwoModeGaussianState:
    """Mean vector and covariance in the (X1, Y1, X2, Y2) ordering."""

    mean: np.ndarray
    cov: np.ndarray

    def validate(self, tol=COVARIANCE_TOL):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (4,) or cov.shape != (4, 4):
            raise InvalidCovarianceError("state must have a 4-vector mean and 4x4 covariance")
        if not np.allclose(cov, cov.T, atol=tol):
            raise InvalidCovarianceError("covariance is not symmetric")
        herm = cov + 0.25j * symplectic_form()
        lo = float(np.linalg.eigvalsh(herm).min())
        if lo < -tol:
            raise InvalidCovarianceError(
                f"uncertainty relation violated: min eigenvalue {lo:.3e}"
            )
        return self


def two_mode_input(alpha, spec):
    """Squeezed vacuum in mode 1, coherent drive alpha in mode 2."""
    mean = np.array([0.0, 0.0, float(alpha), 0.0])
    e2r = math.exp(2.0 * spec.r)
    cov = np.diag([VACUUM_VARIANCE / e2r, VACUUM_VARIANCE * e2r,
                   VACUUM_VARIANCE, VACUUM_VARIANCE])
    return TwoModeGaussianState(mean, cov)


def _rotation(phi):
    c = math.cos(0.5 * phi)
    s = math.sin(0.5 * phi)
    rot = np.zeros((4, 4))
    # same mixing applied to the X pair and the Y pair
    rot[0, 0] = c
    rot[0, 2] = s
    rot[2, 0] = -s
    rot[2, 2] = c
    rot[1, 1] = c
    rot[1, 3] = s
    rot[3, 1] = -s
    rot[3, 3] = c
    return rot


def interferometer_transform(state, phi):
    """Mode mixing at relative phase phi; mode 1 is the dark port."""
    state.validate()
    rot = _rotation(phi)
    mean = rot @ np.asarray(state.mean, dtype=float)
    cov = rot @ np.asarray(state.cov, dtype=float) @ rot.T
    return TwoModeGaussianState(mean, cov)


def reduce_dark_port(state):
    """Marginal of mode 1: (mean 2-vector, 2x2 covariance)."""
    state.validate()
    mean = np.asarray(state.mean, dtype=float)[:2].copy()
    cov = np.asarray(state.cov, dtype=float)[:2, :2].copy()
    return mean, cov


def _single_mode_fidelity(mean_a, cov_a, mean_b, cov_b):
    for cov in (cov_a, cov_b):
        herm = np.asarray(cov) + 0.25j * np.array([[0.0, 1.0], [-1.0, 0.0]])
        if float(np.linalg.eigvalsh(herm).min()) < -COVARIANCE_TOL:
            raise InvalidCovarianceError("non-physical single-mode covariance")
    vsum = cov_a + cov_b
    delta = np.asarray(mean_a, dtype=float) - np.asarray(mean_b, dtype=float)
    big_delta = 4.0 * float(np.linalg.det(vsum))
    big_lambda = (16.0 * float(np.linalg.det(cov_a)) - 1.0) \
        * (16.0 * float(np.linalg.det(cov_b)) - 1.0) / 4.0
    big_lambda = max(big_lambda, 0.0)
    denom = math.sqrt(big_delta + big_lambda) - math.sqrt(big_lambda)
    quad = float(delta @ np.linalg.solve(vsum, delta))
    return math.exp(-0.5 * quad) / denom


def dark_port_fidelity(state, spec, x):
    """Fidelity of the reduced dark port against the ideal displaced squeezed state."""
    mean, cov = reduce_dark_port(state)
    e2r = math.exp(2.0 * spec.r)
    ideal_mean = np.array([float(x), 0.0])
    ideal_cov = np.diag([VACUUM_VARIANCE / e2r, VACUUM_VARIANCE * e2r])
    fid = _single_mode_fidelity(mean, cov, ideal_mean, ideal_cov)
    return min(fid, 1.0)


def phase_to_displacement(cfg):
    """Small-phase map phi -> x = alpha*phi/2."""
    return 0.5 * cfg.alpha * cfg.phi


def exact_dark_port_displacement(cfg):
    """Exact dark-port mean displacement alpha*sin(phi/2)."""
    return cfg.alpha * math.sin(0.5 * cfg.phi)


def displacement_sensitivity_to_phase(inv_var_x, alpha):
    """Convert displacement sensitivity 1/var(x) into phase sensitivity."""
    if inv_var_x < 0:
        raise ValueError("inverse variance must be >= 0")
    return 0.25 * alpha * alpha * inv_var_x


def critical_phase(spec, alpha):
    """Phase at which mean-photon estimation reaches half the QFI."""
    if alpha <= 0:
        raise ValueError("coherent amplitude must be positive")
    return 2.0 * spec.critical_displacement / alpha
