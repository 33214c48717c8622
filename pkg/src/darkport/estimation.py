"""Monte Carlo displacement-estimation experiments with photon counting."""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import _kernels, fisher, fock, loss
from .errors import EstimationError

GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one repeated-sampling estimation experiment."""

    spec: object
    channel: object
    x_true: float
    n_samples: int = 2000
    n_trials: int = 200
    seed: int = 0
    search_interval: tuple = None

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("need at least one sample per trial")
        if self.n_trials < 2:
            raise ValueError("need at least two trials for error bars")
        if self.x_true < 0:
            raise ValueError("true displacement must be >= 0")
        if self.search_interval is not None:
            lo, hi = self.search_interval
            if not lo < hi:
                raise ValueError("empty search interval")
            if not lo <= self.x_true <= hi:
                raise ValueError("search interval must contain x_true")


@dataclass(frozen=True)
class EstimationReport:
    """Per-trial estimates and the derived sensitivity with its error bar."""

    method: str
    estimates: np.ndarray
    variance: float
    sensitivity: float
    std_error: float
    predicted_cfi: float
    x_true: float
    n_samples: int
    n_trials: int
    seed: int
    search_interval: tuple
    r: float
    epsilon: float

    def to_json_dict(self):
        return {
            "schema": "darkport.estimation_report.v1",
            "method": self.method,
            "estimates": list(map(float, self.estimates)),
            "variance": self.variance,
            "sensitivity": self.sensitivity,
            "std_error": self.std_error,
            "predicted_cfi": self.predicted_cfi,
            "x_true": self.x_true,
            "n_samples": self.n_samples,
            "n_trials": self.n_trials,
            "seed": self.seed,
            "search_interval": list(self.search_interval) if self.search_interval else None,
            "r": self.r,
            "epsilon": self.epsilon,
        }

    def to_json(self, path):
        with open(path, "w") as handle:
            json.dump(self.to_json_dict(), handle, indent=1)

    @staticmethod
    def csv_header():
        return "method,x_true,n_samples,n_trials,sensitivity,std_error,predicted_cfi"

    def to_csv_row(self):
        return (f"{self.method},{self.x_true:.17g},{self.n_samples},{self.n_trials},"
                f"{self.sensitivity:.17g},{self.std_error:.17g},{self.predicted_cfi:.17g}")


def default_search_interval(x_true, n_samples, cfi):
    """Several asymptotic standard deviations plus a constant guard band."""
    half = 5.0 / math.sqrt(n_samples * cfi) + 0.5
    return (max(0.0, x_true - half), x_true + half)


def sample(dist, n_samples, seed):
    """Multinomial photon counts, reproducible per seed."""
    probs = np.asarray(dist.probs, dtype=float)
    rng = np.random.default_rng(seed)
    return rng.multinomial(n_samples, probs / probs.sum())


def _loglik_factory(counts, spec, channel):
    counts = np.asarray(counts)
    idx = np.nonzero(counts)[0]
    if idx.size == 0:
        raise EstimationError("no counts supplied")
    weights = counts[idx].astype(float)
    eps = 0.0 if channel is None else channel.epsilon
    if eps >= 1.0:
        raise EstimationError("full loss leaves no displacement information")
    top = int(idx.max())

    if eps == 0.0:
        def loglik(x):
            _, _, logmag, _ = fock._scan(x, spec.r, top)
            return float(weights @ (2.0 * logmag[idx]))
        return loglik

    log_keep = math.log1p(-eps)
    log_loss = math.log(eps)
    rows = idx.astype(np.int64)
    cache = {"lgam": gammaln(np.arange(top + 61, dtype=float) + 1.0)}

    def loglik(x):
        nin = max(fock._initial_cutoff(x, spec.r), top) + 60
        if cache["lgam"].size < nin + 1:
            cache["lgam"] = gammaln(np.arange(nin + 1, dtype=float) + 1.0)
        c = fock._scan(x, spec.r, nin)[0]
        out = np.empty(rows.size)
        _kernels.thin_select(c * c, cache["lgam"][:nin + 1], log_keep, log_loss,
                             rows, out)
        return float(weights @ np.log(np.maximum(out, 1e-300)))

    return loglik


def _golden_max(func, lo, hi, tol=1e-6):
    c = hi - GOLDEN_RATIO * (hi - lo)
    d = lo + GOLDEN_RATIO * (hi - lo)
    fc, fd = func(c), func(d)
    while hi - lo > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN_RATIO * (hi - lo)
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN_RATIO * (hi - lo)
            fd = func(d)
    return 0.5 * (lo + hi)


def mle_estimate(counts, spec, channel, search_interval, n_grid=200, top_k=8,
                 tol=1e-6):
    """Maximum-likelihood displacement from observed photon counts.

    The likelihood oscillates through the interference fringes, so a single
    local polish is not reliable: the coarse-grid maximum and the runners-up
    are each refined and the best refined point wins.
    """
    lo, hi = search_interval
    if not lo < hi:
        raise EstimationError("empty search interval")
    loglik = _loglik_factory(counts, spec, channel)
    grid = np.linspace(lo, hi, n_grid)
    values = np.array([loglik(g) for g in grid])
    finite = np.isfinite(values)
    if not finite.any():
        raise EstimationError(
            f"likelihood is -inf across [{lo:.6g}, {hi:.6g}]; "
            f"counts support max index {int(np.nonzero(counts)[0].max())}"
        )
    if float(values[finite].max() - values[finite].min()) == 0.0 and finite.all():
        raise EstimationError("likelihood is flat across the search interval")
    order = np.argsort(values)[::-1]
    picked = []
    for i in order:
        if not np.isfinite(values[i]):
            break
        if all(abs(int(i) - j) > 2 for j in picked):
            picked.append(int(i))
        if len(picked) >= top_k:
            break
    best_x, best_val = None, -np.inf
    for i in picked:
        bracket_lo = grid[max(0, i - 1)]
        bracket_hi = grid[min(n_grid - 1, i + 1)]
        refined = _golden_max(loglik, bracket_lo, bracket_hi, tol)
        val = loglik(refined)
        if val > best_val:
            best_val, best_x = val, refined
    return float(best_x)


def _jackknife(squared_errors, n_samples):
    trials = squared_errors.size
    sens = np.empty(trials)
    total = squared_errors.sum()
    for i in range(trials):
        sens[i] = (trials - 1) / (n_samples * (total - squared_errors[i]))
    centered = sens - sens.mean()
    return math.sqrt((trials - 1) * float(np.mean(centered * centered)))


def _report(method, cfg, estimates, interval):
    sq = (estimates - cfg.x_true) ** 2
    mse = float(np.mean(sq))
    predicted = fisher.exact_fisher(cfg.x_true, cfg.spec, cfg.channel)
    return EstimationReport(
        method=method,
        estimates=estimates,
        variance=mse,
        sensitivity=1.0 / (cfg.n_samples * mse),
        std_error=_jackknife(sq, cfg.n_samples),
        predicted_cfi=predicted,
        x_true=cfg.x_true,
        n_samples=cfg.n_samples,
        n_trials=cfg.n_trials,
        seed=cfg.seed,
        search_interval=interval,
        r=cfg.spec.r,
        epsilon=0.0 if cfg.channel is None else cfg.channel.epsilon,
    )


def _trial_counts(cfg):
    dist, _ = loss.lossy_pair(cfg.x_true, cfg.spec, cfg.channel) \
        if cfg.channel is not None and cfg.channel.epsilon > 0 \
        else fock.distribution_pair(cfg.x_true, cfg.spec)
    probs = dist.probs / dist.probs.sum()
    for trial in range(cfg.n_trials):
        rng = np.random.default_rng((cfg.seed, trial))
        yield rng.multinomial(cfg.n_samples, probs)


def run_experiment(cfg):
    """Repeated maximum-likelihood experiments; sensitivity vs predicted CFI."""
    if cfg.search_interval is not None:
        interval = tuple(cfg.search_interval)
    else:
        cfi = fisher.exact_fisher(cfg.x_true, cfg.spec, cfg.channel)
        interval = default_search_interval(cfg.x_true, cfg.n_samples, cfi)
    estimates = np.empty(cfg.n_trials)
    for trial, counts in enumerate(_trial_counts(cfg)):
        estimates[trial] = mle_estimate(counts, cfg.spec, cfg.channel, interval)
    return _report("mle", cfg, estimates, interval)


def run_avg_estimator(cfg):
    """Moment estimator: invert the sample-mean photon number through n(x)."""
    if cfg.x_true <= 0:
        raise ValueError("mean inversion needs x_true > 0")
    eps = 0.0 if cfg.channel is None else cfg.channel.epsilon
    offset = math.sinh(cfg.spec.r) ** 2
    estimates = np.empty(cfg.n_trials)
    arange_cache = None
    for trial, counts in enumerate(_trial_counts(cfg)):
        if arange_cache is None or arange_cache.size != counts.size:
            arange_cache = np.arange(counts.size, dtype=float)
        mean = float(counts @ arange_cache) / cfg.n_samples
        inner = mean / (1.0 - eps) - offset
        if inner < 0:
            raise EstimationError(
                f"trial {trial}: sample mean {mean:.6g} outside invertible range"
            )
        estimates[trial] = math.sqrt(inner)
    return _report("avg_photon", cfg, estimates, cfg.search_interval)
