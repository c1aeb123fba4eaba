"""
Resampling calibration of the t-energy statistic.

Under the null hypothesis the two samples come from one distribution, so
the pooled sample stands in for it. Each trial draws two pseudo-samples of
sizes ``n1`` and ``n2`` from the pooled points, either with replacement
(bootstrap) or as a split of a random permutation, and evaluates the
t-energy statistic on them. The pooled distance matrix is computed once;
a resampled statistic only needs lookups into it.

Random numbers come from numpy's PCG64. Trial ``b`` uses the generator
seeded by ``SeedSequence(seed, spawn_key=(b,))``, so the vector of
resampled statistics does not depend on how trials are spread over
threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .energy import EnergyReport, as_samples, energy_from_distances, \
    energy_statistic, metric_name, pairwise_distance_matrix
from .exceptions import InputError
from .shapes import as_complex_landmarks, preshapes

__all__ = [
    "BOOTSTRAP",
    "PERMUTATION",
    "CalibrationResult",
    "DEFAULT_ALPHAS",
    "ResamplePlan",
    "TwoSampleResult",
    "bootstrap_resample_pooled",
    "calibrate",
    "critical_value",
    "p_value",
    "permutation_resample_pooled",
    "shape_energy_test",
    "trial_rng",
    "two_sample_energy_test",
]

BOOTSTRAP = "bootstrap_with_replacement"
PERMUTATION = "permutation"
_METHOD_ALIASES = {
    "bootstrap": BOOTSTRAP,
    BOOTSTRAP: BOOTSTRAP,
    "permutation": PERMUTATION,
    "perm": PERMUTATION,
}
DEFAULT_ALPHAS = (0.1, 0.05, 0.01)
DEFAULT_SEED = 20170101
_MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class ResamplePlan:
    """How to resample: method, number of trials, master seed and sizes."""

    n1: int
    n2: int
    method: str = BOOTSTRAP
    trials: int = 1000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        method = _METHOD_ALIASES.get(self.method)
        if method is None:
            raise InputError("unknown resampling method {!r}".format(
                self.method))
        object.__setattr__(self, "method", method)
        for name in ("n1", "n2", "trials"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InputError("{} must be a positive integer, got "
                                 "{!r}".format(name, value))
            object.__setattr__(self, name, int(value))
        if int(self.seed) != self.seed or not 0 <= self.seed <= _MAX_SEED:
            raise InputError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "seed", int(self.seed))


def trial_rng(seed, trial):
    """Independent generator for one trial, derived from the master seed."""
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(trial,))))


def _pooled_size(pooled, n1, n2):
    n = pooled if isinstance(pooled, (int, np.integer)) else len(pooled)
    if n != n1 + n2:
        raise InputError("pooled sample has {} points, expected n1 + n2 = "
                         "{}".format(n, n1 + n2))
    return n


def bootstrap_resample_pooled(pooled, n1, n2, rng):
    """
    Draw ``n1 + n2`` indices uniformly with replacement from the pool.

    ``pooled`` is the pooled sample or its size. Returns two 0-based
    index arrays of lengths ``n1`` and ``n2``.
    """
    n = _pooled_size(pooled, n1, n2)
    idx = rng.integers(0, n, size=n1 + n2)
    return idx[:n1], idx[n1:]


def permutation_resample_pooled(pooled, n1, n2, rng):
    """Split a uniform random permutation of the pool into ``n1`` and ``n2``."""
    n = _pooled_size(pooled, n1, n2)
    idx = rng.permutation(n)
    return idx[:n1], idx[n1:]


_RESAMPLERS = {BOOTSTRAP: bootstrap_resample_pooled,
               PERMUTATION: permutation_resample_pooled}


def _t_from_pooled(dist, idx, n1, n2):
    sub = dist[np.ix_(idx, idx)]
    cross = sub[:n1, n1:].sum() / (n1 * n2)
    within_x = sub[:n1, :n1].sum() / (n1 * n1)
    within_y = sub[n1:, n1:].sum() / (n2 * n2)
    return n1 * n2 / (n1 + n2) * (2.0 * cross - within_x - within_y)


def _upper_rank(alpha, trials):
    if not 0.0 < alpha < 1.0:
        raise InputError("alpha must lie in (0, 1), got {!r}".format(alpha))
    # rounding guards against (1 - 0.05) * 100 = 95.00000000000001
    rank = math.ceil(round((1.0 - alpha) * trials, 9))
    return min(max(rank, 1), trials)


def _critical(sorted_t, alpha):
    return float(sorted_t[_upper_rank(alpha, len(sorted_t)) - 1])


def _p_value(t_star, t_observed):
    return (1 + int(np.count_nonzero(t_star >= t_observed))) / (len(t_star) + 1)


@dataclass(frozen=True)
class CalibrationResult:
    """Resampled t-energy values with the derived p-value and thresholds."""

    t_star: np.ndarray = field(repr=False)
    plan: ResamplePlan
    t_observed: float
    p_value: float
    critical_values: dict


def critical_value(cal, alpha):
    """
    Empirical upper-``alpha`` threshold of the resampled statistics.

    Returns the ``ceil((1 - alpha) B)``-th smallest of the ``B`` values.
    ``cal`` is a CalibrationResult or a plain array of values.

    Examples
    --------
    >>> critical_value(np.arange(1.0, 101.0), 0.05)
    95.0
    """
    t_star = np.asarray(getattr(cal, "t_star", cal), dtype=float)
    if t_star.ndim != 1 or t_star.size == 0:
        raise InputError("need a nonempty 1-D array of resampled values")
    return _critical(np.sort(t_star), alpha)


def p_value(cal):
    """``(1 + #{t* >= t_observed}) / (B + 1)``; ties count against H0."""
    return _p_value(np.asarray(cal.t_star), cal.t_observed)


def _pooled_distances(x, y, metric):
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    if x.shape[1] != y.shape[1]:
        raise InputError("x and y have different dimensions: {} vs "
                         "{}".format(x.shape[1], y.shape[1]))
    pooled = np.concatenate([x, y])
    return pooled, pairwise_distance_matrix(pooled, pooled, metric)


def _run_trials(trials, worker, threads):
    if threads is None or threads <= 1 or len(trials) < 2:
        return np.array([worker(b) for b in trials], dtype=float)
    chunks = np.array_split(np.asarray(trials), min(threads, len(trials)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: [worker(b) for b in c], chunks))
    return np.array([t for part in parts for t in part], dtype=float)


def calibrate(x, y, metric="euclidean", plan=None, alphas=DEFAULT_ALPHAS,
              threads=None, reuse_distances=True, _observed=None):
    """
    Resampling distribution of the t-energy statistic under H0.

    Parameters
    ----------
    x, y : array_like, shape (n1, dim) and (n2, dim)
        The two samples.
    metric : str or callable
        See :mod:`vwenergy.energy`.
    plan : ResamplePlan, optional
        Defaults to 1000 bootstrap trials with the package default seed.
    alphas : sequence of float
        Levels whose critical values are tabulated.
    threads : int, optional
        Worker threads for the trial loop. Results do not depend on it.
    reuse_distances : bool
        Look up resampled distances in the pooled matrix (default) or
        recompute them from the resampled points on every trial.

    Returns
    -------
    CalibrationResult
    """
    pooled, dist = _pooled_distances(x, y, metric)
    n1 = len(np.atleast_1d(x))
    n2 = pooled.shape[0] - n1
    if plan is None:
        plan = ResamplePlan(n1=n1, n2=n2)
    if (plan.n1, plan.n2) != (n1, n2):
        raise InputError("plan sizes ({}, {}) do not match the samples "
                         "({}, {})".format(plan.n1, plan.n2, n1, n2))
    if _observed is None:
        _observed = energy_from_distances(dist[:n1, :n1], dist[n1:, n1:],
                                          dist[:n1, n1:])
    t_observed = _observed.t_energy
    resample = _RESAMPLERS[plan.method]

    if reuse_distances:
        def worker(b):
            i1, i2 = resample(pooled.shape[0], n1, n2,
                              trial_rng(plan.seed, b))
            return _t_from_pooled(dist, np.concatenate([i1, i2]), n1, n2)
    else:
        def worker(b):
            i1, i2 = resample(pooled.shape[0], n1, n2,
                              trial_rng(plan.seed, b))
            return energy_statistic(pooled[i1], pooled[i2], metric).t_energy

    t_star = _run_trials(range(plan.trials), worker, threads)
    sorted_t = np.sort(t_star)
    crit = {float(a): _critical(sorted_t, a)
            for a in sorted(set(alphas), reverse=True)}
    return CalibrationResult(t_star=t_star, plan=plan, t_observed=t_observed,
                             p_value=_p_value(t_star, t_observed),
                             critical_values=crit)


@dataclass(frozen=True)
class TwoSampleResult:
    """Outcome of a two-sample energy test at level ``alpha``."""

    report: EnergyReport
    calibration: CalibrationResult
    alpha: float
    reject: bool
    metric: str = "euclidean"

    @property
    def t_observed(self):
        return self.report.t_energy

    @property
    def p_value(self):
        return self.calibration.p_value

    @property
    def critical_value(self):
        return self.calibration.critical_values[self.alpha]


def two_sample_energy_test(x, y, metric="euclidean", plan=None, alpha=0.05,
                           alphas=DEFAULT_ALPHAS, threads=None):
    """
    Test H0: both samples come from the same distribution.

    H0 is rejected when the observed t-energy statistic is strictly larger
    than the resampled critical value at level ``alpha``.

    Examples
    --------
    >>> rng = np.random.default_rng(0)
    >>> x = rng.normal(size=(30, 2))
    >>> res = two_sample_energy_test(x, x + 3.0, plan=ResamplePlan(30, 30,
    ...                              trials=199))
    >>> res.reject, res.p_value
    (True, 0.005)
    """
    alpha = float(alpha)
    _upper_rank(alpha, 1)
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    report = energy_statistic(x, y, metric)
    cal = calibrate(x, y, metric, plan, alphas=tuple(alphas) + (alpha,),
                    threads=threads, _observed=report)
    reject = report.t_energy > cal.critical_values[alpha]
    name = metric_name(metric)
    return TwoSampleResult(report=report, calibration=cal, alpha=alpha,
                           reject=bool(reject), metric=name)


def shape_energy_test(kads_x, kads_y, metric="vw", plan=None, alpha=0.05,
                      alphas=DEFAULT_ALPHAS, threads=None):
    """
    Two-sample test on planar k-ads.

    With a VW metric each k-ad is reduced to its preshape first; with
    ``"euclidean"`` the raw landmark coordinates are compared as vectors
    of length ``2k``.
    """
    wx = as_complex_landmarks(kads_x)
    wy = as_complex_landmarks(kads_y)
    if wx.ndim != 2 or wy.ndim != 2:
        raise InputError("expected two stacks of k-ads")
    if wx.shape[1] != wy.shape[1]:
        raise InputError("groups have different k: {} vs {}".format(
            wx.shape[1], wy.shape[1]))
    if metric_name(metric) == "euclidean":
        x = np.concatenate([wx.real, wx.imag], axis=1)
        y = np.concatenate([wy.real, wy.imag], axis=1)
    else:
        x, y = preshapes(wx), preshapes(wy)
    return two_sample_energy_test(x, y, metric, plan, alpha, alphas, threads)
