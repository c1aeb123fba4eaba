"""
Distance-based energy statistics for two samples.

Samples are arrays of shape ``(n, dim)``; a 1-D array is read as ``n``
scalar points. Points may be real vectors or complex vectors (preshapes),
as long as the chosen metric understands them.

A metric is either the name of a built-in vectorized kernel

- ``"euclidean"`` : ``||p - q||`` for real or complex vectors
- ``"vw"`` : Veronese-Whitney chord distance between preshapes
- ``"vw_squared"`` : squared chord distance

or a Python callable ``metric(p, q) -> float`` evaluated on every pair of
rows. All double sums keep the zero diagonal terms and divide by ``n**2``
(V-statistic form). Sums are taken over the materialized distance matrix
with ``ndarray.sum``, whose accumulation order depends only on the matrix
shape, so results are reproducible run to run.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError
from .shapes import vw_chord_distances

__all__ = [
    "EnergyReport",
    "METRICS",
    "as_samples",
    "energy_from_distances",
    "energy_statistic",
    "euclidean_distances",
    "get_metric",
    "metric_name",
    "pairwise_distance_matrix",
    "t_energy",
    "v_statistic",
]


def euclidean_distances(a, b):
    """Matrix of ``||a_i - b_j||``, computed from explicit differences."""
    out = np.empty((a.shape[0], b.shape[0]))
    # row blocks keep the broadcast temporary near 2**22 entries
    step = max(1, (1 << 22) // max(1, b.shape[0] * a.shape[1]))
    for start in range(0, a.shape[0], step):
        diff = a[start:start + step, None, :] - b[None, :, :]
        out[start:start + step] = np.sqrt(np.sum(np.abs(diff) ** 2, axis=-1))
    return out


def _vw_squared(a, b):
    return vw_chord_distances(a, b, squared=True)


METRICS = {
    "euclidean": euclidean_distances,
    "vw": vw_chord_distances,
    "vw_squared": _vw_squared,
}

_ALIASES = {
    "vw_chord": "vw",
    "vw-chord": "vw",
    "vw_chord_squared": "vw_squared",
    "vw-squared": "vw_squared",
    "vw-chord-squared": "vw_squared",
}


def get_metric(metric):
    """Resolve a metric name to its matrix kernel; callables pass through."""
    if callable(metric):
        return metric
    name = _ALIASES.get(metric, metric)
    try:
        return METRICS[name]
    except (KeyError, TypeError):
        raise InputError(
            "unknown metric {!r}; expected one of {}".format(
                metric, sorted(METRICS))) from None


def metric_name(metric):
    """Canonical name of a built-in metric, or the callable's name."""
    if callable(metric):
        return getattr(metric, "__name__", "custom")
    get_metric(metric)
    return _ALIASES.get(metric, metric)


def as_samples(x, name="sample"):
    """Coerce ``x`` to a finite 2-D array of points (one per row)."""
    arr = np.asarray(x)
    if arr.dtype == object or not (np.issubdtype(arr.dtype, np.number)):
        raise InputError("{} must be numeric".format(name))
    if not np.iscomplexobj(arr):
        arr = arr.astype(float, copy=False)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise InputError(
            "{} must be 1-D or 2-D, got shape {}".format(name, arr.shape))
    if arr.shape[0] < 1:
        raise InputError("{} is empty".format(name))
    if not np.all(np.isfinite(arr)):
        raise InputError("{} has non-finite coordinates".format(name))
    return arr


def _check_distances(d):
    if np.isnan(d).any():
        raise InputError("metric returned NaN")
    if not np.all(np.isfinite(d)):
        raise InputError("metric returned a non-finite distance")
    if (d < 0).any():
        raise InputError("metric returned a negative distance")
    return d


def pairwise_distance_matrix(a, b, metric="euclidean"):
    """
    Distances between every point of ``a`` and every point of ``b``.

    Parameters
    ----------
    a, b : array_like, shape (na, dim) and (nb, dim)
        Point sets of one representation and dimension.
    metric : str or callable
        Built-in metric name or a pointwise callable ``metric(p, q)``.

    Returns
    -------
    (na, nb) ndarray
        Entry ``(i, j)`` is ``metric(a[i], b[j])``.

    Raises
    ------
    InputError
        Dimension mismatch, empty input, or a NaN/negative distance.

    Examples
    --------
    >>> pairwise_distance_matrix([0.0, 2.0], [1.0, 3.0])
    array([[1., 3.],
           [1., 1.]])
    """
    a = as_samples(a, "a")
    b = as_samples(b, "b")
    if a.shape[1] != b.shape[1]:
        raise InputError("dimension mismatch: {} vs {}".format(
            a.shape[1], b.shape[1]))
    kernel = get_metric(metric)
    if isinstance(metric, str):
        d = np.asarray(kernel(a, b), dtype=float)
    else:
        d = np.empty((a.shape[0], b.shape[0]))
        for i, p in enumerate(a):
            for j, q in enumerate(b):
                d[i, j] = kernel(p, q)
    return _check_distances(d)


@dataclass(frozen=True)
class EnergyReport:
    """
    Energy statistic split into its three mean-distance terms.

    ``energy = 2 * cross_mean - within_x_mean - within_y_mean`` and
    ``t_energy = n1 * n2 / (n1 + n2) * energy``.
    """

    cross_mean: float
    within_x_mean: float
    within_y_mean: float
    energy: float
    t_energy: float
    n1: int
    n2: int

    @classmethod
    def from_terms(cls, cross_mean, within_x_mean, within_y_mean, n1, n2):
        energy = 2.0 * cross_mean - within_x_mean - within_y_mean
        return cls(float(cross_mean), float(within_x_mean),
                   float(within_y_mean), float(energy),
                   float(n1 * n2 / (n1 + n2) * energy), int(n1), int(n2))


def energy_from_distances(dxx, dyy, dxy):
    """EnergyReport from the three precomputed distance blocks."""
    dxx, dyy, dxy = (np.asarray(m, dtype=float) for m in (dxx, dyy, dxy))
    n1, n2 = dxy.shape
    if n1 < 1 or n2 < 1:
        raise InputError("empty sample")
    if dxx.shape != (n1, n1) or dyy.shape != (n2, n2):
        raise InputError("distance blocks have inconsistent shapes")
    for m in (dxx, dyy, dxy):
        _check_distances(m)
    return EnergyReport.from_terms(
        dxy.sum() / (n1 * n2), dxx.sum() / (n1 * n1), dyy.sum() / (n2 * n2),
        n1, n2)


def energy_statistic(x, y, metric="euclidean"):
    """
    Two-sample energy statistic with an arbitrary metric.

    .. math::

        E = \\frac{2}{n_1 n_2}\\sum_{i,m} d(x_i, y_m)
            - \\frac{1}{n_1^2}\\sum_{i,h} d(x_i, x_h)
            - \\frac{1}{n_2^2}\\sum_{l,m} d(y_l, y_m)

    With a Veronese-Whitney metric and preshapes as points this is the
    extrinsic energy statistic on Kendall shape space.

    Examples
    --------
    >>> energy_statistic([0.0, 2.0], [1.0, 3.0]).energy
    1.0
    """
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    return energy_from_distances(pairwise_distance_matrix(x, x, metric),
                                 pairwise_distance_matrix(y, y, metric),
                                 pairwise_distance_matrix(x, y, metric))


def t_energy(report):
    """Scaled statistic ``n1 n2 / (n1 + n2) * energy``; large values reject."""
    n1, n2 = report.n1, report.n2
    if n1 < 1 or n2 < 1:
        raise InputError("sample sizes must be positive")
    return n1 * n2 / (n1 + n2) * report.energy


def v_statistic(x, h="euclidean"):
    """
    V-statistic ``(1/n^2) sum_{i,j} h(x_i, x_j)``, diagonal included.

    ``h`` is a symmetric pointwise kernel or a built-in metric name.
    """
    x = as_samples(x, "x")
    n = x.shape[0]
    if isinstance(h, str):
        return float(pairwise_distance_matrix(x, x, h).sum() / (n * n))
    total = np.empty((n, n))
    for i, p in enumerate(x):
        for j, q in enumerate(x):
            total[i, j] = h(p, q)
    if np.isnan(total).any():
        raise InputError("kernel returned NaN")
    return float(total.sum() / (n * n))
