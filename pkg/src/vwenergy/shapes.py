"""
Planar Kendall shapes and the Veronese-Whitney embedding.

A k-ad is an ordered set of ``k`` planar landmarks, given either as a real
``(k, 2)`` array or as a complex ``(k,)`` vector. Its preshape is the
centred, unit-norm complex vector; the shape is the preshape up to a
complex phase. The VW map sends a preshape ``z`` to the rank-one
Hermitian projector ``z z*``, and distances between shapes are Frobenius
(chord) distances between projectors.

Preshapes keep all ``k`` coordinates (constrained to sum to zero) instead
of reducing to ``k - 1`` Helmert coordinates; chord distances are the same
either way.
"""

import numpy as np

from .exceptions import DegenerateConfigurationError, InputError, \
    MeanNotUniqueError

__all__ = [
    "as_complex_landmarks",
    "canonicalize_phase",
    "preshape",
    "preshapes",
    "vw_chord_distance",
    "vw_chord_distances",
    "vw_embed",
    "vw_extrinsic_mean",
]

EIGENGAP_TOL = 1e-8
_NORM_TOL = 1e-8
# below this value of 1 - |<z, w>|^2 the Gram shortcut loses digits and
# the pair is recomputed from the projection residual
_REFINE_BELOW = 1e-6


def as_complex_landmarks(kads):
    """
    Convert k-ads to complex landmark vectors.

    Accepts ``(k, 2)`` / ``(n, k, 2)`` real arrays or ``(k,)`` / ``(n, k)``
    complex arrays and returns the complex form with the last axis of
    length ``k``.
    """
    arr = np.asarray(kads)
    if np.iscomplexobj(arr):
        w = arr.astype(complex, copy=False)
    else:
        arr = arr.astype(float, copy=False)
        if arr.ndim < 2 or arr.shape[-1] != 2:
            raise InputError(
                "real k-ads must have a trailing axis of length 2, got "
                "shape {}".format(arr.shape))
        w = arr[..., 0] + 1j * arr[..., 1]
    if w.ndim < 1 or w.shape[-1] < 3:
        raise InputError("a k-ad needs k >= 3 landmarks")
    if not np.all(np.isfinite(w)):
        raise InputError("landmark coordinates must be finite")
    return w


def preshapes(kads):
    """
    Preshapes of one k-ad or a stack of k-ads.

    Each row ``w`` maps to ``(w - mean(w)) / ||w - mean(w)||``.

    Raises
    ------
    DegenerateConfigurationError
        If all landmarks of some k-ad coincide.
    """
    w = as_complex_landmarks(kads)
    centred = w - w.mean(axis=-1, keepdims=True)
    norms = np.linalg.norm(centred, axis=-1, keepdims=True)
    scale = np.abs(w).max(axis=-1, keepdims=True)
    bad = norms <= 64 * np.finfo(float).eps * scale * w.shape[-1]
    bad |= norms == 0
    if bad.any():
        raise DegenerateConfigurationError(
            "all landmarks coincide; the configuration has no shape")
    return centred / norms


def preshape(kad):
    """Preshape of a single k-ad, a complex vector of length ``k``."""
    z = preshapes(kad)
    if z.ndim != 1:
        raise InputError("expected a single k-ad, got shape {}".format(
            np.shape(kad)))
    return z


def vw_embed(z):
    """VW image ``z z*`` of a preshape, a ``(k, k)`` Hermitian matrix."""
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1:
        raise InputError("vw_embed takes a single preshape")
    return np.outer(z, z.conj())


def _unit_rows(a, name):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[None, :]
    norms = np.linalg.norm(a, axis=1)
    if np.any(np.abs(norms - 1.0) > _NORM_TOL):
        raise InputError("{} rows must be unit-norm preshapes".format(name))
    return a / norms[:, None]


def vw_chord_distances(a, b, squared=False):
    """
    Chord distances between two stacks of preshapes.

    Uses ``||z z* - w w*||_F^2 = 2 (1 - |<z, w>|^2)`` for unit vectors,
    an O(k) evaluation per pair. Nearly identical shapes are recomputed
    from the residual of projecting ``w`` on ``z`` so that distances near
    zero keep full precision.

    Parameters
    ----------
    a, b : array_like, shape (na, k) and (nb, k)
        Unit-norm complex vectors.
    squared : bool
        Return ``Tr((zz* - ww*)^2)`` instead of its square root.

    Returns
    -------
    (na, nb) ndarray with entries in ``[0, sqrt(2)]`` (``[0, 2]`` squared).
    """
    a = _unit_rows(a, "a")
    b = _unit_rows(b, "b")
    if a.shape[1] != b.shape[1]:
        raise InputError("preshapes have different k: {} vs {}".format(
            a.shape[1], b.shape[1]))
    g = a.conj() @ b.T
    gap = 1.0 - (g.real ** 2 + g.imag ** 2)
    close = np.argwhere(gap < _REFINE_BELOW)
    for i, j in close:
        r = b[j] - g[i, j] * a[i]
        gap[i, j] = np.vdot(r, r).real
    np.clip(gap, 0.0, 1.0, out=gap)
    sq = 2.0 * gap
    return sq if squared else np.sqrt(sq)


def vw_chord_distance(p, q, squared=False):
    """
    Chord distance between two preshapes, ``sqrt(2 (1 - |<p, q>|^2))``.

    Zero whenever ``q`` is a phase rotation of ``p``.
    """
    p = np.asarray(p)
    q = np.asarray(q)
    if p.ndim != 1 or q.ndim != 1:
        raise InputError("vw_chord_distance takes two single preshapes")
    return float(vw_chord_distances(p, q, squared=squared)[0, 0])


def canonicalize_phase(z):
    """Rotate ``z`` so its first entry of largest modulus is real positive."""
    z = np.asarray(z, dtype=complex)
    idx = int(np.argmax(np.abs(z)))
    lead = z[idx]
    if lead == 0:
        return z.copy()
    out = z * (np.conj(lead) / abs(lead))
    out[idx] = abs(out[idx])
    return out


def vw_extrinsic_mean(sample, return_eigenvalues=False):
    """
    VW extrinsic mean shape of a sample of preshapes.

    The mean is the unit leading eigenvector of the averaged projector
    ``(1/n) sum z_i z_i*``, re-centred and phase-canonicalized.

    Parameters
    ----------
    sample : array_like, shape (n, k)
        Complex preshapes.
    return_eigenvalues : bool
        Also return the eigenvalues of the averaged matrix, descending.

    Raises
    ------
    MeanNotUniqueError
        When the two largest eigenvalues are closer than ``1e-8``.
    """
    z = np.asarray(sample, dtype=complex)
    if z.ndim == 1:
        z = z[None, :]
    if z.ndim != 2 or z.shape[0] < 1:
        raise InputError("sample must be a nonempty (n, k) array")
    z = _unit_rows(z, "sample")
    n = z.shape[0]
    mean_matrix = (z.T @ z.conj()) / n
    # eigh wants exact Hermitian symmetry
    mean_matrix = 0.5 * (mean_matrix + mean_matrix.conj().T)
    evals, evecs = np.linalg.eigh(mean_matrix)
    if evals[-1] - evals[-2] < EIGENGAP_TOL:
        raise MeanNotUniqueError(
            "leading eigenvalue is not simple (gap {:.3g}); the VW mean "
            "is not unique".format(evals[-1] - evals[-2]))
    v = evecs[:, -1]
    v = v - v.mean()
    v = v / np.linalg.norm(v)
    v = canonicalize_phase(v)
    if return_eigenvalues:
        return v, evals[::-1].copy()
    return v
