"""
Synthetic k-ads on circular and square contours.

Templates are deterministic. The square is the axis-aligned square with
corners (+-1, +-1), walked counterclockwise from the corner (1, 1), so
landmark ``i`` of a circle and of a square template sit at comparable
positions along their contours.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError

__all__ = [
    "ContourTemplate",
    "DEFAULT_SIGMA",
    "circle_template",
    "perturb_sample",
    "square_template",
    "template",
]

DEFAULT_SIGMA = 0.1


@dataclass(frozen=True)
class ContourTemplate:
    kind: str
    points: np.ndarray

    @property
    def k(self):
        return self.points.shape[0]


def circle_template(k):
    """``k`` points on the unit circle at angles ``2 pi i / k``, i = 0..k-1."""
    if int(k) != k or k < 3:
        raise InputError("circle template needs k >= 3")
    theta = 2.0 * np.pi * np.arange(int(k)) / k
    return ContourTemplate("circle", np.column_stack([np.cos(theta),
                                                      np.sin(theta)]))


def square_template(k):
    """
    ``k`` points spaced by arc length ``8 / k`` along the square's boundary.

    Exact corners need ``k`` divisible by 4.
    """
    if int(k) != k or k < 4:
        raise InputError("square template needs k >= 4")
    k = int(k)
    s = 8.0 * np.arange(k) / k
    edge = np.minimum((s // 2).astype(int), 3)
    t = s - 2.0 * edge
    one = np.ones(k)
    # edges: top (right to left), left (down), bottom (right), right (up)
    xs = np.choose(edge, [1.0 - t, -one, -1.0 + t, one])
    ys = np.choose(edge, [one, 1.0 - t, -one, -1.0 + t])
    return ContourTemplate("square", np.column_stack([xs, ys]))


def template(kind, k):
    """Template by name, ``"circle"`` or ``"square"``."""
    builders = {"circle": circle_template, "square": square_template}
    try:
        return builders[kind](k)
    except KeyError:
        raise InputError("unknown template {!r}".format(kind)) from None


def perturb_sample(tmpl, sigma, n, rng):
    """
    ``n`` noisy copies of a template as an ``(n, k, 2)`` array.

    Every landmark gets independent ``N(0, sigma^2 I)`` noise in the raw
    plane. ``tmpl`` is a ContourTemplate or a ``(k, 2)`` array and ``rng``
    a numpy Generator or a seed.
    """
    points = np.asarray(getattr(tmpl, "points", tmpl), dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise InputError("template must be a (k, 2) array")
    if not sigma >= 0:
        raise InputError("sigma must be nonnegative")
    if int(n) != n or n < 1:
        raise InputError("n must be a positive integer")
    rng = np.random.default_rng(rng)
    noise = rng.normal(0.0, 1.0, size=(int(n),) + points.shape)
    return points[None, :, :] + sigma * noise
