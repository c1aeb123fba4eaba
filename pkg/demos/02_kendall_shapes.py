# Planar Kendall shapes and the Veronese-Whitney embedding.
import cmath

import numpy as np

from vwenergy import (circle_template, preshape, square_template,
                      vw_chord_distance, vw_embed, vw_extrinsic_mean)
from vwenergy.datagen import perturb_sample
from vwenergy.shapes import preshapes

circle = circle_template(40).points
square = square_template(40).points

# A preshape removes location and scale: centred, unit norm, complex.
z = preshape(circle)
print("sum:", abs(z.sum()), " norm:", np.linalg.norm(z))

# Rotation survives as a complex phase, which z z* cancels.
m = vw_embed(z)
print("trace:", np.trace(m).real,
      " idempotent:", np.abs(m @ m - m).max(),
      " rotation-invariant:", np.abs(vw_embed(cmath.exp(0.7j) * z) - m).max())

# Chord distance is the Frobenius distance between the projectors.
w = preshape(square)
print("circle vs square chord distance:", vw_chord_distance(z, w))
moved = 5.0 * np.exp(1j * 1.2) * (square[:, 0] + 1j * square[:, 1]) + 3 - 2j
print("after moving/scaling/rotating the square:",
      vw_chord_distance(z, preshape(moved)))

# The VW mean of a noisy sample sits close to its template.
rng = np.random.default_rng(1)
for sigma in (0.2, 0.1, 0.05):
    sample = preshapes(perturb_sample(square_template(40), sigma, 100, rng))
    mean = vw_extrinsic_mean(sample)
    print("sigma {:4.2f}: mean-to-template distance {:.4f}".format(
        sigma, vw_chord_distance(mean, w)))
