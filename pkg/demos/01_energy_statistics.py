# Energy statistics on plain Euclidean samples.
#
# The energy statistic compares two samples through average distances:
# twice the mean cross-sample distance minus the two mean within-sample
# distances. It is zero for identical samples and grows as they separate.
import numpy as np

from vwenergy import energy_statistic, pairwise_distance_matrix, v_statistic

# A hand-sized example: x = {0, 2}, y = {1, 3} on the line.
print(pairwise_distance_matrix([0.0, 2.0], [1.0, 3.0]))
rep = energy_statistic([0.0, 2.0], [1.0, 3.0])
print(rep)

# The within-sample terms are V-statistics with the distance kernel,
# diagonal zeros included.
print(v_statistic([0.0, 2.0]), rep.within_x_mean)

# Shift one Gaussian sample away from another and watch T grow.
rng = np.random.default_rng(0)
x = rng.normal(size=(200, 3))
for shift in (0.0, 0.25, 0.5, 1.0):
    y = rng.normal(size=(200, 3)) + shift
    print("shift {:4.2f}  T = {:7.3f}".format(shift,
                                             energy_statistic(x, y).t_energy))

# Any symmetric metric can be plugged in, here the L1 distance.
l1 = energy_statistic(x, x + 1.0, metric=lambda p, q: np.abs(p - q).sum())
print("L1 energy:", l1.energy)
