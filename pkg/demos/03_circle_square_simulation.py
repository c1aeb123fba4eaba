# Circle versus square: two distributions of 40-landmark shapes.
#
# Each observation is a template plus Gaussian noise at every landmark.
# One hundred observations per group, 1000 bootstrap resamples.
import numpy as np

from vwenergy import ResamplePlan, shape_energy_test
from vwenergy.datagen import circle_template, perturb_sample, square_template

rng = np.random.default_rng(2017)
plan = ResamplePlan(100, 100, trials=1000, seed=2017)
for sigma in (0.05, 0.1, 0.2):
    a = perturb_sample(circle_template(40), sigma, 100, rng)
    b = perturb_sample(square_template(40), sigma, 100, rng)
    for metric in ("vw", "vw_squared"):
        res = shape_energy_test(a, b, metric=metric, plan=plan, alpha=0.01)
        crit = res.calibration.critical_values
        print("sigma={:4.2f} {:10s} T={:6.3f}  c*0.05={:.3f}  c*0.01={:.3f}"
              "  reject={}".format(sigma, metric, res.t_observed, crit[0.05],
                                   crit[0.01], res.reject))

# The same run from the shell:
#   vwenergy simulate --k 40 --n 100 --sigma 0.1 --alpha 0.01
