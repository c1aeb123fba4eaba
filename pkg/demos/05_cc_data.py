# Corpus callosum midsections: normal controls versus ADHD.
#
# Expects two landmark files (50 landmarks per row) in a directory given by
# VWENERGY_CC_DATA: normal.csv and adhd.csv. The raw data is published by
# the ADHD-200 consortium; convert it to the landmark file format first
# (header x1,y1,...,x50,y50, one subject per row).
import os
import sys
from pathlib import Path

from vwenergy import (ResamplePlan, load_grouped_dataset, shape_energy_test,
                      vw_chord_distance, vw_extrinsic_mean)
from vwenergy.shapes import preshapes

root = os.environ.get("VWENERGY_CC_DATA")
if not root:
    sys.exit("set VWENERGY_CC_DATA to the directory holding the CC files")

data = load_grouped_dataset(Path(root) / "normal.csv",
                            Path(root) / "adhd.csv")
print("groups:", dict(zip(data.names, data.sizes)), "k =", data.k)

a, b = data.group_a.observations, data.group_b.observations
plan = ResamplePlan(len(a), len(b), trials=500)
for metric in ("vw", "vw_squared"):
    res = shape_energy_test(a, b, metric=metric, plan=plan, alpha=0.05)
    crit = res.calibration.critical_values
    print("{:10s} T={:.4f} c*0.05={:.4f} c*0.1={:.4f} reject={}".format(
        metric, res.t_observed, crit[0.05], crit[0.1], res.reject))

mean_a = vw_extrinsic_mean(preshapes(a))
mean_b = vw_extrinsic_mean(preshapes(b))
print("chord distance between the VW means:",
      vw_chord_distance(mean_a, mean_b))
