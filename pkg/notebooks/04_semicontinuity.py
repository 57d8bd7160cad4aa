"""
Special position lowers alpha
=============================

Random samples land in the generic stratum; a collinear triple does not.
"""

# %%
from fatpoints.asymptotics import semicontinuity_experiment
from fatpoints.points import PointConfig

line = PointConfig.of([[1, 0, 0], [0, 1, 0], [1, 1, 0]], "collinear")
res = semicontinuity_experiment(3, 2, 2, seeds=range(10), extra=[line])
for s in res["samples"]:
    print(f"{s['label']:40s} {s['alpha_m']} {'special' if s['special'] else ''}")
print("max", res["max"])
