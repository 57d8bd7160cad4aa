"""
Bracketing the Waldschmidt constant
===================================

Each alpha_m/m bounds the constant from above; Skoda and Esnault-Viehweg
bound it from below.  Slack is reported against the Chudnovsky target.
"""

# %%
from fatpoints import asymptotics
from fatpoints.points import PointConfig, star_configuration

coord = PointConfig.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], "coordinate points")
rep = asymptotics.waldschmidt_report(coord, 4)
print("bracket", [str(x) for x in rep.bracket])
for v in rep.verdicts:
    print(v.m, v.alpha_m, v.slack)

# %%
d = asymptotics.delta_t0(coord, 4)
print("delta", d.delta, "t0", d.t0)

# %%
star = star_configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
print(len(star), "points;", asymptotics.hh_points_check(star, 1, 6)["holds"])
print(asymptotics.seshadri_lower_bound(star).as_dict())
