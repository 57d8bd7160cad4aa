"""
Initial degrees of symbolic powers
==================================

alpha_m is the least degree of a form vanishing to order m at every point.
"""

# %%
from fatpoints.interpolation import alpha_symbolic, alpha_table, conditions_shape
from fatpoints.points import PointConfig, sample_config

coord = PointConfig.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], "coordinate points")
table = alpha_table(coord, 4)
print(table.values())                # {1: 2, 2: 3, 3: 5, 4: 6}
print(table.entries[3].certificate)

# %%
# size of the conditions matrix at m=3, t=5
print(conditions_shape(coord.n, coord.N, 3, 5))

# %%
# random points with a fixed seed are reproducible
five = sample_config(5, 2, seed=5)
print([str(p) for p in five.points])
print([alpha_symbolic(five, m).alpha for m in (1, 2, 3)])
