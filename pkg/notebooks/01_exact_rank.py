"""
Exact rank three ways
=====================

Fraction-free elimination is the reference; modular ranks are cheap and
can only drop, never rise.
"""

# %%
from fractions import Fraction

from fatpoints import linalg
from fatpoints.linalg import ExactMatrix

M = ExactMatrix.from_rows([[1, 2, 3], [Fraction(1, 2), 1, Fraction(3, 2)], [0, 1, 5]])
for strategy in linalg.STRATEGIES:
    r = linalg.rank(M, strategy)
    print(f"{strategy:22s} rank={r.rank} via {r.strategy} primes={r.primes_used}")

# %%
# the kernel is returned with the first nonzero entry scaled to 1
print(linalg.kernel_basis(M))
