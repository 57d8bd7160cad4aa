"""
Symbolic powers that do not compose
===================================

A monomial ideal J with an embedded maximal ideal component for which the
symbolic square of the symbolic square is not the fourth symbolic power.
"""

# %%
from fatpoints import monomial

J1, J2, J = monomial.counterexample_ideals()
print(len(J.generators), "generators, alpha", monomial.alpha_monomial(J))

# %%
rep = monomial.verify_counterexample()
for c in rep["checks"]:
    print(c["name"], c["passed"])

# %%
J2sq = monomial.power(J, 2)
ass = monomial.ass_primes(J2sq)
print([p.names(J.variables) for p in ass.primes], "complete:", ass.complete)
