"""
Dimension by rank
=================

The dimension of the region for n...1-avoiders equals the rank of a stacked
matrix (pattern indicators over the coloured incidence matrix) minus the
number of coloured vertices. A triangular square minor certifies the rank
from below.
"""

# %%
from patregion.analysis import conjecture_probe, feasible_dimension_monotone, matrix_A, triangular_minor
from patregion.permcore import Permutation

# %%
A = matrix_A(3, 3)
print(A.shape, "rank", A.rank())
print(A.to_csv(label=str))

# %%
cert = triangular_minor(3, 3)
print("minor of size", cert.size, "upper triangular:", cert.upper_triangular)
print(cert.to_csv())

# %%
for n, k in [(3, 3), (3, 4), (4, 3)]:
    rep = feasible_dimension_monotone(n, k)
    print(n, k, rep.dimension, rep.checks)

# %%
# For a single pattern outside these families, exact limit points of repeated
# sums give a certified lower bound to compare with the counting upper bound.
for tau, k in [("2413", 4), ("132", 4), ("1342", 4)]:
    rep = conjecture_probe(Permutation(tau), k)
    print(tau, k, "upper", rep.upper_bound, "lower", rep.lower_bound, "conclusive", rep.conclusive)
