"""
Colourings and the region of 321-avoiders
=========================================

For a class avoiding a decreasing pattern, the plain overlap graph is too
coarse: some of its cycles cannot be traced by class members. Colouring each
entry by its layer of left-to-right maxima fixes this, and the feasible region
becomes the colour-forgetting image of a coloured cycle polytope.
"""

# %%
from fractions import Fraction

from patregion.colouring import (
    build_coloured_overlap,
    coloured_walk_labels,
    enumerate_inherited,
    parse_named,
    realize_walk_monotone,
    ritmo,
)
from patregion.geometry.linalg import RatVector
from patregion.geometry.polytope import maximize, membership, membership_projected
from patregion.overlap import build_overlap_graph
from patregion.permcore import Permutation, consecutive_occurrences, coordinate_order, decreasing, enumerate_avoiders

# %%
sigma = Permutation("1243756")
print(ritmo(sigma).named())
print([cp.named() for cp in coloured_walk_labels(sigma, 3)])

# %%
# Colourings of size-3 patterns that can appear at the end of a 321-avoider.
print([cp.named() for cp in enumerate_inherited(3, 3)])

# %%
# The point half 231, half 312 lies in the plain cycle polytope but not in the
# projected coloured one.
point = RatVector(coordinate_order(3), (0, Fraction(1, 2), Fraction(1, 2), 0, 0, 0))
targets = enumerate_avoiders(3, [decreasing(3)])
print(membership(build_overlap_graph(3, [decreasing(3)]), point))
print(membership_projected(build_coloured_overlap(3, 3), targets, point))

# %%
# Largest limiting density of 312 among 321-avoiders, as an exact LP.
value, _ = maximize(build_coloured_overlap(3, 3), RatVector.from_mapping(targets, {Permutation("312"): 1}), targets)
print("max 312 density", value)

# %%
# A long 321-avoider that repeats the optimal coloured 3-cycle gets close.
cycle = [parse_named(x) for x in ("blue1red3blue2", "red3blue12", "blue12red3")]
for reps in (5, 50, 200):
    s, prefix = realize_walk_monotone(cycle * reps, 3)
    print(len(s), len(prefix), float(Fraction(consecutive_occurrences((3, 1, 2), s), len(s))))
