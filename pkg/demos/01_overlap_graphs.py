"""
Overlap graphs and cycle polytopes
==================================

Consecutive patterns of size k in a long permutation form a walk in the
overlap graph: one edge per pattern, from its first k-1 entries to its last
k-1 entries. Limit densities of long permutations fill out the cycle
polytope of that graph.
"""

# %%
from fractions import Fraction

from patregion.geometry.cycles import simple_cycles
from patregion.geometry.polytope import cycle_polytope
from patregion.overlap import build_overlap_graph, decompose_walk, realize_walk_312, walk_of
from patregion.permcore import Permutation, density_vector

# %%
# The unrestricted graph for k = 3 has two vertices (12 and 21) and six edges.
g3 = build_overlap_graph(3)
print(g3, [str(e.label) for e in g3.edges])
for c in simple_cycles(g3):
    print("cycle", [e.label.compact() for e in c.edges])

# %%
# Its cycle polytope has dimension |E| - |V| = 4.
print("dimension", cycle_polytope(g3).dimension())

# %%
# Restricting to 312-avoiders drops one edge. The region for k = 3, 4, 5.
p312 = Permutation("312")
for k in (3, 4, 5):
    g = build_overlap_graph(k, [p312])
    print(k, len(g.vertices), len(g.edges), cycle_polytope(g).dimension())

# %%
# Any walk in the restricted graph is realized by a 312-avoider, one appended
# value at a time.
g = build_overlap_graph(3, [p312])
labels = [Permutation(x) for x in ("132", "213", "123", "231", "321", "213")]
sigma = realize_walk_312(labels)
print(sigma, [p.compact() for p in walk_of(sigma, 3, g).labels])

# %%
# A long walk splits into simple cycles plus a short path; the cycle part is
# a point of the polytope close to the density vector.
sigma = realize_walk_312(labels * 20)
cycles, path = decompose_walk(walk_of(sigma, 3, g))
print(len(cycles), "cycles, residual path of length", len(path))
v = density_vector(sigma, 3)
print({p.compact(): str(x) for p, x in v.items() if x})
print("sum", v.total(), "=", Fraction(len(sigma) - 2, len(sigma)))
