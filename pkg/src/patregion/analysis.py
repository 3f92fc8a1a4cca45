"""Dimension computations, the triangular-minor certificate and the dimension probe.

Every dimension reported here is an exact integer obtained from rational
rank computations; a disagreement between independent routes raises
:class:`~patregion.errors.InvariantViolation` instead of being reported.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from .colouring import (
    ColouredPermutation,
    build_coloured_overlap,
    canonical_key,
    coloured_append,
    coloured_begin,
    coloured_end,
    coloured_walk_labels,
    enumerate_inherited,
    ritmo,
)
from .errors import CapExceeded, InvariantViolation, PatternError
from .formats import label_text
from .geometry.cycles import DEFAULT_CYCLE_CAP, simple_cycles
from .geometry.linalg import RatMatrix, RatVector, affine_dimension
from .geometry.polytope import cycle_polytope, cycle_vector, projection_matrix
from .overlap import DirectedMultigraph, Walk, build_overlap_graph, decompose_walk, incidence_matrix, is_strongly_connected, walk_of
from .permcore import (
    Permutation,
    count_avoiders_rsk,
    coordinate_order,
    decreasing,
    density_vector,
    enumerate_avoiders,
    increasing,
    is_skew_indecomposable,
    is_sum_indecomposable,
    repeat_skew_sum,
    repeat_sum,
    window_patterns,
)


@dataclass
class DimensionReport:
    description: str
    k: int
    upper_bound: int
    dimension: int | None
    lower_bound: int
    method: str
    conclusive: bool
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def gap(self) -> int:
        return self.upper_bound - self.lower_bound

    def to_dict(self) -> dict:
        return {
            "class": self.description,
            "k": str(self.k),
            "upper_bound": str(self.upper_bound),
            "dimension": None if self.dimension is None else str(self.dimension),
            "lower_bound": str(self.lower_bound),
            "gap": str(self.gap),
            "method": self.method,
            "conclusive": self.conclusive,
            "checks": {k: str(v) for k, v in self.checks.items()},
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass
class MinorCertificate:
    row_labels: tuple
    col_labels: tuple
    matrix: RatMatrix
    vertex_order: tuple
    ne_order: tuple
    upper_triangular: bool
    diagonal_nonzero: bool

    @property
    def size(self) -> int:
        return len(self.row_labels)

    @property
    def valid(self) -> bool:
        return self.upper_triangular and self.diagonal_nonzero

    def to_csv(self) -> str:
        header = [
            ["# rows", *map(label_text, self.row_labels)],
            ["# columns", *map(label_text, self.col_labels)],
        ]
        return self.matrix.to_csv(label=label_text, header_rows=header)


def matrix_A(n: int, k: int) -> RatMatrix:
    """Pattern indicator rows over incidence rows, columns indexed by inherited colourings of size ``k``."""
    if n < 2 or k < 2:
        raise PatternError("need n >= 2 and k >= 2")
    graph = build_coloured_overlap(n, k)
    perms = enumerate_avoiders(k, [decreasing(n)])
    cols = graph.edge_keys
    ker = tuple(tuple(int(e.label.perm == p) for e in graph.edges) for p in perms)
    inc = incidence_matrix(graph)
    return RatMatrix(tuple(perms) + tuple(inc.row_labels), cols, ker + inc.rows)


def rank_exact(M: RatMatrix) -> int:
    return M.rank()


def completion(vertex: ColouredPermutation, graph: DirectedMultigraph) -> ColouredPermutation:
    """Extend ``vertex`` by a new maximum of colour 1; this site is always active."""
    e = coloured_append(vertex, vertex.size + 1, 1)
    if e not in graph.by_label:
        raise InvariantViolation(f"completion of {vertex} is not an edge")
    return e


def _vertex_order(graph: DirectedMultigraph, root: ColouredPermutation) -> tuple:
    """Topological order of non-root vertices: ``u`` precedes ``v`` when the completion of ``v`` ends at ``u``.

    Ties are broken by the canonical key. Raises if the completion edges
    form a cycle away from the root.
    """
    nodes = [v for v in graph.vertices if v != root]
    succ: dict = {v: [] for v in nodes}
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        u = coloured_end(completion(v, graph), v.size)
        if u != root:
            succ[u].append(v)
            indeg[v] += 1
    heap = [(canonical_key(v), v) for v in nodes if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, (canonical_key(w), w))
    if len(order) != len(nodes):
        raise InvariantViolation("completion edges contain a cycle other than the increasing loop")
    return tuple(order)


def triangular_minor(n: int, k: int) -> MinorCertificate:
    """Square minor of :func:`matrix_A` that is upper triangular with unit diagonal."""
    graph = build_coloured_overlap(n, k)
    A = matrix_A(n, k)
    gamma = increasing(k)
    s_gamma = ritmo(gamma)
    root = coloured_begin(s_gamma, k - 1)
    if completion(root, graph) != s_gamma:
        raise InvariantViolation("completion of the root is not the increasing loop")
    order = _vertex_order(graph, root)
    ne = tuple(p for p in enumerate_avoiders(k, [decreasing(n)]) if p[-1] != k)
    reps = {}
    for e in graph.edges:
        p = e.label.perm
        if p[-1] != k and (p not in reps or e.label.colours < reps[p].colours):
            reps[p] = e.label
    rows = (gamma,) + order + ne
    cols = (s_gamma,) + tuple(completion(v, graph) for v in order) + tuple(reps[p] for p in ne)
    minor = A.submatrix(rows, cols)
    cert = MinorCertificate(
        rows, cols, minor, order, ne,
        minor.is_upper_triangular(),
        all(d != 0 for d in minor.diagonal()),
    )
    if not cert.valid:
        raise InvariantViolation("minor is not upper triangular with non-zero diagonal")
    return cert


def closed_form_monotone(n: int, k: int) -> int:
    return count_avoiders_rsk(n, k) - count_avoiders_rsk(n, k - 1)


def projected_vertices(n: int, k: int, cap: int = DEFAULT_CYCLE_CAP) -> list:
    graph = build_coloured_overlap(n, k)
    proj = projection_matrix(graph, enumerate_avoiders(k, [decreasing(n)]))
    return [proj.apply(cycle_vector(c)) for c in simple_cycles(graph, cap)]


def feasible_dimension_monotone(n: int, k: int, cap: int = DEFAULT_CYCLE_CAP) -> DimensionReport:
    """Dimension of the region for ``n...1``-avoiders, checked three ways."""
    closed = closed_form_monotone(n, k)
    enumerated = len(enumerate_avoiders(k, [decreasing(n)])) - len(enumerate_avoiders(k - 1, [decreasing(n)]))
    A = matrix_A(n, k)
    rk = A.rank()
    n_vertices = len(enumerate_inherited(n, k - 1))
    via_rank = rk - n_vertices
    geometric = affine_dimension(projected_vertices(n, k, cap))
    minor = triangular_minor(n, k)
    checks = {
        "closed_form": closed,
        "enumerated_difference": enumerated,
        "rank_A": rk,
        "inherited_vertices": n_vertices,
        "rank_minus_vertices": via_rank,
        "projected_affine_dimension": geometric,
        "minor_size": minor.size,
    }
    if not (closed == enumerated == via_rank == geometric):
        raise InvariantViolation(f"dimension routes disagree: {checks}")
    if minor.size > rk or minor.matrix.rank() != minor.size:
        raise InvariantViolation(f"minor certificate inconsistent with rank: {checks}")
    return DimensionReport(f"Av({decreasing(n).compact() if n <= 9 else decreasing(n)})", k, closed, closed, closed, "rank-of-A", True, checks)


def feasible_dimension_cycle(k: int, patterns: Sequence = (), cap: int = DEFAULT_CYCLE_CAP) -> DimensionReport:
    """Affine dimension of the cycle polytope of the (restricted) overlap graph."""
    graph = build_overlap_graph(k, patterns)
    dim = cycle_polytope(graph, cap).dimension()
    pats = list(patterns)
    upper = len(enumerate_avoiders(k, pats)) - len(enumerate_avoiders(k - 1, pats))
    checks = {"edges": len(graph.edges), "vertices": len(graph.vertices), "cycle_polytope_dimension": dim}
    if is_strongly_connected(graph):
        checks["edges_minus_vertices"] = len(graph.edges) - len(graph.vertices)
        if dim != checks["edges_minus_vertices"]:
            raise InvariantViolation(f"cycle polytope dimension differs from |E|-|V|: {checks}")
    desc = "Av(" + ",".join(p.compact() for p in sorted(Permutation(p) for p in pats)) + ")" if pats else "all permutations"
    return DimensionReport(desc, k, upper, dim, dim, "cycle-polytope", True, checks)


def sum_limit_vector(sigma: Sequence[int], k: int, skew: bool = False, order: Sequence | None = None) -> RatVector:
    """Limit of the density vector of ``sigma + sigma + ...`` (or the skew analogue) as copies grow."""
    m = len(sigma)
    copies = 1 + ceil((k - 1) / m)
    big = repeat_skew_sum(copies, sigma) if skew else repeat_sum(copies, sigma)
    order = coordinate_order(k) if order is None else tuple(order)
    counts: dict = {}
    for p in window_patterns(big, k)[:m]:
        counts[p] = counts.get(p, 0) + 1
    return RatVector(order, tuple(Fraction(counts.get(p, 0), m) for p in order))


def conjecture_probe(tau: Sequence[int], k: int, max_size: int = 9, max_perms: int = 200_000) -> DimensionReport:
    """Upper bound versus a certified lower bound on the region's dimension for ``Av(tau)``.

    Lower-bound points are exact limits of repeated (skew) sums of class
    members, which stay in the class because ``tau`` is (skew-)indecomposable.
    """
    tau = Permutation(tau)
    if is_sum_indecomposable(tau):
        skew = False
    elif is_skew_indecomposable(tau):
        skew = True
    else:
        raise PatternError(f"Av({tau}) is closed under neither direct nor skew sums")
    upper = len(enumerate_avoiders(k, [tau])) - len(enumerate_avoiders(k - 1, [tau]))
    points: list = []
    basis_rank = -1
    examined = 0
    size_reached = 0
    conclusive = False
    for m in range(1, max_size + 1):
        try:
            members = enumerate_avoiders(m, [tau], cap=max_perms)
        except CapExceeded:
            break
        size_reached = m
        for sigma in members:
            examined += 1
            pt = sum_limit_vector(sigma, k, skew)
            candidate = points + [pt]
            r = affine_dimension(candidate)
            if r > basis_rank:
                points, basis_rank = candidate, r
                if basis_rank == upper:
                    conclusive = True
                    break
            if examined >= max_perms:
                break
        if conclusive or examined >= max_perms:
            break
    lower = max(basis_rank, 0)
    report = DimensionReport(
        f"Av({tau.compact()})", k, upper, lower if conclusive else None, lower, "empirical-lower-bound", conclusive,
        {"permutations_examined": examined, "largest_size": size_reached, "sum": "skew" if skew else "direct"},
    )
    if not conclusive:
        report.notes.append("budget exhausted before the lower bound met the upper bound; inconclusive")
    return report


@dataclass(frozen=True)
class DistanceCertificate:
    density: RatVector
    witness: RatVector
    squared_distance: Fraction
    cycles_used: int


def _labels_to_point(labels: Sequence, targets: tuple) -> RatVector:
    counts: dict = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    total = sum(counts.values())
    return RatVector.from_mapping(targets, {p: Fraction(c, total) for p, c in counts.items()})


def distance_certificate(sigma: Sequence[int], k: int, n: int | None = None, patterns: Sequence = ()) -> DistanceCertificate:
    """An exact point of the region and its squared 2-distance to the density vector of ``sigma``.

    The point is the cycle part of the walk of ``sigma``: the normalized
    (colour-forgetting) edge counts of the simple cycles peeled off by
    :func:`decompose_walk`. It is a convex combination of cycle vectors, so
    it lies in the region by construction. When the walk holds no cycle, the
    nearest polytope vertex is used instead.
    """
    targets = coordinate_order(k)
    v = density_vector(sigma, k, targets)
    if n is not None:
        graph = build_coloured_overlap(n, k)
        walk = Walk.from_labels(graph, coloured_walk_labels(sigma, k))
        forget = lambda e: e.label.perm  # noqa: E731
    else:
        graph = build_overlap_graph(k, patterns)
        walk = walk_of(sigma, k, graph)
        forget = lambda e: e.label  # noqa: E731
    cycles, _ = decompose_walk(walk)
    if cycles:
        witness = _labels_to_point([forget(e) for c in cycles for e in c.edges], targets)
    else:
        candidates = [_labels_to_point([forget(e) for e in c.edges], targets) for c in simple_cycles(graph)]
        witness = min(candidates, key=lambda x: (v - x).norm2_squared())
    return DistanceCertificate(v, witness, (v - witness).norm2_squared(), len(cycles))
