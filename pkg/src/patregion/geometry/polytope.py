"""Cycle polytopes, their equality descriptions, projections, and exact LP queries."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import InvariantViolation
from ..overlap import DirectedMultigraph, Walk, incidence_matrix
from . import lp
from .cycles import DEFAULT_CYCLE_CAP, simple_cycles
from .linalg import RatMatrix, RatVector, affine_dimension, format_rational


def cycle_vector(cycle: Walk, labels: Sequence | None = None) -> RatVector:
    """Edge frequencies of ``cycle`` divided by its length, over ``labels`` (default: all edges of its graph)."""
    graph = cycle.graph
    labels = graph.edge_keys if labels is None else tuple(labels)
    counts: dict = {}
    for e in cycle.edges:
        key = graph.edge_key(e)
        counts[key] = counts.get(key, 0) + 1
    size = len(cycle)
    return RatVector.from_mapping(labels, {k: Fraction(v, size) for k, v in counts.items()})


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite list of labelled points."""

    labels: tuple
    vertices: tuple

    def __post_init__(self):
        seen = []
        index = set()
        for v in self.vertices:
            if v.labels != self.labels:
                raise ValueError("vertex labels differ from polytope labels")
            if v.values not in index:
                index.add(v.values)
                seen.append(v)
        object.__setattr__(self, "vertices", tuple(seen))

    def dimension(self) -> int:
        return affine_dimension(self.vertices)

    def map(self, matrix: RatMatrix) -> "VPolytope":
        return VPolytope(matrix.row_labels, tuple(matrix.apply(v) for v in self.vertices))

    def contains(self, point: RatVector) -> bool:
        """Convex-combination test: weights >= 0 summing to 1 that reproduce ``point``."""
        point = point.relabel(self.labels)
        A = [[v.values[i] for v in self.vertices] for i in range(len(self.labels))]
        A.append([1] * len(self.vertices))
        return lp.solve(A, list(point.values) + [1]).feasible

    def maximize(self, objective: RatVector) -> tuple[Fraction, RatVector]:
        objective = objective.relabel(self.labels)
        best = max(self.vertices, key=objective.dot)
        return objective.dot(best), best

    def filter_vertices(self) -> "VPolytope":
        """Drop points that are convex combinations of the remaining ones."""
        kept = list(self.vertices)
        i = 0
        while i < len(kept):
            others = VPolytope(self.labels, tuple(kept[:i] + kept[i + 1:]))
            if others.vertices and others.contains(kept[i]):
                del kept[i]
            else:
                i += 1
        return VPolytope(self.labels, tuple(kept))

    def to_json(self, label: Callable = str) -> str:
        return json.dumps(
            {
                "labels": [label(x) for x in self.labels],
                "vertices": [v.to_strings() for v in self.vertices],
                "dimension": self.dimension() if self.vertices else None,
            },
            indent=2,
        ) + "\n"


@dataclass(frozen=True)
class HPolytope:
    """``{x >= 0 : equalities x = rhs}`` over labelled coordinates."""

    equalities: RatMatrix
    rhs: RatVector

    @property
    def labels(self) -> tuple:
        return self.equalities.col_labels

    def satisfied_by(self, x: RatVector) -> bool:
        x = x.relabel(self.labels)
        return all(v >= 0 for v in x.values) and self.equalities.apply(x).values == self.rhs.values

    def feasible(self, extra_rows: Sequence = (), extra_rhs: Sequence = ()) -> lp.LPResult:
        A = [list(r) for r in self.equalities.rows] + [list(r) for r in extra_rows]
        b = list(self.rhs.values) + list(extra_rhs)
        return lp.solve(A, b)

    def maximize(self, objective: Sequence, extra_rows: Sequence = (), extra_rhs: Sequence = ()) -> lp.LPResult:
        A = [list(r) for r in self.equalities.rows] + [list(r) for r in extra_rows]
        b = list(self.rhs.values) + list(extra_rhs)
        result = lp.solve(A, b, list(objective))
        if result.status == lp.UNBOUNDED:
            raise InvariantViolation("unbounded LP over a polytope whose coordinates sum to one")
        return result

    def to_json(self, label: Callable = str) -> str:
        return json.dumps(
            {
                "labels": [label(x) for x in self.labels],
                "constraints": [
                    {"name": label(r), "row": [format_rational(v) for v in row], "rhs": format_rational(b)}
                    for r, row, b in zip(self.equalities.row_labels, self.equalities.rows, self.rhs.values)
                ],
                "nonnegative": True,
            },
            indent=2,
        ) + "\n"


def cycle_polytope(graph: DirectedMultigraph, cap: int = DEFAULT_CYCLE_CAP) -> VPolytope:
    labels = graph.edge_keys
    return VPolytope(labels, tuple(cycle_vector(c, labels) for c in simple_cycles(graph, cap)))


_SUM = "sum"


def h_representation(graph: DirectedMultigraph) -> HPolytope:
    """Flow balance at every vertex, total mass one, non-negativity."""
    inc = incidence_matrix(graph)
    rows = tuple(inc.rows) + ((1,) * len(graph.edges),)
    eq = RatMatrix(tuple(("balance", v) for v in graph.vertices) + (_SUM,), inc.col_labels, rows)
    rhs = RatVector(eq.row_labels, (0,) * len(graph.vertices) + (1,))
    return HPolytope(eq, rhs)


def projection_matrix(graph: DirectedMultigraph, targets: Sequence) -> RatMatrix:
    """Forget colours: coloured edge ``(pi, c)`` maps to the coordinate ``pi``."""
    targets = tuple(targets)
    index = {t: i for i, t in enumerate(targets)}
    cols = graph.edge_keys
    rows = [[0] * len(cols) for _ in targets]
    for j, e in enumerate(graph.edges):
        perm = e.label.perm
        if perm not in index:
            raise ValueError(f"no target coordinate for {perm!r}")
        rows[index[perm]][j] = 1
    return RatMatrix(targets, cols, tuple(tuple(r) for r in rows))


def project_forget_colours(x: RatVector, targets: Sequence) -> RatVector:
    """Sum the coordinates of each permutation over its colourings."""
    targets = tuple(targets)
    out: dict = {}
    for lab, v in x.items():
        out[lab.perm] = out.get(lab.perm, 0) + v
    extra = set(out) - set(targets)
    if extra:
        raise ValueError(f"coordinates {sorted(extra)!r} have no target")
    return RatVector.from_mapping(targets, out)


def _split_point(point: RatVector, support: Sequence) -> tuple[bool, RatVector]:
    """Restrict ``point`` to ``support``; False if a coordinate outside it is non-zero."""
    keep = set(support)
    if any(v and lab not in keep for lab, v in point.items()):
        return False, point
    return True, RatVector.from_mapping(tuple(support), point.as_dict())


def membership(graph: DirectedMultigraph, point: RatVector) -> bool:
    """Is ``point`` (coordinates = edge keys, extra coordinates must vanish) in the cycle polytope of ``graph``?"""
    ok, p = _split_point(point, graph.edge_keys)
    if not ok:
        return False
    H = h_representation(graph)
    n = len(graph.edges)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    return H.feasible(ident, p.values).feasible


def membership_projected(graph: DirectedMultigraph, targets: Sequence, point: RatVector) -> bool:
    """Is ``point`` in the colour-forgetting image of the cycle polytope?  Solved as a lifted LP."""
    proj = projection_matrix(graph, targets)
    ok, p = _split_point(point, proj.row_labels)
    if not ok:
        return False
    H = h_representation(graph)
    return H.feasible(proj.rows, p.values).feasible


def maximize(graph: DirectedMultigraph, objective: RatVector, targets: Sequence | None = None) -> tuple:
    """Maximum of ``objective`` over the cycle polytope, or over its projection when ``targets`` is given.

    Returns ``(value, optimizer)``; the optimizer lives in the polytope's own (unprojected) coordinates.
    """
    H = h_representation(graph)
    if targets is None:
        c = objective.relabel(graph.edge_keys).values
    else:
        proj = projection_matrix(graph, targets)
        w = objective.relabel(proj.row_labels)
        c = tuple(sum((w.values[i] * proj.rows[i][j] for i in range(len(w))), Fraction(0)) for j in range(len(graph.edges)))
    res = H.maximize(c)
    if not res.feasible:
        raise InvariantViolation("cycle polytope is empty")
    return res.value, RatVector(graph.edge_keys, res.x)


def lp_feasible(H: HPolytope, extra_rows: Sequence = (), extra_rhs: Sequence = ()) -> bool:
    return H.feasible(extra_rows, extra_rhs).feasible


def lp_maximize(objective: RatVector, H: HPolytope) -> tuple:
    """Exact optimum and optimizer of ``objective`` over ``H``."""
    res = H.maximize(objective.relabel(H.labels).values)
    if not res.feasible:
        raise InvariantViolation("empty polytope")
    return res.value, RatVector(H.labels, res.x)
