"""Overlap graphs of consecutive patterns, walks, and walk realization.

A :class:`DirectedMultigraph` is generic over its vertex and edge labels, so
the coloured graphs built in :mod:`patregion.colouring` reuse it unchanged.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .errors import InvariantViolation, PatternError
from .geometry.linalg import RatMatrix
from .permcore import (
    Permutation,
    append,
    avoids,
    avoids_all,
    begin,
    end,
    enumerate_avoiders,
    pattern_set,
    window_patterns,
)

__all__ = [
    "Edge", "DirectedMultigraph", "Walk",
    "build_overlap_graph", "walk_of", "incidence_matrix", "is_strongly_connected",
    "extend_312", "realize_walk_312", "realize_walk", "decompose_walk",
    "to_dot", "to_json",
]


class Edge(NamedTuple):
    label: Hashable
    ordinal: int
    start: Hashable
    end: Hashable

    @property
    def id(self) -> tuple:
        return (self.label, self.ordinal)

    @property
    def is_loop(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True, eq=False)
class DirectedMultigraph:
    """Vertices and edges in a fixed order; loops and parallel edges allowed."""

    vertices: tuple
    edges: tuple
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise PatternError("duplicate vertex labels")
        ids = set()
        for e in self.edges:
            if e.start not in vset or e.end not in vset:
                raise PatternError(f"edge {e.id!r} references an unknown vertex")
            if e.id in ids:
                raise PatternError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)

    @classmethod
    def from_pairs(cls, vertices: Sequence, labelled_edges: Iterable[tuple], name: str = "") -> "DirectedMultigraph":
        """Build from ``(label, start, end)`` triples; ordinals number parallel label repeats."""
        seen: Counter = Counter()
        edges = []
        for label, s, t in labelled_edges:
            edges.append(Edge(label, seen[label], s, t))
            seen[label] += 1
        return cls(tuple(vertices), tuple(edges), name)

    @cached_property
    def edge_index(self) -> dict:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def labels_unique(self) -> bool:
        return len({e.label for e in self.edges}) == len(self.edges)

    @cached_property
    def by_label(self) -> dict:
        """Label -> edge; only meaningful when labels are unique."""
        return {e.label: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict:
        out = defaultdict(list)
        for e in self.edges:
            out[e.start].append(e)
        return {v: tuple(out[v]) for v in self.vertices}

    @cached_property
    def in_edges(self) -> dict:
        inc = defaultdict(list)
        for e in self.edges:
            inc[e.end].append(e)
        return {v: tuple(inc[v]) for v in self.vertices}

    def edge_key(self, e: Edge):
        """Column key for matrices and vectors: the label when labels are unique, else the id."""
        return e.label if self.labels_unique else e.id

    @property
    def edge_keys(self) -> tuple:
        return tuple(self.edge_key(e) for e in self.edges)

    def edge(self, key) -> Edge:
        if self.labels_unique and key in self.by_label:
            return self.by_label[key]
        return self.edges[self.edge_index[key]]

    def __repr__(self):
        return f"<DirectedMultigraph {self.name or ''} |V|={len(self.vertices)} |E|={len(self.edges)}>"


class Walk:
    """A sequence of consecutively compatible edges in a graph."""

    __slots__ = ("graph", "edges")

    def __init__(self, graph: DirectedMultigraph, edges: Iterable[Edge]):
        edges = tuple(edges)
        for a, b in zip(edges, edges[1:]):
            if a.end != b.start:
                raise PatternError(f"incompatible consecutive edges {a.label!r} -> {b.label!r}")
        self.graph = graph
        self.edges = edges

    @classmethod
    def from_labels(cls, graph: DirectedMultigraph, labels: Iterable) -> "Walk":
        if not graph.labels_unique:
            raise PatternError("label lookup needs unique edge labels")
        try:
            return cls(graph, (graph.by_label[lab] for lab in labels))
        except KeyError as exc:
            raise PatternError(f"no edge labelled {exc.args[0]!r}") from None

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __eq__(self, other):
        return isinstance(other, Walk) and self.graph is other.graph and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    @property
    def labels(self) -> tuple:
        return tuple(e.label for e in self.edges)

    def multiplicities(self) -> Counter:
        return Counter(e.id for e in self.edges)

    def is_cycle(self) -> bool:
        return bool(self.edges) and self.edges[-1].end == self.edges[0].start

    def __add__(self, other: "Walk") -> "Walk":
        return Walk(self.graph, self.edges + other.edges)

    def __repr__(self):
        return f"Walk({list(self.labels)!r})"


def build_overlap_graph(k: int, patterns: Iterable = (), cap: int | None = None) -> DirectedMultigraph:
    """Overlap graph of size-``k`` patterns avoiding ``patterns``."""
    if k < 2:
        raise PatternError("overlap graphs need k >= 2")
    pats = pattern_set(patterns)
    kw = {} if cap is None else {"cap": cap}
    vertices = enumerate_avoiders(k - 1, pats, **kw)
    edges = tuple(Edge(p, 0, begin(p, k - 1), end(p, k - 1)) for p in enumerate_avoiders(k, pats, **kw))
    name = f"Ov_{k}" + (f"[Av({','.join(p.compact() for p in sorted(pats))})]" if pats else "")
    return DirectedMultigraph(vertices, edges, name, {"k": k, "avoid": tuple(sorted(pats))})


def walk_of(sigma: Sequence[int], k: int, graph: DirectedMultigraph | None = None) -> Walk:
    """The walk whose i-th edge is the pattern of the i-th length-``k`` window."""
    if len(sigma) < k:
        raise PatternError(f"|sigma|={len(sigma)} < k={k}")
    if graph is None:
        graph = build_overlap_graph(k)
    try:
        return Walk.from_labels(graph, window_patterns(sigma, k))
    except PatternError:
        raise PatternError(f"{sigma!r} is outside the class of {graph.name}") from None


def incidence_matrix(graph: DirectedMultigraph) -> RatMatrix:
    """+1 at the start vertex, -1 at the arrival vertex; loop columns are zero."""
    vi = graph.vertex_index
    cols = []
    for e in graph.edges:
        col = [0] * len(graph.vertices)
        if not e.is_loop:
            col[vi[e.start]] = 1
            col[vi[e.end]] = -1
        cols.append(col)
    rows = tuple(tuple(c[i] for c in cols) for i in range(len(graph.vertices)))
    return RatMatrix(graph.vertices, graph.edge_keys, rows)


def _reachable(start, nbrs: dict) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in nbrs[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def is_strongly_connected(graph: DirectedMultigraph) -> bool:
    if not graph.vertices:
        return True
    fwd = {v: [e.end for e in graph.out_edges[v]] for v in graph.vertices}
    bwd = {v: [e.start for e in graph.in_edges[v]] for v in graph.vertices}
    root = graph.vertices[0]
    n = len(graph.vertices)
    return len(_reachable(root, fwd)) == n and len(_reachable(root, bwd)) == n


_P312 = Permutation._trusted((3, 1, 2))


def extend_312(sigma: Sequence[int], target: Sequence[int], check: bool = True) -> Permutation:
    """Append one value to a 312-avoider so its last-k pattern becomes ``target``.

    ``target`` has size k and its first k-1 entries must share the pattern of
    the last k-1 entries of ``sigma``.
    """
    k = len(target)
    n = len(sigma)
    if k < 2 or n < k - 1:
        raise PatternError("need 2 <= k <= |sigma| + 1")
    if begin(target, k - 1) != end(sigma, k - 1):
        raise PatternError(f"{tuple(target)} does not continue the suffix of {tuple(sigma)}")
    if check and not avoids(sigma, _P312):
        raise PatternError(f"{tuple(sigma)} contains 312")
    last = target[-1]
    if last == 1:
        value = 1
    elif last == k:
        value = n + 1
    else:
        j = target.index(last + 1) + 1  # 1-based position in target, j <= k-1
        value = sigma[n - (k - 1) + j - 1]
    out = append(sigma, value)
    if check and not avoids(out, _P312):
        raise InvariantViolation(f"extension of {tuple(sigma)} by {value} contains 312")
    return out


def realize_walk_312(walk: Walk | Sequence, check: bool = True) -> Permutation:
    """A 312-avoider whose consecutive-pattern walk is exactly ``walk``."""
    labels = walk.labels if isinstance(walk, Walk) else tuple(walk)
    if not labels:
        raise PatternError("empty walk")
    k = len(labels[0])
    sigma = Permutation(labels[0])
    for a, b in zip(labels, labels[1:]):
        if end(a, k - 1) != begin(b, k - 1):
            raise PatternError(f"incompatible consecutive edges {a!r} -> {b!r}")
        sigma = extend_312(sigma, b, check=check)
    return sigma


def realize_walk(walk: Walk | Sequence, patterns: Iterable = ()) -> Permutation:
    """Depth-first search over single-value appends for a ``patterns``-avoider realizing ``walk``.

    Raises :class:`PatternError` if no realization exists.
    """
    labels = walk.labels if isinstance(walk, Walk) else tuple(walk)
    if not labels:
        raise PatternError("empty walk")
    pats = pattern_set(patterns)
    k = len(labels[0])
    first = Permutation(labels[0])
    if not avoids_all(first, pats):
        raise PatternError(f"{first} is outside the class")

    def search(sigma, step):
        if step == len(labels):
            return sigma
        target = labels[step]
        for value in range(1, len(sigma) + 2):
            cand = append(sigma, value)
            if end(cand, k) != target or not avoids_all(cand, pats):
                continue
            found = search(cand, step + 1)
            if found is not None:
                return found
        return None

    result = search(first, 1)
    if result is None:
        raise PatternError("walk has no realization in the class")
    return result


def decompose_walk(walk: Walk) -> tuple[list[Walk], Walk]:
    """Split a walk into simple cycles and a residual path with no repeated vertex.

    Cycles are peeled greedily: whenever the running path revisits a vertex,
    the closed segment is removed.
    """
    graph = walk.graph
    cycles: list[Walk] = []
    if not walk.edges:
        return cycles, Walk(graph, ())
    path_edges: list[Edge] = []
    path_vertices = [walk.edges[0].start]
    position = {walk.edges[0].start: 0}
    for e in walk.edges:
        path_edges.append(e)
        v = e.end
        if v in position:
            cut = position[v]
            cyc = path_edges[cut:]
            del path_edges[cut:]
            for u in path_vertices[cut + 1:]:
                del position[u]
            del path_vertices[cut + 1:]
            cycles.append(Walk(graph, cyc))
        else:
            position[v] = len(path_vertices)
            path_vertices.append(v)
    return cycles, Walk(graph, path_edges)


def _fmt(label, render: Callable | None) -> str:
    if render is not None:
        return render(label)
    if isinstance(label, tuple) and all(isinstance(x, int) for x in label):
        return " ".join(map(str, label))
    return str(label)


def to_dot(graph: DirectedMultigraph, render: Callable | None = None) -> str:
    """Graphviz DOT text; vertices and edges labelled by their one-line forms."""
    lines = [f'digraph "{graph.name or "G"}" {{']
    vid = {v: f"v{i}" for i, v in enumerate(graph.vertices)}
    for v in graph.vertices:
        lines.append(f'  {vid[v]} [label="{_fmt(v, render)}"];')
    for e in graph.edges:
        lines.append(f'  {vid[e.start]} -> {vid[e.end]} [label="{_fmt(e.label, render)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: DirectedMultigraph, encode: Callable | None = None) -> str:
    enc = encode or (lambda x: list(x) if isinstance(x, tuple) else x)
    payload = {
        "name": graph.name,
        "vertices": [{"id": i, "label": enc(v)} for i, v in enumerate(graph.vertices)],
        "edges": [
            {
                "id": i,
                "label": enc(e.label),
                "ordinal": e.ordinal,
                "start": graph.vertex_index[e.start],
                "end": graph.vertex_index[e.end],
            }
            for i, e in enumerate(graph.edges)
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
