"""Simple cycles of a directed multigraph.

Vertex-level circuits come from Johnson's blocked-set backtracking; each is
then expanded over the parallel edges between consecutive vertices. Loops
are one-edge cycles.
"""

from __future__ import annotations

from itertools import product

from ..errors import CapExceeded
from ..overlap import DirectedMultigraph, Walk

DEFAULT_CYCLE_CAP = 1_000_000


def _strong_component(start: int, nodes: set, succ: dict) -> set:
    def reach(adj):
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in nodes and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    pred: dict = {v: [] for v in nodes}
    for v in nodes:
        for u in succ[v]:
            if u in nodes:
                pred[u].append(v)
    return reach(succ) & reach(pred)


def vertex_circuits(n_vertices: int, succ: dict):
    """Yield every elementary circuit (length >= 2) as a tuple of vertex indices starting at its smallest vertex."""
    for s in range(n_vertices):
        comp = _strong_component(s, set(range(s, n_vertices)), succ)
        if len(comp) < 2:
            continue
        blocked = set()
        blocked_by: dict = {v: set() for v in comp}
        path = [s]

        def unblock(u):
            stack = [u]
            while stack:
                w = stack.pop()
                if w in blocked:
                    blocked.discard(w)
                    stack.extend(blocked_by[w])
                    blocked_by[w].clear()

        def circuit(v):
            found = False
            blocked.add(v)
            for w in succ[v]:
                if w not in comp:
                    continue
                if w == s:
                    yield tuple(path)
                    found = True
                elif w not in blocked:
                    path.append(w)
                    found = (yield from circuit(w)) or found
                    path.pop()
            if found:
                unblock(v)
            else:
                for w in succ[v]:
                    if w in comp:
                        blocked_by[w].add(v)
            return found

        yield from circuit(s)


def simple_cycles(graph: DirectedMultigraph, cap: int = DEFAULT_CYCLE_CAP) -> list:
    """All simple cycles as walks, rotated to start at their smallest edge index and sorted by (length, edges)."""
    vi = graph.vertex_index
    ei = graph.edge_index
    parallel: dict = {}
    succ: dict = {i: [] for i in range(len(graph.vertices))}
    loops = []
    for e in graph.edges:
        s, t = vi[e.start], vi[e.end]
        if s == t:
            loops.append(e)
            continue
        if (s, t) not in parallel:
            parallel[(s, t)] = []
            succ[s].append(t)
        parallel[(s, t)].append(e)
    for v in succ:
        succ[v].sort()

    keyed = []

    def add(edges):
        idx = [ei[e.id] for e in edges]
        r = idx.index(min(idx))
        edges = edges[r:] + edges[:r]
        keyed.append(((len(edges), tuple(idx[r:] + idx[:r])), edges))
        if len(keyed) > cap:
            raise CapExceeded(f"more than {cap} simple cycles")

    for e in loops:
        add((e,))
    for circ in vertex_circuits(len(graph.vertices), succ):
        hops = [parallel[(circ[i], circ[(i + 1) % len(circ)])] for i in range(len(circ))]
        for choice in product(*hops):
            add(tuple(choice))
    keyed.sort(key=lambda t: t[0])
    return [Walk(graph, edges) for _, edges in keyed]
