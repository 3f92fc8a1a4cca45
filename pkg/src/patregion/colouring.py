"""RITMO colourings, inherited colourings and the coloured overlap graph.

Colours are positive integers. Human-readable output names colours 1, 2, 3
red, blue and green; higher colours render as ``c4``, ``c5`` and so on.

Coloured permutations are ordered by their permutation first and then by
their colour tuple read from the last index backwards (:func:`canonical_key`).
Vertex and edge lists of coloured graphs and the rows and columns of derived
matrices all use this order.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceeded, InvariantViolation, PatternError
from .overlap import DirectedMultigraph, Edge, Walk
from .permcore import (
    Permutation,
    append,
    decreasing,
    direct_sum,
    enumerate_avoiders,
    pattern_at,
    standardize,
)

COLOUR_NAMES = {1: "red", 2: "blue", 3: "green"}
_NAME_TO_COLOUR = {v: k for k, v in COLOUR_NAMES.items()}


class ColouredPermutation(NamedTuple):
    perm: Permutation
    colours: tuple

    @classmethod
    def make(cls, perm, colours) -> "ColouredPermutation":
        perm = perm if isinstance(perm, Permutation) else Permutation(perm)
        colours = tuple(int(c) for c in colours)
        if len(colours) != len(perm):
            raise PatternError("colouring length differs from permutation size")
        if any(c < 1 for c in colours):
            raise PatternError("colours must be positive")
        return cls(perm, colours)

    @property
    def size(self) -> int:
        return len(self.perm)

    def is_rainbow(self, m: int) -> bool:
        return set(self.colours) == set(range(1, m + 1))

    def __str__(self):
        return " ".join(f"{v}:{c}" for v, c in zip(self.perm, self.colours))

    def named(self) -> str:
        return render_named(self)

    def to_json(self) -> dict:
        return {"values": list(self.perm), "colours": list(self.colours)}


def canonical_key(cp: ColouredPermutation) -> tuple:
    return (tuple(cp.perm), tuple(reversed(cp.colours)))


def _colour_name(c: int) -> str:
    return COLOUR_NAMES.get(c, f"c{c}")


def render_named(cp: ColouredPermutation) -> str:
    """Runs of equal colour, e.g. ``red13blue2``; digits are concatenated, so sizes above 9 are ambiguous."""
    out = []
    prev = None
    for v, c in zip(cp.perm, cp.colours):
        if c != prev:
            out.append(_colour_name(c))
            prev = c
        out.append(str(v) if len(cp.perm) <= 9 else f"{v},")
    return "".join(out)


def parse_named(text: str) -> ColouredPermutation:
    """Inverse of :func:`render_named` for sizes up to 9."""
    values, colours = [], []
    for name, digits in re.findall(r"(red|blue|green|c\d+)(\d+)", text.replace(" ", "")):
        c = _NAME_TO_COLOUR.get(name) or int(name[1:])
        for d in digits:
            values.append(int(d))
            colours.append(c)
    return ColouredPermutation.make(values, colours)


def parse_coloured(text: str) -> ColouredPermutation:
    """Accepts ``"v1:c1 v2:c2"``, the JSON object form, or the named form."""
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        return ColouredPermutation.make(obj["values"], obj["colours"])
    if ":" in text:
        pairs = [p.split(":") for p in text.replace(",", " ").split()]
        return ColouredPermutation.make([int(a) for a, _ in pairs], [int(b) for _, b in pairs])
    return parse_named(text)


def ritmo_colours(sigma: Sequence[int]) -> tuple:
    """Colours from the highest value down, each the least colour not already used by an earlier, larger entry."""
    n = len(sigma)
    pos = [0] * (n + 1)
    for i, v in enumerate(sigma):
        pos[v] = i
    colours = [0] * n
    for v in range(n, 0, -1):
        p = pos[v]
        used = {colours[i] for i in range(p) if sigma[i] > v}
        c = 1
        while c in used:
            c += 1
        colours[p] = c
    return tuple(colours)


def ritmo(sigma: Sequence[int]) -> ColouredPermutation:
    perm = sigma if isinstance(sigma, Permutation) else Permutation(sigma)
    return ColouredPermutation(perm, ritmo_colours(perm))


def next_colour(sigma: Sequence[int], colours: Sequence[int], value: int) -> int:
    """Colour the last entry of ``append(sigma, value)`` receives; earlier colours are unchanged by an append."""
    used = {c for v, c in zip(sigma, colours) if v >= value}
    c = 1
    while c in used:
        c += 1
    return c


def restrict(cp: ColouredPermutation, indices: Iterable[int]) -> ColouredPermutation:
    """Induced coloured pattern on 1-based ``indices``; colours travel with their entries."""
    idx = sorted(indices)
    perm = pattern_at(cp.perm, idx)
    return ColouredPermutation(perm, tuple(cp.colours[i - 1] for i in idx))


def coloured_begin(cp: ColouredPermutation, j: int) -> ColouredPermutation:
    if not 1 <= j <= cp.size:
        raise PatternError(f"j={j} out of range")
    return ColouredPermutation(standardize(cp.perm[:j]), cp.colours[:j])


def coloured_end(cp: ColouredPermutation, j: int) -> ColouredPermutation:
    if not 1 <= j <= cp.size:
        raise PatternError(f"j={j} out of range")
    return ColouredPermutation(standardize(cp.perm[cp.size - j:]), cp.colours[cp.size - j:])


def coloured_append(cp: ColouredPermutation, y: int, f: int) -> ColouredPermutation:
    return ColouredPermutation(append(cp.perm, y), cp.colours + (f,))


@dataclass(frozen=True)
class WitnessedState:
    state: ColouredPermutation
    witness: Permutation
    rainbow: bool


class ActiveSite(NamedTuple):
    y: int
    f: int


def _check_class(n: int, k: int):
    if n < 2:
        raise PatternError("monotone pattern size must be at least 2")
    if k < 1:
        raise PatternError("k must be positive")


@lru_cache(maxsize=None)
def _inherited(n: int, k: int, cap: int) -> tuple:
    seeds = decreasing(n - 1)
    found: dict = {}
    queue: deque = deque()
    for pi in enumerate_avoiders(k, [decreasing(n)]):
        sigma = direct_sum(seeds, pi)
        cols = ritmo_colours(sigma)
        st = ColouredPermutation(standardize(sigma[-k:]), cols[-k:])
        if st not in found:
            found[st] = (sigma, cols)
            queue.append(st)
    while queue:
        sigma, cols = found[queue.popleft()]
        m = len(sigma)
        for value in range(1, m + 2):
            c = next_colour(sigma, cols, value)
            if c > n - 1:
                continue
            new_sigma = append(sigma, value)
            new_cols = cols + (c,)
            st = ColouredPermutation(standardize(new_sigma[-k:]), new_cols[-k:])
            if st not in found:
                if len(found) >= cap:
                    raise CapExceeded(f"more than {cap} inherited colourings")
                found[st] = (new_sigma, new_cols)
                queue.append(st)
    out = [
        WitnessedState(st, w, len(set(cols)) == n - 1)
        for st, (w, cols) in found.items()
    ]
    out.sort(key=lambda ws: canonical_key(ws.state))
    return tuple(out)


def enumerate_inherited_witnessed(n: int, k: int, cap: int = 1_000_000) -> tuple:
    """Every inherited (n-1)-colouring of size ``k`` with a rainbow witness, canonically ordered.

    The search runs over states, not permutations: seeds are the colourings at
    the end of ``(n-1)...1 + pi``, and each state is expanded by every single
    append of its stored witness that keeps the colour count below ``n``.
    """
    _check_class(n, k)
    return _inherited(n, k, cap)


def enumerate_inherited(n: int, k: int, cap: int = 1_000_000) -> tuple:
    return tuple(ws.state for ws in enumerate_inherited_witnessed(n, k, cap))


@lru_cache(maxsize=None)
def build_coloured_overlap(n: int, k: int) -> DirectedMultigraph:
    """Coloured overlap graph on inherited colourings of sizes ``k-1`` and ``k``."""
    if k < 2:
        raise PatternError("coloured overlap graphs need k >= 2")
    vertices = enumerate_inherited(n, k - 1)
    vset = set(vertices)
    edges = []
    for cp in enumerate_inherited(n, k):
        s, t = coloured_begin(cp, k - 1), coloured_end(cp, k - 1)
        if s not in vset or t not in vset:
            raise InvariantViolation(f"edge {cp} has an endpoint outside the vertex set")
        edges.append(Edge(cp, 0, s, t))
    return DirectedMultigraph(vertices, tuple(edges), f"OvMon[{k},{n}..1]", {"n": n, "k": k, "coloured": True})


def active_sites(vertex: ColouredPermutation, graph: DirectedMultigraph) -> frozenset:
    """Pairs (last value, last colour) of the out-edges of ``vertex``."""
    return frozenset(ActiveSite(e.label.perm[-1], e.label.colours[-1]) for e in graph.out_edges[vertex])


def z_value(sigma: Sequence[int], f: int, colours: Sequence[int] | None = None) -> int:
    """One more than the value at the last index of colour ``f``; 1 if absent; ``|sigma|+2`` for ``f = 0``."""
    if f == 0:
        return len(sigma) + 2
    colours = ritmo_colours(sigma) if colours is None else colours
    for i in range(len(sigma) - 1, -1, -1):
        if colours[i] == f:
            return sigma[i] + 1
    return 1


def z_values(sigma: Sequence[int], top: int | None = None) -> dict:
    colours = ritmo_colours(sigma)
    top = (max(colours, default=0) + 1) if top is None else top
    return {f: z_value(sigma, f, colours) for f in range(top + 1)}


def tilde_heights(sigma: Sequence[int], j: int) -> dict:
    """Heights in ``sigma`` of the points of its last-``j`` pattern, keyed by their height in that pattern."""
    m = len(sigma)
    if not 0 <= j <= m:
        raise PatternError(f"j={j} out of range")
    heights = [0] + sorted(sigma[m - j:]) + [m + 1]
    return dict(enumerate(heights))


def extend_monotone(
    sigma: Sequence[int],
    target: ColouredPermutation,
    n: int | None = None,
    colours: Sequence[int] | None = None,
    check: bool = True,
) -> Permutation:
    """Append one value to ``sigma`` so that its coloured last-k pattern becomes ``target``.

    The value is the least element of the intersection of the height window
    (from :func:`tilde_heights`) and the colour window (from :func:`z_value`).
    ``sigma`` must have a rainbow colouring with the same colour count as the graph.
    """
    k = target.size
    m = len(sigma)
    if m < k - 1:
        raise PatternError("sigma is shorter than k-1")
    colours = ritmo_colours(sigma) if colours is None else tuple(colours)
    if check:
        here = ColouredPermutation(standardize(sigma[m - k + 1:]), tuple(colours[m - k + 1:]))
        if here != coloured_begin(target, k - 1):
            raise PatternError(f"{target} does not continue the end of {tuple(sigma)}")
        if n is not None and set(colours) != set(range(1, n)):
            raise PatternError("extension needs a rainbow colouring")
    y, f = target.perm[-1], target.colours[-1]
    tilde = tilde_heights(sigma, k - 1)
    lo = max(tilde[y - 1] + 1, z_value(sigma, f, colours))
    hi = min(tilde[y], z_value(sigma, f - 1, colours) - 1)
    if lo > hi:
        raise InvariantViolation(f"no admissible value to extend {tuple(sigma)} towards {target}")
    return append(sigma, lo)


def coloured_walk_labels(sigma: Sequence[int], k: int, colours: Sequence[int] | None = None) -> list:
    colours = ritmo_colours(sigma) if colours is None else colours
    return [
        ColouredPermutation(standardize(sigma[i:i + k]), tuple(colours[i:i + k]))
        for i in range(len(sigma) - k + 1)
    ]


def coloured_walk_of(sigma: Sequence[int], n: int, k: int) -> Walk:
    graph = build_coloured_overlap(n, k)
    labels = coloured_walk_labels(sigma, k)
    try:
        return Walk.from_labels(graph, labels)
    except PatternError:
        raise PatternError(f"{tuple(sigma)} contains {n}...1") from None


@lru_cache(maxsize=None)
def _minimal_witnesses(n: int, k: int, max_size: int) -> dict:
    targets = set(enumerate_inherited(n, k))
    found: dict = {}
    for m in range(k, max_size + 1):
        for sigma in enumerate_avoiders(m, [decreasing(n)]):
            cols = ritmo_colours(sigma)
            st = ColouredPermutation(standardize(sigma[-k:]), cols[-k:])
            if st not in found:
                found[st] = sigma
        if targets <= found.keys():
            return found
    raise CapExceeded(f"some inherited colouring needs a witness larger than {max_size}")


def minimal_witness(edge: ColouredPermutation, n: int, max_size: int = 12) -> Permutation:
    """A smallest avoider whose coloured end pattern is ``edge``; lexicographically first among ties."""
    table = _minimal_witnesses(n, edge.size, max_size)
    if edge not in table:
        raise PatternError(f"{edge} is not an inherited colouring")
    return table[edge]


def constant_C(n: int, k: int, max_size: int = 12) -> int:
    """Largest minimal-witness size plus ``n - k - 1``: the prefix bound for monotone walk realization."""
    table = _minimal_witnesses(n, k, max_size)
    return max(len(s) for s in table.values()) + n - k - 1


def realize_walk_monotone(walk: Walk | Sequence, n: int, check: bool = True) -> tuple:
    """A ``n...1``-avoider whose coloured walk is ``prefix + walk``.

    Returns ``(sigma, prefix)``. The first edge is realized by
    ``(n-1)...1 + sigma_e`` for its minimal witness, then each further edge
    by :func:`extend_monotone`. Colours are maintained incrementally.
    """
    labels = walk.labels if isinstance(walk, Walk) else tuple(walk)
    if not labels:
        raise PatternError("empty walk")
    k = labels[0].size
    graph = build_coloured_overlap(n, k)
    sigma = direct_sum(decreasing(n - 1), minimal_witness(labels[0], n))
    colours = list(ritmo_colours(sigma))
    for target in labels[1:]:
        new = extend_monotone(sigma, target, n=n, colours=colours, check=check)
        c = next_colour(sigma, colours, new[-1])
        if check and c != target.colours[-1]:
            raise InvariantViolation(f"extension produced colour {c}, expected {target.colours[-1]}")
        sigma = new
        colours.append(c)
    full = coloured_walk_labels(sigma, k, colours)
    cut = len(full) - len(labels)
    if check and tuple(full[cut:]) != tuple(labels):
        raise InvariantViolation("realized walk does not end with the requested walk")
    return sigma, Walk.from_labels(graph, full[:cut])
