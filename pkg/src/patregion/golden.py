"""Reference data for the reproducible facts and the ``reproduce`` registry.

Matrix data is stored as row strings; coloured labels use the ``v:c`` text
form and plain labels are compact one-line permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .colouring import parse_coloured, render_named
from .geometry.linalg import RatMatrix, RatVector
from .permcore import Permutation


def _label(text: str):
    return parse_coloured(text) if ":" in text else Permutation(text)


def _matrix(columns: tuple, rows: tuple) -> RatMatrix:
    return RatMatrix(
        tuple(_label(r) for r, _ in rows),
        tuple(_label(c) for c in columns),
        tuple(tuple(int(x) for x in vals.split()) for _, vals in rows),
    )


INHERITED_3_3 = (
    "red123", "blue1red23", "blue12red3", "blue123", "red13blue2",
    "blue1red3blue2", "red2blue1red3", "red23blue1", "red3blue12",
)
NOT_INHERITED_3_3 = "red2blue13"

COLOURED_VERTICES_3_2 = ("red12", "blue1red2", "blue12", "red2blue1")

WALK_EXAMPLE_PERMUTATION = "1243756"
WALK_EXAMPLE_COLOURS = (1, 1, 1, 2, 1, 2, 2)
WALK_EXAMPLE_COLOURED = ("red123", "red13blue2", "red2blue1red3", "blue1red3blue2", "red3blue12")
WALK_EXAMPLE_PLAIN = ("123", "132", "213", "132", "312")

FACT_POINT = (Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0))

MATRIX_A_3_3 = _matrix(
    columns=(
        "1:1 2:1 3:1",
        "1:2 2:1 3:1",
        "1:2 2:2 3:1",
        "1:2 2:2 3:2",
        "1:1 3:1 2:2",
        "1:2 3:1 2:2",
        "2:1 1:2 3:1",
        "2:1 3:1 1:2",
        "3:1 1:2 2:2",
    ),
    rows=(
        ("123", "1 1 1 1 0 0 0 0 0"),
        ("132", "0 0 0 0 1 1 0 0 0"),
        ("213", "0 0 0 0 0 0 1 0 0"),
        ("231", "0 0 0 0 0 0 0 1 0"),
        ("312", "0 0 0 0 0 0 0 0 1"),
        ("1:1 2:1", "0 -1 0 0 1 0 0 1 0"),
        ("1:2 2:1", "0 1 -1 0 0 1 -1 0 0"),
        ("1:2 2:2", "0 0 1 0 0 0 0 0 -1"),
        ("2:1 1:2", "0 0 0 0 -1 -1 1 -1 1"),
    ),
)

MINOR_3_3 = _matrix(
    columns=(
        "1:1 2:1 3:1",
        "1:2 2:1 3:1",
        "1:2 2:2 3:1",
        "2:1 1:2 3:1",
        "1:1 3:1 2:2",
        "2:1 3:1 1:2",
        "3:1 1:2 2:2",
    ),
    rows=(
        ("123", "1 1 1 0 0 0 0"),
        ("1:2 2:1", "0 1 -1 -1 0 0 0"),
        ("1:2 2:2", "0 0 1 0 0 0 -1"),
        ("2:1 1:2", "0 0 0 1 -1 -1 1"),
        ("132", "0 0 0 0 1 0 0"),
        ("231", "0 0 0 0 0 1 0"),
        ("312", "0 0 0 0 0 0 1"),
    ),
)
MATRIX_A_4_3 = _matrix(
    columns=(
        "1:1 2:1 3:1",
        "1:2 2:1 3:1",
        "1:3 2:1 3:1",
        "1:2 2:2 3:1",
        "1:3 2:2 3:1",
        "1:3 2:3 3:1",
        "1:2 2:2 3:2",
        "1:3 2:2 3:2",
        "1:3 2:3 3:2",
        "1:3 2:3 3:3",
        "1:1 3:1 2:2",
        "1:2 3:1 2:2",
        "1:3 3:1 2:2",
        "1:3 3:1 2:3",
        "1:2 3:2 2:3",
        "1:3 3:2 2:3",
        "2:1 1:2 3:1",
        "2:1 1:3 3:1",
        "2:2 1:3 3:1",
        "2:2 1:3 3:2",
        "2:1 3:1 1:2",
        "2:1 3:1 1:3",
        "2:2 3:1 1:3",
        "2:3 3:2 1:3",
        "3:1 1:2 2:2",
        "3:1 1:3 2:2",
        "3:1 1:3 2:3",
        "3:2 1:3 2:3",
        "3:1 2:2 1:3",
    ),
    rows=(
        ("123", "1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0"),
        ("132", "0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0"),
        ("213", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0 0"),
        ("231", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0 0"),
        ("312", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0"),
        ("321", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1"),
        ("1:1 2:1", "0 -1 -1 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 1 1 0 0 0 0 0 0 0"),
        ("1:2 2:1", "0 1 0 -1 -1 0 0 0 0 0 0 1 0 0 0 0 -1 0 0 0 0 0 1 0 0 0 0 0 0"),
        ("1:3 2:1", "0 0 1 0 0 -1 0 0 0 0 0 0 1 1 0 0 0 -1 -1 0 0 0 0 0 0 0 0 0 0"),
        ("1:2 2:2", "0 0 0 1 0 0 0 -1 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 -1 0 0 0 0"),
        ("1:3 2:2", "0 0 0 0 1 0 0 1 -1 0 0 0 0 0 0 1 0 0 0 -1 0 0 0 1 0 -1 0 0 0"),
        ("1:3 2:3", "0 0 0 0 0 1 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 -1 -1 0"),
        ("2:1 1:2", "0 0 0 0 0 0 0 0 0 0 -1 -1 -1 0 0 0 1 0 0 0 -1 0 0 0 1 0 0 0 1"),
        ("2:1 1:3", "0 0 0 0 0 0 0 0 0 0 0 0 0 -1 0 0 0 1 0 0 0 -1 -1 0 0 1 1 0 0"),
        ("2:2 1:3", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 -1 -1 0 0 1 1 0 0 0 -1 0 0 0 1 -1"),
    ),
)


@dataclass
class FactResult:
    fact_id: str
    passed: bool
    details: list = field(default_factory=list)


def _has_monochromatic_descent(cp) -> bool:
    return any(
        cp.colours[i] == cp.colours[j] and cp.perm[i] > cp.perm[j]
        for i in range(cp.size) for j in range(i + 1, cp.size)
    )


def _matrix_diff(expected: RatMatrix, actual: RatMatrix) -> list:
    """Positional differences: shape, labels, then entries."""
    from .analysis import label_text
    from .colouring import ColouredPermutation

    if expected.shape != actual.shape:
        return [f"shape differs: expected {expected.shape}, got {actual.shape}"]
    out = []
    for i, (a, b) in enumerate(zip(expected.row_labels, actual.row_labels)):
        if a != b:
            out.append(f"row {i + 1} label: expected {label_text(a)}, got {label_text(b)}")
    for j, (a, b) in enumerate(zip(expected.col_labels, actual.col_labels)):
        if a != b:
            note = ""
            if isinstance(a, ColouredPermutation) and _has_monochromatic_descent(a):
                note = " (the expected label has a monochromatic descent, so it is not an inherited colouring)"
            out.append(f"column {j + 1} label: expected {label_text(a)}, got {label_text(b)}{note}")
    for i, (ra, rb) in enumerate(zip(expected.rows, actual.rows)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            if a != b:
                out.append(f"entry ({label_text(expected.row_labels[i])}, column {j + 1}): expected {a}, got {b}")
    return out


def _table_1() -> FactResult:
    from .colouring import enumerate_inherited

    got = {render_named(c) for c in enumerate_inherited(3, 3)}
    want = set(INHERITED_3_3)
    details = [f"inherited 2-colourings of size 3: {len(got)}"]
    if got != want:
        details.append(f"missing {sorted(want - got)}, unexpected {sorted(got - want)}")
    excluded = NOT_INHERITED_3_3 not in got
    details.append(f"{NOT_INHERITED_3_3} excluded: {excluded}")
    return FactResult("table-1", got == want and excluded, details)


def _matrix_fact(fact_id: str, expected: RatMatrix, compute: Callable) -> FactResult:
    actual = compute()
    diff = _matrix_diff(expected, actual)
    details = [f"shape {actual.shape[0]}x{actual.shape[1]}, differences: {len(diff)}"] + diff[:20]
    return FactResult(fact_id, not diff, details)


def _matrix_a_3_3() -> FactResult:
    from .analysis import matrix_A

    return _matrix_fact("matrix-a-3-3", MATRIX_A_3_3, lambda: matrix_A(3, 3))


def _landscape() -> FactResult:
    from .analysis import matrix_A

    return _matrix_fact("landscape", MATRIX_A_4_3, lambda: matrix_A(4, 3))


def _minor() -> FactResult:
    from .analysis import triangular_minor

    cert = triangular_minor(3, 3)
    res = _matrix_fact("minor-3-3", MINOR_3_3, lambda: cert.matrix)
    res.details.append(f"upper triangular: {cert.upper_triangular}, non-zero diagonal: {cert.diagonal_nonzero}")
    res.passed = res.passed and cert.valid
    return res


def _fact_1_10() -> FactResult:
    from .colouring import build_coloured_overlap
    from .geometry.polytope import membership, membership_projected
    from .overlap import build_overlap_graph
    from .permcore import coordinate_order

    order = coordinate_order(3)
    point = RatVector(order, FACT_POINT)
    plain = membership(build_overlap_graph(3, [Permutation("321")]), point)
    projected = membership_projected(build_coloured_overlap(3, 3), order, point)
    return FactResult(
        "fact-1-10",
        (plain, projected) == (True, False),
        [f"point {[str(x) for x in FACT_POINT]} over {[p.compact() for p in order]}",
         f"in cycle polytope of restricted overlap graph: {plain}",
         f"in projected coloured cycle polytope: {projected}"],
    )


def _fig_1() -> FactResult:
    from .geometry.cycles import simple_cycles
    from .geometry.polytope import cycle_polytope, cycle_vector
    from .overlap import build_overlap_graph
    from .permcore import coordinate_order

    g = build_overlap_graph(3)
    cycles = simple_cycles(g)
    lengths = sorted(len(c) for c in cycles)
    dim = cycle_polytope(g).dimension()
    loop = next(c for c in cycles if c.labels == (Permutation("123"),))
    loop_vec = cycle_vector(loop).relabel(coordinate_order(3)).values
    ok = (len(g.vertices), len(g.edges)) == (2, 6) and lengths == [1, 1, 2, 2, 2, 2] and dim == 4 and loop_vec == (1, 0, 0, 0, 0, 0)
    return FactResult("fig-1", ok, [
        f"|V|={len(g.vertices)} |E|={len(g.edges)}", f"cycle lengths {lengths}", f"dimension {dim}",
        f"loop 123 vertex {[str(x) for x in loop_vec]}",
    ])


def _fig_4() -> FactResult:
    from .analysis import projected_vertices
    from .geometry.polytope import cycle_polytope, membership
    from .geometry.linalg import affine_dimension
    from .overlap import build_overlap_graph
    from .permcore import coordinate_order

    d312 = cycle_polytope(build_overlap_graph(3, [Permutation("312")])).dimension()
    proj = projected_vertices(3, 3)
    d321 = affine_dimension(proj)
    g321 = build_overlap_graph(3, [Permutation("321")])
    inside = all(membership(g321, v.relabel(coordinate_order(3))) for v in proj)
    ok = d312 == 3 and d321 == 3 and inside
    return FactResult("fig-4", ok, [
        f"dimension of 312-avoiding region: {d312}", f"dimension of 321-avoiding region: {d321}",
        f"projected vertices inside the restricted cycle polytope: {inside}",
    ])


def _fig_6() -> FactResult:
    from .colouring import build_coloured_overlap, coloured_walk_labels, ritmo_colours
    from .overlap import is_strongly_connected, walk_of

    g = build_coloured_overlap(3, 3)
    verts = {render_named(v) for v in g.vertices}
    edges = {render_named(e.label) for e in g.edges}
    sigma = Permutation(WALK_EXAMPLE_PERMUTATION)
    colours = ritmo_colours(sigma)
    walk = tuple(render_named(c) for c in coloured_walk_labels(sigma, 3))
    plain = tuple(p.compact() for p in walk_of(sigma, 3).labels)
    ok = (
        verts == set(COLOURED_VERTICES_3_2) and edges == set(INHERITED_3_3) and is_strongly_connected(g)
        and colours == WALK_EXAMPLE_COLOURS and walk == WALK_EXAMPLE_COLOURED and plain == WALK_EXAMPLE_PLAIN
    )
    return FactResult("fig-6", ok, [
        f"vertices {sorted(verts)}", f"{len(edges)} edges", f"colouring of {sigma.compact()}: {colours}",
        f"coloured walk {list(walk)}",
    ])


REGISTRY: dict = {
    "table-1": _table_1,
    "matrix-a-3-3": _matrix_a_3_3,
    "minor": _minor,
    "landscape": _landscape,
    "fact-1-10": _fact_1_10,
    "fig-1": _fig_1,
    "fig-4": _fig_4,
    "fig-6": _fig_6,
}


def reproduce(fact_id: str) -> list:
    """Run one fact (or ``all``) and return the list of :class:`FactResult`."""
    if fact_id == "all":
        return [fn() for fn in REGISTRY.values()]
    if fact_id not in REGISTRY:
        raise KeyError(fact_id)
    return [REGISTRY[fact_id]()]
