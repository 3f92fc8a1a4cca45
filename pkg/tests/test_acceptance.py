"""Acceptance criteria, one test each; the terminal summary prints a PASS/FAIL line per criterion."""

from fractions import Fraction
import pytest

from oracles import std
from patregion.analysis import distance_certificate, feasible_dimension_monotone, matrix_A, triangular_minor
from patregion.colouring import (
    build_coloured_overlap,
    coloured_walk_labels,
    constant_C,
    enumerate_inherited,
    parse_named,
    realize_walk_monotone,
    ritmo,
    ritmo_colours,
    tilde_heights,
    z_value,
)
from patregion.geometry.linalg import RatVector
from patregion.geometry.polytope import cycle_polytope, maximize, membership, membership_projected
from patregion.golden import MATRIX_A_3_3, MATRIX_A_4_3, MINOR_3_3, _matrix_diff
from patregion.overlap import Walk, build_overlap_graph, realize_walk_312, walk_of
from patregion.permcore import (
    Permutation,
    append,
    avoids,
    consecutive_occurrences,
    coordinate_order,
    decreasing,
    end,
    enumerate_avoiders,
)

criterion = pytest.mark.criterion
P312 = Permutation("312")


def walks(graph, length):
    out = [(e,) for e in graph.edges]
    for _ in range(length - 1):
        out = [w + (e,) for w in out for e in graph.out_edges[w[-1].end]]
    return out


@criterion(1, "unrestricted cycle polytope dimensions 4 and 18")
def test_unrestricted_dimensions():
    dims = [cycle_polytope(build_overlap_graph(k)).dimension() for k in (3, 4)]
    assert dims == [4, 18]


@criterion(2, "312-avoiding region dimensions 3, 9, 28")
def test_312_dimensions():
    dims = [cycle_polytope(build_overlap_graph(k, [P312])).dimension() for k in (3, 4, 5)]
    assert dims == [3, 9, 28]


@criterion(3, "monotone dimensions (3,3)=3, (3,4)=9, (4,3)=4 by three routes")
def test_monotone_dimensions():
    for (n, k), dim in {(3, 3): 3, (3, 4): 9, (4, 3): 4}.items():
        rep = feasible_dimension_monotone(n, k)
        c = rep.checks
        assert rep.dimension == dim
        assert c["closed_form"] == c["rank_minus_vertices"] == c["projected_affine_dimension"] == dim


@criterion(4, "the point (0,1/2,1/2,0,0,0): in the restricted cycle polytope, not in the projected region")
def test_fact_pair():
    point = RatVector(coordinate_order(3), (0, Fraction(1, 2), Fraction(1, 2), 0, 0, 0))
    inside = membership(build_overlap_graph(3, [decreasing(3)]), point)
    projected = membership_projected(build_coloured_overlap(3, 3), enumerate_avoiders(3, [decreasing(3)]), point)
    assert (inside, projected) == (True, False)


@criterion(5, "bit-exact matrix A (3,3), its 7x7 minor, and the 15x29 matrix for (4,3)")
def test_matrices_bit_exact():
    problems = {
        "matrix A (3,3)": _matrix_diff(MATRIX_A_3_3, matrix_A(3, 3)),
        "minor (3,3)": _matrix_diff(MINOR_3_3, triangular_minor(3, 3).matrix),
        "matrix A (4,3)": _matrix_diff(MATRIX_A_4_3, matrix_A(4, 3)),
    }
    failing = {name: diff for name, diff in problems.items() if diff}
    assert not failing, failing


@criterion(6, "inherited 2-colourings of size 3: the nine listed, red2blue13 excluded")
def test_table_1():
    expected = {parse_named(x) for x in ["red123", "blue1red23", "blue12red3", "blue123", "red13blue2",
                                         "blue1red3blue2", "red2blue1red3", "red23blue1", "red3blue12"]}
    got = enumerate_inherited(3, 3)
    assert len(got) == 9 and set(got) == expected
    assert parse_named("red2blue13") not in got


@criterion(7, "colouring and coloured walk of 1243756")
def test_walk_example():
    s = Permutation("1243756")
    assert ritmo(s).colours == (1, 1, 1, 2, 1, 2, 2)
    got = [cp.named() for cp in coloured_walk_labels(s, 3)]
    assert got == ["red123", "red13blue2", "red2blue1red3", "blue1red3blue2", "red3blue12"]


@criterion(8, "walk realization is surjective (312 walks up to 6, coloured walks up to 4)")
def test_surjectivity():
    g = build_overlap_graph(3, [P312])
    for length in range(1, 7):
        for edges in walks(g, length):
            s = realize_walk_312(Walk(g, edges))
            assert avoids(s, P312) and walk_of(s, 3, g).edges == edges
    cg = build_coloured_overlap(3, 3)
    bound = constant_C(3, 3)
    assert bound == 3
    for length in range(1, 5):
        for edges in walks(cg, length):
            labels = [e.label for e in edges]
            sigma, prefix = realize_walk_monotone(labels, 3)
            assert avoids(sigma, decreasing(3))
            assert len(prefix) <= bound
            assert coloured_walk_labels(sigma, 3)[-length:] == labels


def ritmo_violations(sigma):
    """Count failures of the colouring properties and of the two append rules for one permutation."""
    m = len(sigma)
    col = ritmo_colours(sigma)
    bad = 0
    for i in range(m):
        for j in range(i + 1, m):
            if sigma[i] > sigma[j]:
                bad += col[i] >= col[j]
            elif col[i] < col[j]:
                mids = [h for h in range(i + 1, j) if sigma[h] > sigma[j]]
                bad += not any(col[h] == col[i] for h in mids)
                bad += not any(col[h] == col[j] - 1 for h in mids)
    for j in range(1, m + 1):
        bad += col[:j] != ritmo_colours(std(sigma[:j]))
    for jj in (2, 3):
        if jj > m:
            continue
        pi = std(sigma[m - jj:])
        tilde = tilde_heights(sigma, jj)
        for iota in range(1, m + 2):
            ext = append(sigma, iota)
            last = tuple(end(ext, jj + 1))
            for y in range(1, jj + 2):
                bad += (last == tuple(append(pi, y))) != (tilde[y - 1] < iota <= tilde[y])
    ext_cols = {}
    for iota in range(1, m + 2):
        ext_cols[iota] = ritmo_colours(append(sigma, iota))[-1]
    for f in range(1, max(col, default=0) + 3):
        lo, hi = z_value(sigma, f, col), z_value(sigma, f - 1, col)
        for iota in range(1, m + 2):
            bad += (ext_cols[iota] == f) != (lo <= iota < hi)
    return bad


@criterion(9, "colouring property suite exhaustive up to size 8 for n = 3, 4")
def test_ritmo_suite():
    total = 0
    checked = 0
    for n in (3, 4):
        for m in range(1, 9):
            for sigma in enumerate_avoiders(m, [decreasing(n)]):
                total += ritmo_violations(sigma)
                checked += 1
    assert checked > 19000
    assert total == 0


@criterion(10, "distance to the projected region at most 18/|sigma| up to size 11; max 312 density 1/3 approached")
def test_approximation():
    for m in range(3, 12):
        bound = Fraction(18, m) ** 2
        for sigma in enumerate_avoiders(m, [decreasing(3)]):
            assert distance_certificate(sigma, 3, n=3).squared_distance <= bound
    cg = build_coloured_overlap(3, 3)
    targets = enumerate_avoiders(3, [decreasing(3)])
    value, _ = maximize(cg, RatVector.from_mapping(targets, {P312: 1}), targets)
    assert value == Fraction(1, 3)
    cycle = [parse_named(x) for x in ("blue1red3blue2", "red3blue12", "blue12red3")]
    sigma, _ = realize_walk_monotone(cycle * 134, 3)
    assert len(sigma) >= 400 and avoids(sigma, decreasing(3))
    density = Fraction(consecutive_occurrences(P312, sigma), len(sigma))
    assert abs(density - value) <= Fraction(1, 20)


def test_property_checker_detects_faults(monkeypatch):
    import test_acceptance as mod

    sigma = Permutation("2413")
    assert ritmo_violations(sigma) == 0
    monkeypatch.setattr(mod, "tilde_heights", lambda s, j: {i: i for i in range(j + 2)})
    assert ritmo_violations(Permutation("35142")) > 0
    monkeypatch.undo()
    monkeypatch.setattr(mod, "z_value", lambda s, f, c=None: 1)
    assert ritmo_violations(sigma) > 0
