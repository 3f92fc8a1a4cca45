import json
from fractions import Fraction

import pytest
import sympy

from patregion.analysis import (
    closed_form_monotone,
    completion,
    conjecture_probe,
    distance_certificate,
    feasible_dimension_cycle,
    feasible_dimension_monotone,
    matrix_A,
    rank_exact,
    sum_limit_vector,
    triangular_minor,
)
from patregion.colouring import build_coloured_overlap, coloured_end, ritmo
from patregion.geometry.linalg import RatMatrix
from patregion.overlap import build_overlap_graph, incidence_matrix
from patregion.permcore import Permutation, decreasing, density_vector, enumerate_avoiders, increasing, repeat_sum


class TestMatrixA:
    @pytest.mark.parametrize("n,k", [(3, 3), (4, 3), (3, 4)])
    def test_shape_and_column_sums(self, n, k):
        A = matrix_A(n, k)
        perms = enumerate_avoiders(k, [decreasing(n)])
        g = build_coloured_overlap(n, k)
        assert A.shape == (len(perms) + len(g.vertices), len(g.edges))
        for j in range(A.shape[1]):
            col = [r[j] for r in A.rows]
            assert sum(col[: len(perms)]) == 1
            assert sum(col[len(perms):]) == 0

    def test_ranks(self):
        assert rank_exact(matrix_A(3, 3)) == 7
        assert rank_exact(matrix_A(4, 3)) == 13
        assert rank_exact(RatMatrix(("a",), ("x", "y"), ((0, 0),))) == 0
        assert rank_exact(incidence_matrix(build_overlap_graph(3))) == 1

    @pytest.mark.parametrize("n,k", [(3, 3), (4, 3), (3, 4)])
    def test_rank_matches_sympy(self, n, k):
        A = matrix_A(n, k)
        assert rank_exact(A) == sympy.Matrix([list(r) for r in A.rows]).rank()


class TestMinor:
    def test_3_3_order(self):
        cert = triangular_minor(3, 3)
        names = [ritmo(p).named() if isinstance(p, tuple) and not hasattr(p, "colours") else p.named() for p in cert.row_labels]
        assert cert.size == 7 and cert.valid
        assert [str(x) if not hasattr(x, "colours") else x.named() for x in cert.row_labels] == [
            "1 2 3", "blue1red2", "blue12", "red2blue1", "1 3 2", "2 3 1", "3 1 2"
        ]
        assert names[0] == "red123"

    @pytest.mark.parametrize("n,k", [(3, 3), (4, 3), (3, 4), (4, 4), (5, 3)])
    def test_size_and_rank(self, n, k):
        cert = triangular_minor(n, k)
        g = build_coloured_overlap(n, k)
        expected = len(g.vertices) + len(enumerate_avoiders(k, [decreasing(n)])) - len(enumerate_avoiders(k - 1, [decreasing(n)]))
        assert cert.size == expected
        assert cert.valid
        assert all(d == 1 for d in cert.matrix.diagonal())
        assert cert.matrix.rank() == cert.size <= rank_exact(matrix_A(n, k))

    @pytest.mark.parametrize("n,k", [(3, 3), (4, 3), (3, 4), (4, 4)])
    def test_completion_graph_has_one_cycle(self, n, k):
        g = build_coloured_overlap(n, k)
        succ = {v: coloured_end(completion(v, g), k - 1) for v in g.vertices}
        root = ritmo(increasing(k - 1))
        assert succ[root] == root
        for v in g.vertices:
            seen = set()
            while v != root:
                assert v not in seen
                seen.add(v)
                v = succ[v]

    def test_csv(self):
        text = triangular_minor(3, 3).to_csv()
        lines = text.splitlines()
        assert lines[0].startswith("# rows") and lines[1].startswith("# columns")
        assert len(lines) == 2 + 1 + 7


class TestDimensions:
    @pytest.mark.parametrize("n,k,dim,rk", [(3, 3, 3, 7), (3, 4, 9, 18), (4, 3, 4, 13)])
    def test_monotone(self, n, k, dim, rk):
        rep = feasible_dimension_monotone(n, k)
        assert rep.dimension == dim and rep.conclusive and rep.gap == 0
        assert rep.checks["rank_A"] == rk
        assert rep.checks["projected_affine_dimension"] == rep.checks["closed_form"] == dim
        obj = json.loads(rep.to_json())
        assert obj["dimension"] == str(dim) and obj["method"] == "rank-of-A"

    def test_closed_form(self):
        assert closed_form_monotone(3, 5) == 42 - 14
        assert closed_form_monotone(2, 6) == 0

    @pytest.mark.parametrize("k,basis,dim", [(3, [], 4), (4, [], 18), (3, ["312"], 3), (4, ["312"], 9)])
    def test_cycle(self, k, basis, dim):
        rep = feasible_dimension_cycle(k, [Permutation(p) for p in basis])
        assert rep.dimension == dim == rep.upper_bound


class TestProbe:
    def test_limit_vector(self):
        v = sum_limit_vector(Permutation("21"), 3)
        big = repeat_sum(200, Permutation("21"))
        assert (density_vector(big, 3) - v).norm1() <= Fraction(3, len(big))
        assert v.total() == 1

    @pytest.mark.parametrize("tau,k,upper", [("312", 3, 3), ("321", 3, 3), ("312", 4, 9), ("21", 4, 0), ("132", 4, 9), ("2413", 4, 17)])
    def test_conclusive(self, tau, k, upper):
        rep = conjecture_probe(Permutation(tau), k)
        assert rep.upper_bound == upper
        assert rep.conclusive and rep.lower_bound == upper and rep.gap == 0

    def test_budget(self):
        rep = conjecture_probe(Permutation("2413"), 4, max_size=3)
        assert not rep.conclusive and rep.dimension is None
        assert rep.lower_bound < rep.upper_bound
        assert "inconclusive" in rep.notes[0]

    def test_skew_closure_used_for_sum_decomposable(self):
        rep = conjecture_probe(Permutation("2143"), 3)
        assert rep.checks["sum"] == "skew" and rep.conclusive


class TestDistance:
    def test_certificate_bound(self):
        for m in range(3, 10):
            for s in enumerate_avoiders(m, [decreasing(3)]):
                cert = distance_certificate(s, 3, n=3)
                assert cert.squared_distance <= Fraction(18, m) ** 2
                assert cert.witness.total() == 1

    def test_restricted_graph(self):
        for s in enumerate_avoiders(7, [Permutation("312")]):
            cert = distance_certificate(s, 3, patterns=[Permutation("312")])
            assert cert.squared_distance <= Fraction(18, 7) ** 2
