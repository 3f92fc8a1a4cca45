from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import avoiders_naive, contains_naive, std, windows
from patregion.errors import CapExceeded, PatternError
from patregion.permcore import (
    Permutation,
    append,
    avoids,
    avoids_all,
    begin,
    complement,
    consecutive_occurrences,
    contains,
    coordinate_order,
    count_avoiders_rsk,
    decreasing,
    density_vector,
    direct_sum,
    end,
    enumerate_avoiders,
    hook_length_count,
    inverse,
    is_skew_indecomposable,
    is_sum_indecomposable,
    occurrences,
    pattern_at,
    repeat_skew_sum,
    repeat_sum,
    reverse,
    rsk_shape,
    skew_sum,
    standardize,
)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(Permutation)


class TestParsing:
    def test_forms(self):
        assert Permutation("2143") == Permutation("2 1 4 3") == Permutation("[2,1,4,3]") == (2, 1, 4, 3)
        assert Permutation("10 1 2 3 4 5 6 7 8 9")[0] == 10

    def test_rejects(self):
        for bad in ["1 1", "0 1", "1234567890", "a b", "13"]:
            with pytest.raises(PatternError):
                Permutation(bad)

    def test_text_round_trip(self):
        p = Permutation("2 4 6 3 7 1 8 5")
        assert Permutation(str(p)) == p
        assert p.to_json() == [2, 4, 6, 3, 7, 1, 8, 5]


class TestStandardize:
    def test_examples(self):
        assert standardize((4, 3, 8)) == (2, 1, 3)
        assert standardize((1, 2, 3)) == (1, 2, 3)
        assert standardize((5, 1, 9, 6)) == (2, 1, 4, 3)

    def test_duplicates(self):
        with pytest.raises(PatternError):
            standardize((1, 1))

    @given(st.lists(st.integers(-100, 100), unique=True, min_size=1, max_size=10))
    def test_matches_comparison_count(self, values):
        expected = tuple(1 + sum(w < v for w in values) for v in values)
        assert standardize(values) == expected

    @given(perms)
    def test_idempotent(self, p):
        assert standardize(p) == p


class TestPatterns:
    def test_pattern_at(self):
        assert pattern_at(Permutation("24637185"), {2, 4, 7}) == (2, 1, 3)
        assert pattern_at(Permutation("1532467"), {1, 2, 3, 5}) == (1, 4, 2, 3)
        with pytest.raises(PatternError):
            pattern_at((1, 2), {3})

    @given(perms, st.data())
    def test_nested_selection(self, sigma, data):
        n = len(sigma)
        idx = sorted(data.draw(st.sets(st.integers(1, n), min_size=1)))
        inner = sorted(data.draw(st.sets(st.integers(1, len(idx)), min_size=1)))
        assert pattern_at(pattern_at(sigma, idx), inner) == pattern_at(sigma, [idx[j - 1] for j in inner])

    def test_begin_end(self):
        assert end(Permutation("24351"), 3) == (2, 3, 1)
        assert begin(Permutation("1243756"), 3) == (1, 2, 3)
        s = Permutation("3142")
        assert begin(s, 4) == s
        with pytest.raises(PatternError):
            end(s, 5)


class TestContainment:
    def test_examples(self):
        assert contains(Permutation("1532467"), Permutation("1423"))
        assert avoids(Permutation("1243756"), Permutation("321"))
        assert contains((3, 2, 1), (2, 1))

    def test_against_oracle_to_size_7(self):
        taus = [Permutation(t) for t in ("312", "321", "2413", "1342")]
        for n in range(1, 8):
            for s in permutations(range(1, n + 1)):
                for t in taus:
                    assert contains(s, t) == contains_naive(s, t)

    @settings(max_examples=40)
    @given(st.permutations(list(range(1, 9))), st.sampled_from(["213", "2413", "4321", "12"]))
    def test_size_8_samples(self, s, t):
        assert contains(s, Permutation(t)) == contains_naive(s, Permutation(t))


class TestEnumeration:
    def test_examples(self):
        assert len(enumerate_avoiders(3, [Permutation("312")])) == 5
        mono = [Permutation(p) for p in ("132", "213", "231", "312")]
        assert enumerate_avoiders(3, mono) == ((1, 2, 3), (3, 2, 1))
        assert len(enumerate_avoiders(4, [Permutation("321")])) == 14

    @pytest.mark.parametrize("basis", [["312"], ["321"], ["2413", "3142"], ["123", "321"], []])
    def test_matches_oracle(self, basis):
        b = [Permutation(p) for p in basis]
        for m in range(1, 7):
            assert list(enumerate_avoiders(m, b)) == avoiders_naive(m, b)

    def test_catalan_agreement(self):
        for k in range(1, 9):
            a = len(enumerate_avoiders(k, [Permutation("312")]))
            assert a == len(enumerate_avoiders(k, [Permutation("321")])) == count_avoiders_rsk(3, k)

    def test_cap_refuses(self):
        with pytest.raises(CapExceeded):
            enumerate_avoiders(8, [], cap=100)

    def test_size_check(self):
        with pytest.raises(PatternError):
            enumerate_avoiders(-1, [])


class TestRSK:
    def test_examples(self):
        assert count_avoiders_rsk(3, 4) == 14
        assert all(count_avoiders_rsk(2, k) == 1 for k in range(1, 8))
        assert count_avoiders_rsk(4, 3) == 6

    def test_hook_length(self):
        assert hook_length_count((2, 1)) == 2
        assert hook_length_count((3, 2)) == 5

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_against_enumeration(self, n):
        for k in range(1, 8):
            assert count_avoiders_rsk(n, k) == len(enumerate_avoiders(k, [decreasing(n)]))

    def test_shape_is_longest_runs(self):
        for s in permutations(range(1, 6)):
            shape = rsk_shape(s)
            longest_inc = max(len(c) for r in range(1, 6) for c in _subseqs(s, r) if list(c) == sorted(c))
            assert shape[0] == longest_inc


def _subseqs(s, r):
    from itertools import combinations

    return combinations(s, r)


class TestSums:
    def test_examples(self):
        assert direct_sum((2, 1), (1,)) == (2, 1, 3)
        assert skew_sum((2, 1), (1,)) == (3, 2, 1)
        assert repeat_sum(3, (1,)) == (1, 2, 3)
        assert repeat_skew_sum(2, (1, 2)) == (3, 4, 1, 2)
        with pytest.raises(PatternError):
            repeat_sum(0, (1,))

    def test_append(self):
        assert append((1, 3, 2), 2) == (1, 4, 3, 2)
        assert append((1, 2), 1) == (2, 3, 1)
        s = Permutation("3142")
        assert append(s, 5) == direct_sum(s, (1,))
        with pytest.raises(PatternError):
            append(s, 6)

    @given(perms, st.data())
    def test_append_is_standardized_half_value(self, s, data):
        ell = data.draw(st.integers(1, len(s) + 1))
        assert append(s, ell) == std(list(s) + [ell - 0.5])

    @given(perms)
    def test_symmetries(self, s):
        assert reverse(reverse(s)) == s
        assert complement(complement(s)) == s
        assert inverse(inverse(s)) == s
        assert all(inverse(s)[s[i] - 1] == i + 1 for i in range(len(s)))

    def test_indecomposability(self):
        assert is_sum_indecomposable((3, 1, 2))
        assert not is_sum_indecomposable((2, 1, 3))
        assert is_skew_indecomposable((1, 2, 3))
        assert not is_skew_indecomposable((3, 2, 1))


class TestDensities:
    def test_examples(self):
        s = Permutation("1532467")
        assert consecutive_occurrences((3, 2, 1), s) == 1
        assert consecutive_occurrences((1, 4, 2, 3), s) == 0
        assert occurrences((1, 4, 2, 3), s) >= 1

    def test_coordinate_order(self):
        assert coordinate_order(3) == ((1, 2, 3), (2, 3, 1), (3, 1, 2), (2, 1, 3), (1, 3, 2), (3, 2, 1))
        assert list(coordinate_order(4)) == sorted(permutations(range(1, 5)))

    @given(perms, st.integers(1, 5))
    def test_vector_sum_and_counts(self, s, k):
        if k > len(s):
            with pytest.raises(PatternError):
                density_vector(s, k)
            return
        v = density_vector(s, k)
        assert all(x >= 0 for x in v.values)
        assert v.total() == Fraction(len(s) - k + 1, len(s))
        w = windows(s, k)
        for p, x in v.items():
            assert x == Fraction(w.count(tuple(p)), len(s))


def test_sum_mixing_bound():
    """Direct-sum mixing of two class members moves densities by at most O(1/size)."""
    from itertools import product

    members = [Permutation(p) for p in ("132", "2143", "12", "21354", "1", "213")]
    k = 3
    order = coordinate_order(k)
    worst_ratio = Fraction(0)
    for s1, s2 in product(members, repeat=2):
        for s, t in [(1, 1), (1, 2), (2, 1), (3, 1)]:
            tau = direct_sum(repeat_sum(s * len(s2), s1), repeat_sum(t * len(s1), s2))
            assert avoids(tau, (3, 1, 2))
            if len(s1) < k or len(s2) < k:
                continue
            v1, v2 = density_vector(s1, k, order), density_vector(s2, k, order)
            lam = Fraction(s, s + t)
            mix = v1 * lam + v2 * (1 - lam)
            err = (density_vector(tau, k, order) - mix).norm1()
            bound = 2 * k * (Fraction(1, len(s1)) + Fraction(1, len(s2)))
            tighter = (k - 1) * (Fraction(1, len(s1)) + Fraction(1, len(s2)))
            assert err <= tighter <= bound
            worst_ratio = max(worst_ratio, err / tighter)
    assert worst_ratio > 0


def test_avoids_all():
    assert avoids_all((2, 1, 3), [(1, 2, 3), (2, 1)]) is False
    assert avoids_all((1, 2, 3), [(2, 1), (3, 1, 2)]) is True
