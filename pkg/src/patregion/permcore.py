"""Permutations, patterns, avoidance and consecutive-pattern statistics.

Permutations are one-line tuples of ``1..n``. Index sets passed to
:func:`pattern_at` are 1-based, matching the usual combinatorial notation.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, PatternError
from .geometry.linalg import RatVector

__all__ = [
    "Permutation", "PatternSet", "DensityVector",
    "standardize", "pattern_at", "begin", "end",
    "contains", "avoids", "avoids_all", "enumerate_avoiders", "count_avoiders_rsk",
    "direct_sum", "skew_sum", "repeat_sum", "repeat_skew_sum", "append", "decreasing", "increasing",
    "occurrences", "consecutive_occurrences", "density_vector", "coordinate_order",
    "reverse", "complement", "inverse", "is_sum_indecomposable", "is_skew_indecomposable",
    "rsk_shape", "partitions", "hook_length_count", "pattern_set",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 2_000_000


class Permutation(tuple):
    """A permutation of ``1..n`` in one-line notation.

    Accepts any iterable of ints, a space/comma separated string, a JSON array
    string, or (for n <= 9) a compact digit string like ``"2143"``.
    """

    __slots__ = ()

    def __new__(cls, values=()):
        if isinstance(values, str):
            values = _parse_text(values)
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise PatternError(f"{values!r} is not a permutation of 1..{len(values)}")
        return tuple.__new__(cls, values)

    @classmethod
    def _trusted(cls, values) -> "Permutation":
        return tuple.__new__(cls, values)

    @property
    def size(self) -> int:
        return len(self)

    def __str__(self):
        return " ".join(map(str, self))

    def __repr__(self):
        return f"Permutation('{self}')"

    def compact(self) -> str:
        """Digit-string form; only unambiguous for sizes up to 9."""
        if len(self) > 9:
            return str(self)
        return "".join(map(str, self))

    def to_json(self) -> list[int]:
        return list(self)


def _parse_text(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    if re.fullmatch(r"\d+", text):
        if len(text) > 9:
            raise PatternError("compact digit strings are only accepted up to size 9")
        return [int(c) for c in text]
    parts = [p for p in re.split(r"[\s,]+", text) if p]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise PatternError(f"cannot parse permutation from {text!r}") from None


PatternSet = frozenset


def pattern_set(patterns: Iterable) -> frozenset:
    """Normalise an iterable of permutations (or their text forms)."""
    return frozenset(p if isinstance(p, Permutation) else Permutation(p) for p in patterns)


def _std(values: Sequence) -> Permutation:
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank_, i in enumerate(order, 1):
        out[i] = rank_
    return Permutation._trusted(out)


def standardize(values: Sequence) -> Permutation:
    """The permutation with the same relative order as ``values``."""
    values = list(values)
    if len(set(values)) != len(values):
        raise PatternError(f"cannot standardize {values!r}: repeated values")
    return _std(values)


def pattern_at(sigma: Sequence[int], indices: Iterable[int]) -> Permutation:
    """Pattern induced by the (1-based) positions in ``indices``."""
    idx = sorted(indices)
    if not idx:
        raise PatternError("empty index set")
    if idx[0] < 1 or idx[-1] > len(sigma) or len(set(idx)) != len(idx):
        raise PatternError(f"index set {idx} out of range for size {len(sigma)}")
    return _std([sigma[i - 1] for i in idx])


def begin(sigma: Sequence[int], k: int) -> Permutation:
    if not 1 <= k <= len(sigma):
        raise PatternError(f"k={k} out of range for size {len(sigma)}")
    return _std(sigma[:k])


def end(sigma: Sequence[int], k: int) -> Permutation:
    if not 1 <= k <= len(sigma):
        raise PatternError(f"k={k} out of range for size {len(sigma)}")
    return _std(sigma[len(sigma) - k:])


def contains(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """True iff some (not necessarily consecutive) subsequence of ``sigma`` is order-isomorphic to ``tau``."""
    k, n = len(tau), len(sigma)
    if k == 0:
        return True
    if k > n:
        return False
    # chosen[t] = value of sigma matched to tau position t
    chosen = [0] * k

    def extend(t: int, start: int) -> bool:
        if t == k:
            return True
        want = tau[t]
        for i in range(start, n - (k - t) + 1):
            v = sigma[i]
            ok = True
            for s in range(t):
                if (tau[s] < want) != (chosen[s] < v):
                    ok = False
                    break
            if ok:
                chosen[t] = v
                if extend(t + 1, i + 1):
                    return True
        return False

    return extend(0, 0)


def avoids(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    return not contains(sigma, tau)


def avoids_all(sigma: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains(sigma, t) for t in patterns)


def _contains_through(sigma: Sequence[int], pos: int, tau: Sequence[int]) -> bool:
    """Does ``sigma`` contain ``tau`` with tau's maximum placed at index ``pos``?"""
    k = len(tau)
    top = tau.index(k)
    before, after = top, k - 1 - top
    if before > pos or after > len(sigma) - 1 - pos:
        return False
    left = range(pos)
    right = range(pos + 1, len(sigma))
    for lo in combinations(left, before):
        for hi in combinations(right, after):
            idx = lo + (pos,) + hi
            if _std([sigma[i] for i in idx]) == tau:
                return True
    return False


@lru_cache(maxsize=None)
def _avoiders(m: int, patterns: frozenset, cap: int) -> tuple:
    if m == 0:
        return (Permutation._trusted(()),)
    if any(len(b) == 0 for b in patterns):
        return ()
    smaller = _avoiders(m - 1, patterns, cap)
    out = []
    relevant = [b for b in patterns if len(b) <= m]
    for tau in smaller:
        for pos in range(m):
            sigma = tau[:pos] + (m,) + tau[pos:]
            if any(_contains_through(sigma, pos, b) for b in relevant):
                continue
            out.append(Permutation._trusted(sigma))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} avoiders of size {m}")
    out.sort()
    return tuple(out)


def enumerate_avoiders(m: int, patterns: Iterable = (), cap: int = DEFAULT_ENUMERATION_CAP) -> tuple:
    """All permutations of size ``m`` avoiding every pattern, in lexicographic order.

    Generation inserts the maximum into each avoider of size ``m - 1`` and only
    re-checks occurrences that use the new entry.
    """
    if m < 0:
        raise PatternError("size must be non-negative")
    pats = pattern_set(patterns)
    return _avoiders(m, pats, cap)


def partitions(k: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[tuple]:
    """Integer partitions of ``k`` (weakly decreasing), optionally bounded."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in partitions(k - first, rest_parts, first):
            yield (first,) + rest


def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard Young tableaux of the given shape."""
    n = sum(shape)
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = prod(shape[i] - j + conj[j] - i - 1 for i in range(len(shape)) for j in range(shape[i]))
    return factorial(n) // hooks


def count_avoiders_rsk(n: int, k: int) -> int:
    """|Av_k(n...1)| as the sum of squared tableau counts over shapes with < n rows."""
    if n < 2 or k < 1:
        raise PatternError("need n >= 2 and k >= 1")
    return sum(hook_length_count(lam) ** 2 for lam in partitions(k, max_parts=n - 1))


def rsk_shape(sigma: Sequence[int]) -> tuple:
    """Shape of the insertion tableau under Schensted row insertion."""
    rows: list[list[int]] = []
    for x in sigma:
        for row in rows:
            bump = next((i for i, y in enumerate(row) if y > x), None)
            if bump is None:
                row.append(x)
                x = None
                break
            row[bump], x = x, row[bump]
        if x is not None:
            rows.append([x])
    return tuple(len(r) for r in rows)


def direct_sum(tau: Sequence[int], sigma: Sequence[int]) -> Permutation:
    m = len(tau)
    return Permutation._trusted(tuple(tau) + tuple(v + m for v in sigma))


def skew_sum(tau: Sequence[int], sigma: Sequence[int]) -> Permutation:
    n = len(sigma)
    return Permutation._trusted(tuple(v + n for v in tau) + tuple(sigma))


def repeat_sum(copies: int, sigma: Sequence[int]) -> Permutation:
    if copies < 1:
        raise PatternError("need at least one copy")
    n = len(sigma)
    return Permutation._trusted(tuple(v + c * n for c in range(copies) for v in sigma))


def repeat_skew_sum(copies: int, sigma: Sequence[int]) -> Permutation:
    if copies < 1:
        raise PatternError("need at least one copy")
    n = len(sigma)
    return Permutation._trusted(tuple(v + (copies - 1 - c) * n for c in range(copies) for v in sigma))


def increasing(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(1, n + 1)))


def decreasing(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(n, 0, -1)))


def append(sigma: Sequence[int], value: int) -> Permutation:
    """Append a final entry equal to ``value``, shifting entries >= value up by one."""
    n = len(sigma)
    if not 1 <= value <= n + 1:
        raise PatternError(f"appended value {value} not in [1, {n + 1}]")
    return Permutation._trusted(tuple(v + 1 if v >= value else v for v in sigma) + (value,))


def reverse(sigma: Sequence[int]) -> Permutation:
    return Permutation._trusted(tuple(reversed(sigma)))


def complement(sigma: Sequence[int]) -> Permutation:
    n = len(sigma)
    return Permutation._trusted(tuple(n + 1 - v for v in sigma))


def inverse(sigma: Sequence[int]) -> Permutation:
    out = [0] * len(sigma)
    for i, v in enumerate(sigma, 1):
        out[v - 1] = i
    return Permutation._trusted(out)


def is_sum_indecomposable(sigma: Sequence[int]) -> bool:
    """No proper prefix of ``sigma`` consists of exactly its smallest values."""
    top = 0
    for i, v in enumerate(sigma[:-1], 1):
        top = max(top, v)
        if top == i:
            return False
    return True


def is_skew_indecomposable(sigma: Sequence[int]) -> bool:
    return is_sum_indecomposable(complement(sigma))


def occurrences(pi: Sequence[int], sigma: Sequence[int]) -> int:
    """Number of index sets of ``sigma`` inducing ``pi``."""
    k = len(pi)
    pi = tuple(pi)
    return sum(1 for idx in combinations(range(len(sigma)), k) if _std([sigma[i] for i in idx]) == pi)


def window_patterns(sigma: Sequence[int], k: int) -> list:
    """Patterns of all length-``k`` windows of ``sigma``, left to right."""
    return [_std(sigma[i:i + k]) for i in range(len(sigma) - k + 1)]


def consecutive_occurrences(pi: Sequence[int], sigma: Sequence[int]) -> int:
    pi = tuple(pi)
    return sum(1 for p in window_patterns(sigma, len(pi)) if p == pi)


_DRAWING_ORDER_3 = ((1, 2, 3), (2, 3, 1), (3, 1, 2), (2, 1, 3), (1, 3, 2), (3, 2, 1))


def coordinate_order(k: int) -> tuple:
    """Fixed coordinate order on patterns of size ``k``.

    Size 3 uses the order (123, 231, 312, 213, 132, 321) customary for
    drawing the size-3 regions; other sizes are lexicographic.
    """
    if k == 3:
        return tuple(Permutation._trusted(p) for p in _DRAWING_ORDER_3)
    return tuple(Permutation._trusted(p) for p in permutations(range(1, k + 1)))


DensityVector = RatVector


def density_vector(sigma: Sequence[int], k: int, order: Sequence | None = None) -> RatVector:
    """Proportions of consecutive patterns of size ``k``; the denominator is ``len(sigma)``."""
    n = len(sigma)
    if not 1 <= k <= n:
        raise PatternError(f"k={k} out of range for size {n}")
    order = coordinate_order(k) if order is None else tuple(order)
    counts: dict = {}
    for p in window_patterns(sigma, k):
        counts[p] = counts.get(p, 0) + 1
    return RatVector(order, tuple(Fraction(counts.get(p, 0), n) for p in order))
