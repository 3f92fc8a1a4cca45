"""Exact rational vectors and matrices with labelled coordinates.

Entries are :class:`fractions.Fraction` (always in lowest terms). Rank is
computed by fraction-free (Bareiss) elimination on an integer rescaling of
the rows, so no floating point is ever involved.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Hashable, Iterable, Sequence


def frac(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact computations")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatVector:
    """A vector of exact rationals indexed by hashable labels."""

    labels: tuple
    values: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        values = tuple(frac(v) for v in self.values)
        if len(labels) != len(values):
            raise ValueError("labels and values differ in length")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, labels: Sequence, mapping) -> "RatVector":
        return cls(tuple(labels), tuple(mapping.get(lab, 0) for lab in labels))

    @classmethod
    def zeros(cls, labels: Sequence) -> "RatVector":
        return cls(tuple(labels), (Fraction(0),) * len(labels))

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, label) -> Fraction:
        return self.values[self.index[label]]

    def get(self, label, default=Fraction(0)) -> Fraction:
        i = self.index.get(label)
        return default if i is None else self.values[i]

    def items(self):
        return zip(self.labels, self.values)

    def as_dict(self) -> dict:
        return dict(self.items())

    def _check(self, other: "RatVector"):
        if self.labels != other.labels:
            raise ValueError("label mismatch between vectors")

    def __add__(self, other: "RatVector") -> "RatVector":
        self._check(other)
        return RatVector(self.labels, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._check(other)
        return RatVector(self.labels, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, scalar) -> "RatVector":
        s = frac(scalar)
        return RatVector(self.labels, tuple(s * a for a in self.values))

    __rmul__ = __mul__

    def dot(self, other: "RatVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.values, other.values)), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def norm1(self) -> Fraction:
        return sum((abs(a) for a in self.values), Fraction(0))

    def norm2_squared(self) -> Fraction:
        return sum((a * a for a in self.values), Fraction(0))

    def relabel(self, labels: Sequence) -> "RatVector":
        """Reindex onto ``labels``; labels absent here get 0.

        Raises if a non-zero coordinate would be dropped.
        """
        labels = tuple(labels)
        keep = set(labels)
        for lab, v in self.items():
            if v and lab not in keep:
                raise ValueError(f"non-zero coordinate {lab!r} has no target label")
        return RatVector(labels, tuple(self.get(lab) for lab in labels))

    def to_strings(self) -> list[str]:
        return [format_rational(v) for v in self.values]


@dataclass(frozen=True)
class RatMatrix:
    """Dense exact matrix with row and column labels."""

    row_labels: tuple
    col_labels: tuple
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(frac(v) for v in r) for r in self.rows)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        object.__setattr__(self, "rows", rows)
        if len(rows) != len(self.row_labels):
            raise ValueError("row label count does not match row count")
        for r in rows:
            if len(r) != len(self.col_labels):
                raise ValueError("ragged matrix or column label mismatch")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @cached_property
    def _row_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.row_labels)}

    @cached_property
    def _col_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.col_labels)}

    def entry(self, row_label, col_label) -> Fraction:
        return self.rows[self._row_index[row_label]][self._col_index[col_label]]

    def row(self, label) -> RatVector:
        return RatVector(self.col_labels, self.rows[self._row_index[label]])

    def column(self, label) -> RatVector:
        j = self._col_index[label]
        return RatVector(self.row_labels, tuple(r[j] for r in self.rows))

    def submatrix(self, row_labels: Iterable, col_labels: Iterable) -> "RatMatrix":
        row_labels, col_labels = tuple(row_labels), tuple(col_labels)
        ri = [self._row_index[r] for r in row_labels]
        ci = [self._col_index[c] for c in col_labels]
        return RatMatrix(row_labels, col_labels, tuple(tuple(self.rows[i][j] for j in ci) for i in ri))

    def stack(self, other: "RatMatrix") -> "RatMatrix":
        if self.col_labels != other.col_labels:
            raise ValueError("cannot stack matrices with different columns")
        return RatMatrix(self.row_labels + other.row_labels, self.col_labels, self.rows + other.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.col_labels, self.row_labels, tuple(zip(*self.rows)) if self.rows else ())

    def apply(self, x: RatVector) -> RatVector:
        """Matrix-vector product; ``x`` must be labelled by the columns."""
        x = x.relabel(self.col_labels)
        return RatVector(
            self.row_labels,
            tuple(sum((a * b for a, b in zip(r, x.values) if a), Fraction(0)) for r in self.rows),
        )

    def rank(self) -> int:
        return rank(self.rows)

    def is_upper_triangular(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.rows) for j, v in enumerate(r) if j < i)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def to_csv(self, label=str, header_rows: Sequence[Sequence[str]] = ()) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for extra in header_rows:
            w.writerow(list(extra))
        w.writerow([""] + [label(c) for c in self.col_labels])
        for lab, r in zip(self.row_labels, self.rows):
            w.writerow([label(lab)] + [format_rational(v) for v in r])
        return buf.getvalue()


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [frac(v) for v in r]
        m = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * m) for v in r])
    return out


def rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals by fraction-free elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            for j in range(c + 1, ncols):
                # exact: Bareiss divisibility
                row[j] = (row[j] * p - a * prow[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def affine_dimension(points: Sequence) -> int:
    """Dimension of the affine hull of a non-empty list of vectors."""
    pts = [p.values if isinstance(p, RatVector) else tuple(frac(v) for v in p) for p in points]
    if not pts:
        raise ValueError("affine_dimension needs at least one point")
    base = pts[0]
    return rank([tuple(a - b for a, b in zip(p, base)) for p in pts[1:]])


def identity(labels: Sequence[Hashable]) -> RatMatrix:
    labels = tuple(labels)
    n = len(labels)
    return RatMatrix(labels, labels, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
