"""Exact two-phase simplex over the rationals with Bland's pivot rule.

Problems are in equality form: maximize ``c.x`` subject to ``A x = b`` and
``x >= 0``. Dense tableau, desk-scale only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    x: tuple | None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows: list, rhs: list, basis: list):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int, objective: list) -> None:
        """Pivot on (r, c), updating the reduced costs ``objective`` in place."""
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            self.rows[r] = prow = [v * inv for v in prow]
            self.rhs[r] *= inv
        for i, row in enumerate(self.rows):
            if i != r:
                a = row[c]
                if a:
                    self.rows[i] = [v - a * w for v, w in zip(row, prow)]
                    self.rhs[i] -= a * self.rhs[r]
        a = objective[c]
        if a:
            objective[:] = [v - a * w for v, w in zip(objective, prow)]
        self.basis[r] = c

    def run(self, reduced: list, allowed: int) -> str:
        """Minimize with reduced costs ``reduced``; only the first ``allowed`` columns may enter."""
        while True:
            enter = next((j for j in range(allowed) if reduced[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter, reduced)


def solve(
    A: Sequence[Sequence],
    b: Sequence,
    c: Sequence | None = None,
    maximize: bool = True,
) -> LPResult:
    """Optimize ``c.x`` over ``{x >= 0 : A x = b}``; with ``c`` omitted this is a feasibility test."""
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    rows = [[frac(v) for v in r] for r in A]
    rhs = [frac(v) for v in b]
    if len(rhs) != m or any(len(r) != n for r in rows):
        raise ValueError("constraint shape mismatch")
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: artificial columns n..n+m-1
    tab = _Tableau(
        [r + [Fraction(int(i == j)) for j in range(m)] for i, r in enumerate(rows)],
        rhs,
        list(range(n, n + m)),
    )
    reduced = [-sum((r[j] for r in tab.rows), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    tab.run(reduced, n)
    infeas = sum((tab.rhs[i] for i in range(m) if tab.basis[i] >= n), Fraction(0))
    if infeas > 0:
        return LPResult(INFEASIBLE, None, None)
    # drive zero-level artificials out; drop rows that are redundant
    dummy = [Fraction(0)] * (n + m)
    keep = []
    for i in range(m):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                continue
            tab.pivot(i, col, dummy)
        keep.append(i)
    tab.rows = [tab.rows[i][:n] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]
    cost = [Fraction(0)] * n if c is None else [frac(v) for v in c]
    if len(cost) != n:
        raise ValueError("objective length mismatch")
    if maximize:
        cost = [-v for v in cost]
    # reduced costs for the current basis
    reduced = list(cost)
    for i, bcol in enumerate(tab.basis):
        a = reduced[bcol]
        if a:
            reduced = [v - a * w for v, w in zip(reduced, tab.rows[i])]
    status = tab.run(reduced, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for i, bcol in enumerate(tab.basis):
        x[bcol] = tab.rhs[i]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult(OPTIMAL, -value if maximize else value, tuple(x))
