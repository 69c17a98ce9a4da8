"""Exact rational simplex with Bland's rule.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` over Fractions. The tableau stores
each basic variable as ``x_B[i] = b[i] - sum_j A[i][j] x_N[j]`` and the
objective as ``z = v + sum_j c[j] x_N[j]``. A negative right-hand side triggers
the auxiliary-variable first phase.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from qh_alcove.errors import DimensionMismatch, Infeasible, InternalAssertion, Unbounded

logger = logging.getLogger(__name__)

Z = Fraction(0)


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


class SimplexTableau:
    def __init__(self, a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int) -> None:
        self.m = len(a)
        self.n = n
        self.A = [[Fraction(v) for v in row] for row in a]
        self.b = [Fraction(v) for v in b]
        self.c = [Z] * n
        self.v = Z
        self.nb_vars = list(range(n))
        self.b_vars = list(range(n, n + self.m))
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        row = self.A[i]
        for col in range(self.n):
            row[col] = 1 / piv if col == j else row[col] / piv
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if not f:
                continue
            target = self.A[k]
            for col in range(self.n):
                target[col] = -f / piv if col == j else target[col] - f * row[col]
            self.b[k] -= f * self.b[i]
        cj = self.c[j]
        if cj:
            self.v += cj * self.b[i]
            for col in range(self.n):
                self.c[col] = -cj / piv if col == j else self.c[col] - cj * row[col]
        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivots += 1

    def bland_primal(self) -> str:
        while True:
            entering = [(self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0]
            if not entering:
                return "optimal"
            _, j = min(entering)
            leaving = [
                (self.b[i] / self.A[i][j], self.b_vars[i], i)
                for i in range(self.m)
                if self.A[i][j] > 0
            ]
            if not leaving:
                return "unbounded"
            _, _, i = min(leaving)
            self.pivot(i, j)

    def column_of(self, var: int) -> int | None:
        try:
            return self.nb_vars.index(var)
        except ValueError:
            return None

    def row_of(self, var: int) -> int | None:
        try:
            return self.b_vars.index(var)
        except ValueError:
            return None

    def drop_column(self, j: int) -> None:
        for row in self.A:
            del row[j]
        del self.c[j]
        del self.nb_vars[j]
        self.n -= 1

    def set_objective(self, costs: Sequence[Fraction]) -> None:
        """z = sum costs[var] x_var rewritten over the current nonbasic variables."""
        self.c = [Z] * self.n
        self.v = Z
        for var, cost in enumerate(costs):
            if not cost:
                continue
            j = self.column_of(var)
            if j is not None:
                self.c[j] += cost
                continue
            i = self.row_of(var)
            if i is None:
                raise InternalAssertion(f"variable {var} lost from the tableau")
            self.v += cost * self.b[i]
            for col in range(self.n):
                self.c[col] -= cost * self.A[i][col]

    def value_of(self, var: int) -> Fraction:
        i = self.row_of(var)
        return self.b[i] if i is not None else Z


def maximize(
    c: Sequence[Fraction | int],
    a_ub: Sequence[Sequence[Fraction | int]],
    b_ub: Sequence[Fraction | int],
) -> LpSolution:
    """Maximize c.x over A x <= b, x >= 0 with exact pivots."""
    n = len(c)
    if len(a_ub) != len(b_ub):
        raise DimensionMismatch(len(a_ub), len(b_ub), "right-hand side")
    for row in a_ub:
        if len(row) != n:
            raise DimensionMismatch(n, len(row), "constraint row")
    costs = [Fraction(v) for v in c]
    rows = [[Fraction(v) for v in row] for row in a_ub]
    rhs = [Fraction(v) for v in b_ub]
    m = len(rows)

    if all(v >= 0 for v in rhs):
        tab = SimplexTableau(rows, rhs, n)
    else:
        tab = _first_phase(rows, rhs, n, m)

    tab.set_objective(costs)
    status = tab.bland_primal()
    if status == "unbounded":
        raise Unbounded()
    x = tuple(tab.value_of(var) for var in range(n))
    logger.debug("LP solved: %d variables, %d constraints, %d pivots", n, m, tab.pivots)
    return LpSolution(value=tab.v, x=x, pivots=tab.pivots)


def _first_phase(
    rows: list[list[Fraction]], rhs: list[Fraction], n: int, m: int
) -> SimplexTableau:
    aux = n + m
    tab = SimplexTableau([row + [Fraction(-1)] for row in rows], rhs, n + 1)
    # slacks keep ids n..n+m-1; the auxiliary variable takes n+m
    tab.b_vars = list(range(n, n + m))
    tab.nb_vars[n] = aux
    tab.c[n] = Fraction(-1)
    worst = min(range(m), key=lambda i: (rhs[i], i))
    tab.pivot(worst, n)
    tab.bland_primal()
    if tab.v < 0:
        raise Infeasible()

    i = tab.row_of(aux)
    if i is not None:
        j = next((col for col in range(tab.n) if tab.A[i][col]), None)
        if j is None:
            raise InternalAssertion("auxiliary variable cannot leave the basis")
        tab.pivot(i, j)
    col = tab.column_of(aux)
    if col is None:
        raise InternalAssertion("auxiliary variable still basic after first phase")
    tab.drop_column(col)
    return tab
