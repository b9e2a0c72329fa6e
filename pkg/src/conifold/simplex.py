"""Dense two-phase simplex over exact rationals.

Solves ``maximize c.x  subject to  A x = b, x >= 0`` with Bland's rule, so
it always terminates. Alongside the primal solution it returns dual
multipliers ``y`` (one per equality row):

* ``optimal``: ``A^T y >= c`` componentwise and ``b.y`` equals the optimum;
* ``infeasible``: a Farkas ray, ``A^T y <= 0`` and ``b.y > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] = field(default_factory=list)
    objective: Fraction | None = None
    dual: list[Fraction] = field(default_factory=list)
    pivots: int = 0


class _Tableau:
    def __init__(self, A, b):
        self.m = len(A)
        self.n = len(A[0]) if self.m else 0
        self.sign = [ONE if bi >= 0 else -ONE for bi in b]
        # real columns then one artificial per row; artificials hold B^{-1}
        self.rows = []
        for i in range(self.m):
            s = self.sign[i]
            art = [ONE if k == i else ZERO for k in range(self.m)]
            self.rows.append([s * Fraction(a) for a in A[i]] + art + [s * Fraction(b[i])])
        self.basis = [self.n + i for i in range(self.m)]
        self.pivots = 0

    @property
    def width(self):
        return self.n + self.m

    def rhs(self, r):
        return self.rows[r][-1]

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            self.rows[r] = row = [v / p for v in row]
        for k in range(self.m):
            if k == r:
                continue
            f = self.rows[k][j]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], row)]
        self.basis[r] = j
        self.pivots += 1

    def reduced_costs(self, cost):
        out = []
        for j in range(self.width):
            z = sum((cost[self.basis[r]] * self.rows[r][j] for r in range(self.m)), ZERO)
            out.append(cost[j] - z)
        return out

    def dual(self, cost):
        # y^T = c_B^T B^{-1}, read off the artificial columns; undo row flips
        y = []
        for i in range(self.m):
            col = self.n + i
            v = sum((cost[self.basis[r]] * self.rows[r][col] for r in range(self.m)), ZERO)
            y.append(v * self.sign[i])
        return y

    def run(self, cost, allowed):
        """Maximize ``cost`` over the current basis. Returns False if unbounded."""
        while True:
            rc = self.reduced_costs(cost)
            entering = next((j for j in range(self.width) if allowed[j] and rc[j] > 0), None)
            if entering is None:
                return True
            best = None
            for r in range(self.m):
                a = self.rows[r][entering]
                if a > 0:
                    ratio = self.rhs(r) / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def solution(self):
        x = [ZERO] * self.n
        for r, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.rhs(r)
        return x


def solve_lp(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    c = [Fraction(v) for v in c]
    if not A_eq:
        raise ValueError("at least one equality constraint is required")
    if any(len(row) != len(c) for row in A_eq) or len(b_eq) != len(A_eq):
        raise ValueError("inconsistent LP dimensions")
    t = _Tableau(A_eq, b_eq)
    n, m = t.n, t.m

    # phase 1: maximize -(sum of artificials)
    phase1 = [ZERO] * n + [-ONE] * m
    t.run(phase1, [True] * (n + m))
    infeasibility = sum((t.rhs(r) for r in range(m) if t.basis[r] >= n), ZERO)
    if infeasibility > 0:
        y = t.dual(phase1)
        return LPResult("infeasible", dual=[-v for v in y], pivots=t.pivots)

    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if t.basis[r] >= n:
            j = next((j for j in range(n) if t.rows[r][j] != 0), None)
            if j is not None:
                t.pivot(r, j)

    phase2 = c + [ZERO] * m
    if not t.run(phase2, [True] * n + [False] * m):
        return LPResult("unbounded", pivots=t.pivots)
    x = t.solution()
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LPResult("optimal", x=x, objective=value, dual=t.dual(phase2), pivots=t.pivots)
