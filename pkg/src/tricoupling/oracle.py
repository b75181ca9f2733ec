"""Exact feasibility oracle for constant-sum couplings.

Decides whether pi1, pi2, pi3 admit a joint law supported on the plane
a + b + c == s by solving the phase-1 linear program

    minimise  sum(art)
    subject   A q + art == rhs,  q, art >= 0

over q(a, b) (c is implied), with exact Fraction pivots and Bland's rule.
A zero optimum yields a witness coupling.  A positive optimum yields a
Farkas vector y with y A >= 0 and y . rhs < 0, checkable on its own.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .couple import Coupling
from .errors import InstanceError
from .exactdist import Dist

Row = tuple[str, int]


class Verdict(enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class FeasibilityResult:
    verdict: Verdict
    witness: Coupling | None = None
    # Dual vector keyed by constraint label ("pi1", a) / ("pi2", b) / ("pi3", c).
    certificate: dict[Row, Fraction] | None = None

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE


def _variables(p: int, s: int) -> list[tuple[int, int, int]]:
    return [(a, b, s - a - b) for a in range(p) for b in range(p) if 0 <= s - a - b < p]


def constraint_system(pi1: Dist, pi2: Dist, pi3: Dist, s: int):
    """Rows, columns, sparse matrix and right-hand side of the marginal equations.

    Every row is kept here; :func:`compatible_oracle` drops the redundant one.
    """
    p = pi1.p
    cols = _variables(p, s)
    rows: list[Row] = [(name, v) for name in ("pi1", "pi2", "pi3") for v in range(p)]
    rhs = {(name, v): d[v] for name, d in (("pi1", pi1), ("pi2", pi2), ("pi3", pi3)) for v in range(p)}
    # Column j has a 1 in the rows of its three coordinates.
    col_rows = [(("pi1", a), ("pi2", b), ("pi3", c)) for a, b, c in cols]
    return rows, cols, col_rows, rhs


class _Tableau:
    """Dense Fraction tableau for phase 1, minimising the artificial sum."""

    def __init__(self, matrix: list[list[Fraction]], rhs: list[Fraction]):
        m, n = len(matrix), len(matrix[0]) if matrix else 0
        self.m, self.n = m, n
        # Columns 0..n-1 structural, n..n+m-1 artificial.
        self.rows = [row + [Fraction(int(i == k)) for k in range(m)] for i, row in enumerate(matrix)]
        self.b = list(rhs)
        self.basis = [n + i for i in range(m)]
        width = n + m
        # Reduced costs: cost 1 on artificials, minus the sum of all rows.
        self.cost = [Fraction(0)] * width
        for j in range(n):
            self.cost[j] = -sum((r[j] for r in self.rows), Fraction(0))

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        if piv != 1:
            self.rows[i] = row = [x / piv for x in row]
            self.b[i] /= piv
        nz = [k for k, x in enumerate(row) if x]
        for r, other in enumerate(self.rows):
            f = other[j]
            if r != i and f:
                for k in nz:
                    other[k] -= f * row[k]
                self.b[r] -= f * self.b[i]
        f = self.cost[j]
        if f:
            for k in nz:
                self.cost[k] -= f * row[k]
        self.basis[i] = j

    def solve(self) -> None:
        while True:
            # Bland: lowest-index improving column, then lowest-index leaving variable.
            entering = next((j for j, c in enumerate(self.cost) if c < 0), None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.b[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            assert best is not None, "phase-1 objective is bounded below by zero"
            self.pivot(best[1], entering)

    @property
    def value(self) -> Fraction:
        return sum((b for b, j in zip(self.b, self.basis) if j >= self.n), Fraction(0))

    def duals(self) -> list[Fraction]:
        # Artificial k has cost 1, so its reduced cost is 1 - u_k.
        return [1 - self.cost[self.n + k] for k in range(self.m)]


def compatible_oracle(pi1: Dist, pi2: Dist, pi3: Dist, s: int) -> FeasibilityResult:
    """Decide exactly whether the three laws admit a coupling with X1 + X2 + X3 == s."""
    p = pi1.p
    if pi2.p != p or pi3.p != p:
        raise InstanceError("BAD_INPUT", f"alphabet mismatch {pi1.p}, {pi2.p}, {pi3.p}")
    if not 0 <= s <= 3 * (p - 1):
        raise InstanceError("BAD_INPUT", f"s={s} outside [0, {3 * (p - 1)}]")

    rows, cols, col_rows, rhs = constraint_system(pi1, pi2, pi3, s)
    # Total mass is counted by each family; the last pi3 row is implied.
    kept = rows[:-1]
    index = {r: i for i, r in enumerate(kept)}
    matrix = [[Fraction(0)] * len(cols) for _ in kept]
    for j, touched in enumerate(col_rows):
        for r in touched:
            if r in index:
                matrix[index[r]][j] = Fraction(1)
    tab = _Tableau(matrix, [rhs[r] for r in kept])
    tab.solve()

    if tab.value == 0:
        values = [Fraction(0)] * len(cols)
        for i, j in enumerate(tab.basis):
            if j < len(cols):
                values[j] = tab.b[i]
        witness = Coupling(p, s, {cols[j]: v for j, v in enumerate(values) if v})
        return FeasibilityResult(Verdict.FEASIBLE, witness=witness)

    u = tab.duals()
    cert = {r: Fraction(0) for r in rows}
    for r, val in zip(kept, u):
        cert[r] = -val
    return FeasibilityResult(Verdict.INFEASIBLE, certificate=cert)


def check_certificate(result: FeasibilityResult, pi1: Dist, pi2: Dist, pi3: Dist, s: int) -> bool:
    """True iff ``y A >= 0`` on every column and ``y . rhs < 0``, exactly."""
    if result.verdict is not Verdict.INFEASIBLE:
        raise InstanceError("WRONG_VARIANT", "only INFEASIBLE results carry a certificate")
    return certificate_valid(result.certificate or {}, pi1, pi2, pi3, s)


def certificate_valid(y: dict[Row, Fraction], pi1: Dist, pi2: Dist, pi3: Dist, s: int) -> bool:
    if pi2.p != pi1.p or pi3.p != pi1.p:
        return False
    rows, _, col_rows, rhs = constraint_system(pi1, pi2, pi3, s)
    if set(y) - set(rows):
        return False
    if any(sum((y.get(r, 0) for r in touched), Fraction(0)) < 0 for touched in col_rows):
        return False
    return sum((y.get(r, 0) * rhs[r] for r in rows), Fraction(0)) < 0
