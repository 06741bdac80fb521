"""Exact rational dense linear algebra and an exact simplex LP solver.

Everything here is integer/Fraction arithmetic; no floating point is used
anywhere.  The simplex solver uses Bland's pivoting rule, so solves are
deterministic and never cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

# Arbitrary-precision rational numbers.  Fraction already maintains the
# canonical form we need: positive denominator, gcd(|num|, den) = 1.
Rational = Fraction

LE = "<="
GE = ">="
EQ = "=="

_RELATIONS = (LE, GE, EQ)


class CapExceeded(ValueError):
    """An operation refused to run because a configured size cap was hit."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point input rejected; pass int, Fraction or str")
    return Fraction(x)


class RationalMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data):
        mat = [tuple(_as_fraction(x) for x in row) for row in data]
        self_rows = len(mat)
        self_cols = len(mat[0]) if mat else 0
        if any(len(row) != self_cols for row in mat):
            raise ValueError("ragged rows")
        self.rows = self_rows
        self.cols = self_cols
        self.entries = tuple(itertools.chain.from_iterable(mat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)]
        )

    def submatrix(self, row_idx, col_idx) -> "RationalMatrix":
        return RationalMatrix([[self.at(i, j) for j in col_idx] for i in row_idx])

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RationalMatrix({self.to_lists()!r})"

    def _integer_rows(self):
        """Rows scaled to integers (per-row lcm of denominators), with scales."""
        out, scales = [], []
        for i in range(self.rows):
            row = self.row(i)
            d = 1
            for x in row:
                d = lcm(d, x.denominator)
            scales.append(d)
            out.append([int(x * d) for x in row])
        return out, scales

    def det(self) -> Fraction:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError(f"determinant of non-square {self.rows}x{self.cols} matrix")
        if self.rows == 0:
            return Fraction(1)
        m, scales = self._integer_rows()
        scale = 1
        for d in scales:
            scale *= d
        return Fraction(_bareiss_det(m), scale)

    def rank(self, modulus: int | None = None) -> int:
        """Rank over Q, or over F_modulus when a prime modulus is given."""
        m, _ = self._integer_rows()
        return int_rank(m, self.cols, modulus=modulus)


def _bareiss_det(m) -> int:
    """Determinant of an integer matrix; mutates its argument."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            mi, mk = m[i], m[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pivot - mik * mk[j]) // prev
            mi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def int_rank(rows, ncols: int, modulus: int | None = None) -> int:
    """Rank of an integer matrix given as a list of rows.

    Over Q this uses gcd-scaled integer elimination (exact, no Fraction
    churn); with a modulus it reduces mod p first.
    """
    work = [list(r) for r in rows]
    if modulus is not None:
        work = [[x % modulus for x in r] for r in work]
    rank = 0
    col = 0
    nrows = len(work)
    while rank < nrows and col < ncols:
        piv = None
        for i in range(rank, nrows):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pval = prow[col]
        if modulus is not None:
            inv = pow(pval, -1, modulus)
            for i in range(rank + 1, nrows):
                v = work[i][col]
                if v:
                    f = (v * inv) % modulus
                    work[i] = [(x - f * y) % modulus for x, y in zip(work[i], prow)]
        else:
            for i in range(rank + 1, nrows):
                v = work[i][col]
                if v:
                    g = gcd(pval, v)
                    a, b = pval // g, v // g
                    work[i] = [a * x - b * y for x, y in zip(work[i], prow)]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def holds_at(self, point) -> bool:
        lhs = sum(c * x for c, x in zip(self.coeffs, point))
        if self.rel == LE:
            return lhs <= self.rhs
        if self.rel == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """A maximization program: max objective . x subject to constraints.

    `nonneg[j]` marks variable j as constrained to x_j >= 0.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    nonneg: tuple[bool, ...]

    def __post_init__(self):
        nvar = len(self.objective)
        if len(self.nonneg) != nvar:
            raise ValueError("nonneg flag count != variable count")
        for c in self.constraints:
            if len(c.coeffs) != nvar:
                raise ValueError("constraint arity != variable count")

    @classmethod
    def maximize(cls, objective, constraints, nonneg=True) -> "LinearProgram":
        obj = tuple(_as_fraction(x) for x in objective)
        cons = tuple(
            Constraint(tuple(_as_fraction(a) for a in coeffs), rel, _as_fraction(rhs))
            for coeffs, rel, rhs in constraints
        )
        if isinstance(nonneg, bool):
            flags = (nonneg,) * len(obj)
        else:
            flags = tuple(bool(b) for b in nonneg)
        return cls(obj, cons, flags)

    @property
    def nvars(self) -> int:
        return len(self.objective)


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None

    @classmethod
    def optimal(cls, value, point) -> "LpOutcome":
        return cls(OPTIMAL, _as_fraction(value), tuple(_as_fraction(x) for x in point))

    @classmethod
    def infeasible(cls) -> "LpOutcome":
        return cls(INFEASIBLE)

    @classmethod
    def unbounded(cls) -> "LpOutcome":
        return cls(UNBOUNDED)

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(tableau, prow: int, pcol: int):
    row = tableau[prow]
    inv = Fraction(1) / row[pcol]
    tableau[prow] = row = [x * inv for x in row]
    for i, other in enumerate(tableau):
        if i == prow:
            continue
        f = other[pcol]
        if f:
            tableau[i] = [x - f * y for x, y in zip(other, row)]


def _simplex_iterate(tableau, basis, cost, ncols: int) -> str:
    """Run simplex pivots (maximize) with Bland's rule until done.

    `tableau` rows carry the rhs in their last slot.  Returns "optimal" or
    "unbounded"; mutates tableau and basis.
    """
    m = len(tableau)
    while True:
        enter = -1
        for j in range(ncols):
            r = cost[j]
            for i in range(m):
                cb = cost[basis[i]]
                if cb:
                    r -= cb * tableau[i][j]
            if r > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tableau, leave, enter)
        basis[leave] = enter


def lp_solve(p: LinearProgram) -> LpOutcome:
    """Solve exactly by two-phase simplex; deterministic (Bland's rule).

    The returned Optimal point is a vertex of the feasible region and
    satisfies every constraint exactly.
    """
    # Standard-form columns: one per nonnegative variable, two (x+ , x-)
    # per free variable.
    plus_col = []
    minus_col = []
    ncore = 0
    for j in range(p.nvars):
        plus_col.append(ncore)
        ncore += 1
        if p.nonneg[j]:
            minus_col.append(None)
        else:
            minus_col.append(ncore)
            ncore += 1

    nslack = sum(1 for c in p.constraints if c.rel != EQ)
    m = len(p.constraints)
    total = ncore + nslack
    art_start = total

    tableau = []
    slack_at = ncore
    for c in p.constraints:
        row = [Fraction(0)] * (total + m + 1)
        for j, a in enumerate(c.coeffs):
            row[plus_col[j]] = a
            if minus_col[j] is not None:
                row[minus_col[j]] = -a
        if c.rel == LE:
            row[slack_at] = Fraction(1)
            slack_at += 1
        elif c.rel == GE:
            row[slack_at] = Fraction(-1)
            slack_at += 1
        row[-1] = c.rhs
        if row[-1] < 0:
            row = [-x for x in row]
        tableau.append(row)

    # One artificial per row; phase 1 drives them all to zero.
    basis = []
    for i in range(m):
        tableau[i][art_start + i] = Fraction(1)
        basis.append(art_start + i)

    width = total + m
    cost1 = [Fraction(0)] * width
    for k in range(art_start, width):
        cost1[k] = Fraction(-1)
    _simplex_iterate(tableau, basis, cost1, width)
    phase1 = sum(cost1[basis[i]] * tableau[i][-1] for i in range(m))
    if phase1 < 0:
        return LpOutcome.infeasible()

    # Pivot leftover artificial basics out (or drop redundant rows), then
    # discard the artificial columns entirely.
    i = 0
    while i < len(tableau):
        if basis[i] >= art_start:
            pcol = next((j for j in range(total) if tableau[i][j] != 0), None)
            if pcol is None:
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, i, pcol)
            basis[i] = pcol
        i += 1
    tableau = [row[:total] + [row[-1]] for row in tableau]

    cost2 = [Fraction(0)] * total
    for j in range(p.nvars):
        cost2[plus_col[j]] += p.objective[j]
        if minus_col[j] is not None:
            cost2[minus_col[j]] -= p.objective[j]
    status = _simplex_iterate(tableau, basis, cost2, total)
    if status == UNBOUNDED:
        return LpOutcome.unbounded()

    std = [Fraction(0)] * total
    for i, b in enumerate(basis):
        std[b] = tableau[i][-1]
    point = []
    for j in range(p.nvars):
        x = std[plus_col[j]]
        if minus_col[j] is not None:
            x -= std[minus_col[j]]
        point.append(x)
    value = sum(c * x for c, x in zip(p.objective, point))
    return LpOutcome.optimal(value, point)


def lp_dual(p: LinearProgram) -> LinearProgram:
    """Dual of a maximization program with nonnegative variables.

    Equality constraints are split into <= and >= first.  The dual is the
    minimization `min h.y  s.t.  G^T y >= c, y >= 0`; it is returned
    re-expressed as maximization of the negated objective, so
    `lp_solve(lp_dual(p)).value == -lp_solve(p).value` on bounded-feasible
    instances (strong duality).
    """
    if not all(p.nonneg):
        raise ValueError("dualization requires all variables nonnegative")
    rows = []
    rhs = []
    for c in p.constraints:
        if c.rel == LE:
            rows.append(c.coeffs)
            rhs.append(c.rhs)
        elif c.rel == GE:
            rows.append(tuple(-a for a in c.coeffs))
            rhs.append(-c.rhs)
        else:
            rows.append(c.coeffs)
            rhs.append(c.rhs)
            rows.append(tuple(-a for a in c.coeffs))
            rhs.append(-c.rhs)
    nrows = len(rows)
    constraints = []
    for j in range(p.nvars):
        constraints.append((tuple(rows[i][j] for i in range(nrows)), GE, p.objective[j]))
    return LinearProgram.maximize([-b for b in rhs], constraints, nonneg=True)
