"""Exact-rational and tolerance-float linear algebra, plus a small dense LP solver.

Everything downstream runs on one of two scalar lanes declared here.  The
rational lane (Python fractions) is the reference: zero tests are exact, so
vertex enumeration is tolerance-free.  The float lane mirrors it with a
relative pivot threshold.  Matrices are dense and sizes are desk scale, so
the implementations favor clarity over asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError

RATIONAL = "rational"
FLOAT = "float"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ScalarMode:
    """Arithmetic lane selector.

    kind is "rational" (exact, tol ignored) or "float" (tol is the relative
    threshold for pivot acceptance and zero tests, default 1e-9).
    """

    kind: str = FLOAT
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.kind not in (RATIONAL, FLOAT):
            raise ValidationError(f"unknown scalar mode {self.kind!r}")
        if self.kind == FLOAT and not self.tol > 0:
            raise ValidationError("float mode requires tol > 0")

    @property
    def exact(self) -> bool:
        return self.kind == RATIONAL

    def number(self, x):
        """Coerce one scalar onto this lane.

        Rational lane accepts ints, fractions, and "p/q" / decimal strings;
        floats are rejected there because silently exactifying binary noise
        hides input mistakes.
        """
        if self.exact:
            if isinstance(x, float):
                raise ValidationError("float entry not allowed in rational mode")
            return Fraction(x)
        return float(x)

    @property
    def zero(self):
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self):
        return Fraction(1) if self.exact else 1.0


def rational_mode() -> ScalarMode:
    return ScalarMode(RATIONAL)


def float_mode(tol: float = 1e-9) -> ScalarMode:
    return ScalarMode(FLOAT, tol)


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable dense matrix; entries live on whichever scalar lane built them."""

    entries: tuple

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValidationError("matrix must be nonempty")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValidationError("matrix rows must have equal length")
            for x in row:
                if isinstance(x, float) and not math.isfinite(x):
                    raise ValidationError("matrix entries must be finite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DenseMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def _abs_max(rows) -> float:
    big = 0.0
    for row in rows:
        for x in row:
            a = abs(x)
            if a > big:
                big = float(a)
    return big


def _rref(rows, mode: ScalarMode, pivot_limit: Optional[int] = None):
    """Reduced row echelon form.

    Returns (reduced rows, pivot column indices).  Pivot selection: first
    nonzero entry in rational mode, largest magnitude in float mode, accepted
    only above tol * (largest absolute entry of the input matrix).  Columns at
    or beyond pivot_limit are carried along but never pivoted on, which is how
    augmented systems are reduced.
    """
    if mode.exact:
        a = [[Fraction(x) for x in row] for row in rows]
    else:
        a = [[float(x) for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0])
    stop = ncols if pivot_limit is None else pivot_limit
    thresh = 0.0 if mode.exact else mode.tol * _abs_max(a)
    pivots = []
    r = 0
    for c in range(stop):
        if r == nrows:
            break
        if mode.exact:
            prow = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        else:
            prow = max(range(r, nrows), key=lambda i: abs(a[i][c]))
            if abs(a[prow][c]) <= thresh:
                prow = None
        if prow is None:
            continue
        a[r], a[prow] = a[prow], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        row_r = a[r]
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            if f == 0:
                continue
            a[i] = [x - f * y for x, y in zip(a[i], row_r)]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: DenseMatrix, mode: ScalarMode) -> int:
    """Numerical rank under the mode's pivot rule."""
    _, pivots = _rref(m.entries, mode)
    return len(pivots)


def pivot_columns(m: DenseMatrix, mode: ScalarMode) -> tuple:
    """Indices of a maximal independent column set (the RREF pivot columns)."""
    _, pivots = _rref(m.entries, mode)
    return tuple(pivots)


def nullspace_basis(m: DenseMatrix, mode: ScalarMode) -> list:
    """Basis of {x : Mx = 0}, one vector per free column, as tuples."""
    red, pivots = _rref(m.entries, mode)
    ncols = m.cols
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [mode.zero] * ncols
        vec[f] = mode.one
        for r, c in enumerate(pivots):
            vec[c] = -red[r][f]
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class SolveResult:
    consistent: bool
    unique: bool
    solution: Optional[tuple]  # free variables pinned to zero; None if inconsistent


def linear_solve(rows, rhs, mode: ScalarMode) -> SolveResult:
    """Solve A x = b by reduction of the augmented matrix.

    Reports consistency and uniqueness; the returned particular solution sets
    every free variable to zero.
    """
    if len(rows) != len(rhs):
        raise ValidationError("rhs length must match row count")
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    red, pivots = _rref(aug, mode, pivot_limit=ncols)
    thresh = 0 if mode.exact else mode.tol * max(1.0, _abs_max(aug))
    consistent = all(abs(red[r][-1]) <= thresh for r in range(len(pivots), len(red)))
    if not consistent:
        return SolveResult(False, False, None)
    x = [mode.zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return SolveResult(True, len(pivots) == ncols, tuple(x))


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to A x = b plus per-variable sign flags.

    nonneg[j] = True constrains x_j >= 0; False leaves x_j free (handled by a
    positive/negative split inside the solver).
    """

    objective: tuple
    lhs: tuple
    rhs: tuple
    nonneg: tuple

    def __post_init__(self) -> None:
        n = len(self.objective)
        if n == 0 or not self.lhs:
            raise ValidationError("program must have variables and constraints")
        if len(self.lhs) != len(self.rhs):
            raise ValidationError("constraint matrix and rhs disagree")
        for row in self.lhs:
            if len(row) != n:
                raise ValidationError("constraint width must match objective")
        if len(self.nonneg) != n:
            raise ValidationError("one sign flag per variable required")

    @classmethod
    def build(cls, objective, lhs, rhs, nonneg=None) -> "LinearProgram":
        obj = tuple(objective)
        if nonneg is None:
            nonneg = (True,) * len(obj)
        return cls(obj, tuple(tuple(r) for r in lhs), tuple(rhs), tuple(map(bool, nonneg)))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    solution: Optional[tuple]  # in the caller's variables, splits recombined
    objective: Optional[object]
    iterations: int  # total Bland pivots across both phases
    tableau_cols: int  # standard-form width incl. artificials (for cap asserts)
    tableau_rows: int


def _pivot(a, b, basis, row, col) -> None:
    pv = a[row][col]
    a[row] = [x / pv for x in a[row]]
    b[row] = b[row] / pv
    prow = a[row]
    pb = b[row]
    for i in range(len(a)):
        if i == row:
            continue
        f = a[i][col]
        if f == 0:
            continue
        a[i] = [x - f * y for x, y in zip(a[i], prow)]
        b[i] = b[i] - f * pb


def _simplex_min(a, b, basis, cost, eps, cap) -> tuple:
    """Minimize cost . x on a canonical tableau (basis columns are identity).

    Bland's rule at both choice points: the entering column is the smallest
    index with reduced cost below -eps, the leaving row breaks ratio ties by
    smallest basic-variable index.  Mutates a, b, basis; returns
    (optimal: bool, iterations).  cap is the C(cols, rows) basis bound; with
    Bland's rule it is unreachable, so exceeding it is an internal error.
    """
    it = 0
    m = len(a)
    ncols = len(a[0]) if a else 0
    while True:
        enter = -1
        for j in range(ncols):
            rj = cost[j]
            for i in range(m):
                cb = cost[basis[i]]
                if cb != 0 and a[i][j] != 0:
                    rj -= cb * a[i][j]
            if rj < -eps:
                enter = j
                break
        if enter < 0:
            return True, it
        leave = -1
        best = None
        for i in range(m):
            coef = a[i][enter]
            if coef > eps:
                ratio = b[i] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return False, it  # unbounded descent direction
        _pivot(a, b, basis, leave, enter)
        basis[leave] = enter
        it += 1
        if it > cap:
            raise RuntimeError("simplex exceeded the Bland basis bound; internal error")


def lp_solve(program: LinearProgram, mode: ScalarMode) -> LPResult:
    """Two-phase primal simplex with Bland's anti-cycling rule.

    Phase 1 minimizes the sum of one artificial variable per row; a positive
    optimum means infeasible.  Surviving artificials are pivoted out or their
    rows dropped as redundant, then phase 2 maximizes the caller's objective
    over the original (split) columns only.
    """
    exact = mode.exact
    num = mode.number

    colmap = []  # standard column -> (original index, sign)
    for j, nn in enumerate(program.nonneg):
        colmap.append((j, 1))
        if not nn:
            colmap.append((j, -1))
    nsplit = len(colmap)
    nrows = len(program.lhs)

    a = []
    b = []
    for row, beta in zip(program.lhs, program.rhs):
        rr = [num(row[j]) if s > 0 else -num(row[j]) for (j, s) in colmap]
        bb = num(beta)
        if bb < 0:
            rr = [-x for x in rr]
            bb = -bb
        a.append(rr)
        b.append(bb)

    obj_std = [num(program.objective[j]) if s > 0 else -num(program.objective[j])
               for (j, s) in colmap]
    if exact:
        eps = Fraction(0)
    else:
        scale = max(1.0, _abs_max(a), _abs_max([b]), _abs_max([obj_std]))
        eps = mode.tol * scale

    # phase 1: artificial identity block on the right
    width1 = nsplit + nrows
    for i in range(nrows):
        art = [mode.zero] * nrows
        art[i] = mode.one
        a[i] = a[i] + art
    basis = [nsplit + i for i in range(nrows)]
    cost1 = [mode.zero] * nsplit + [mode.one] * nrows
    cap1 = math.comb(width1, nrows)
    ok, it1 = _simplex_min(a, b, basis, cost1, eps, cap1)
    if not ok:
        raise RuntimeError("phase-1 objective is bounded below; internal error")
    infeas = sum((b[i] for i in range(nrows) if basis[i] >= nsplit), mode.zero)
    if infeas > eps:
        return LPResult(INFEASIBLE, None, None, it1, width1, nrows)

    # pivot surviving artificials out, or drop their (redundant) rows
    drop = []
    for i in range(nrows):
        if basis[i] >= nsplit:
            piv = next((j for j in range(nsplit) if abs(a[i][j]) > eps), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(a, b, basis, i, piv)
                basis[i] = piv
    if drop:
        keep = [i for i in range(nrows) if i not in set(drop)]
        a = [a[i] for i in keep]
        b = [b[i] for i in keep]
        basis = [basis[i] for i in keep]
    a = [row[:nsplit] for row in a]
    m = len(a)

    # phase 2: maximize by minimizing the negated objective
    cost2 = [-x for x in obj_std]
    cap2 = math.comb(nsplit, m) if m <= nsplit else 0
    if m:
        ok, it2 = _simplex_min(a, b, basis, cost2, eps, cap2)
    else:
        ok, it2 = True, 0
    if not ok:
        return LPResult(UNBOUNDED, None, None, it1 + it2, width1, nrows)

    x_std = [mode.zero] * nsplit
    for i in range(m):
        x_std[basis[i]] = b[i]
    x = [mode.zero] * len(program.objective)
    for val, (j, s) in zip(x_std, colmap):
        x[j] = x[j] + val if s > 0 else x[j] - val
    value = sum((num(cj) * xj for cj, xj in zip(program.objective, x)), mode.zero)
    return LPResult(OPTIMAL, tuple(x), value, it1 + it2, width1, nrows)
