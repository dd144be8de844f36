"""Evaluation matrices, exact nullspaces, p-adic minors and auxiliary curves.

All arithmetic is over Python integers or ``Fraction``. Elimination is
fraction-free: rows are cross-multiplied and then divided by their content,
so entries stay integral and small without ever forming rationals until the
nullspace basis is read off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations

from .errors import BudgetExceeded, InvalidParams, SingularMinor
from .heights import ProjectivePoint, canonicalize
from .hilbert_samuel import rank_r
from .polynomial import HomogeneousPolynomial, monomials

MATRIX_BUDGET = 10 ** 7
D_CAP = 50


def _coords(P):
    if isinstance(P, ProjectivePoint):
        return P.coords
    return canonicalize(P)


@dataclass(frozen=True)
class EvaluationMatrix:
    points: tuple
    columns: tuple
    rows: tuple

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def polynomial(self, vector, nvars=None):
        nvars = nvars or (len(self.columns[0]) if self.columns else 3)
        return HomogeneousPolynomial({e: c for e, c in zip(self.columns, vector) if c}, nvars)


def _monomial_value(coords, e):
    v = 1
    for c, k in zip(coords, e):
        if k:
            v *= c ** k
    return v


def monomial_matrix(points, D, nvars=None, budget=MATRIX_BUDGET) -> EvaluationMatrix:
    if D < 1:
        raise InvalidParams("D must be at least 1")
    pts = tuple(_coords(P) for P in points)
    if nvars is None:
        nvars = len(pts[0]) if pts else 3
    if any(len(P) != nvars for P in pts):
        raise InvalidParams("points have mixed dimensions")
    ncols = rank_r(nvars - 1, D)
    if ncols * len(pts) > budget:
        raise BudgetExceeded(f"{ncols} x {len(pts)} matrix exceeds {budget} entries")
    cols = tuple(monomials(nvars, D))
    rows = tuple(tuple(_monomial_value(P, e) for e in cols) for P in pts)
    return EvaluationMatrix(pts, cols, rows)


def _primitive_row(row):
    g = reduce(math.gcd, row, 0)
    return [x // g for x in row] if g > 1 else list(row)


def _echelon(rows, ncols):
    """Fraction-free Gauss-Jordan elimination.

    Pivot in each column: the first row (among unused rows) of maximal
    absolute value. Returns (reduced rows, pivot columns) where row i has its
    pivot in column pivots[i] and zeros in every other pivot column.
    """
    work = [list(r) for r in rows]
    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        best, best_abs = None, 0
        for i in range(top, len(work)):
            a = abs(work[i][col])
            if a > best_abs:
                best, best_abs = i, a
        if best is None:
            continue
        work[top], work[best] = work[best], work[top]
        prow = work[top]
        pv = prow[col]
        for i in range(len(work)):
            if i == top or work[i][col] == 0:
                continue
            a = work[i][col]
            work[i] = _primitive_row([pv * x - a * y for x, y in zip(work[i], prow)])
        pivots.append(col)
        top += 1
    return work[:top], pivots


def rank(matrix: EvaluationMatrix) -> int:
    return len(_echelon(matrix.rows, len(matrix.columns))[1])


def exact_nullspace(matrix: EvaluationMatrix) -> list[tuple[int, ...]]:
    """Right nullspace basis, one primitive integer vector per free column.

    The vector for free column j has a positive entry at j, zeros at the
    other free columns, and pivot entries read from the reduced echelon form.
    """
    ncols = len(matrix.columns)
    reduced, pivots = _echelon(matrix.rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = Fraction(-row[j], row[pc])
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        ints = [int(x * den) for x in v]
        basis.append(tuple(_primitive_row(ints)))
    return basis


def _bareiss_det(M):
    n = len(M)
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def determinant(M) -> int:
    return _bareiss_det(M)


def p_valuation(x, p):
    if x == 0:
        raise SingularMinor("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def padic_det_valuation(points, monomial_subset, p) -> int:
    pts = [_coords(P) for P in points]
    monos = [tuple(e) for e in monomial_subset]
    if len(pts) != len(monos):
        raise InvalidParams("minor must be square")
    if len({sum(e) for e in monos}) > 1:
        raise InvalidParams("monomials must share one degree")
    M = [[_monomial_value(P, e) for e in monos] for P in pts]
    det = determinant(M)
    if det == 0:
        raise SingularMinor("selected minor is singular")
    return p_valuation(det, p)


def block_diagonal_valuation(block1, block2, p):
    """Valuation of diag(A, B) assembled explicitly, with the valuations of A and B.

    Each block is (points, monomials). Returns (v(diag), v(A), v(B)).
    """
    mats = []
    for pts, monos in (block1, block2):
        pts = [_coords(P) for P in pts]
        mats.append([[_monomial_value(P, tuple(e)) for e in monos] for P in pts])
    A, B = mats
    a, b = len(A), len(B)
    M = [row + [0] * b for row in A] + [[0] * a + row for row in B]
    return (
        p_valuation(determinant(M), p),
        p_valuation(determinant(A), p),
        p_valuation(determinant(B), p),
    )


@dataclass
class AuxiliaryCurve:
    g: HomogeneousPolynomial
    D: int
    evaluations: tuple
    remainder: HomogeneousPolynomial
    points: tuple = field(default=())
    nullspace_dimension: int = 0
    multiples_dimension: int = 0

    def verify(self, f):
        zeros = all(self.g.evaluate(P) == 0 for P in self.points)
        _, rem = self.g.divmod(f)
        return zeros and not rem.is_zero() and rem == self.remainder

    def to_dict(self):
        return {
            "D": self.D,
            "g": self.g.to_text(),
            "evaluations": list(self.evaluations),
            "remainder": self.remainder.to_text(),
            "nullspace_dimension": self.nullspace_dimension,
            "multiples_dimension": self.multiples_dimension,
        }


def _selection_key(poly):
    lead = poly.leading_term()[0]
    return (lead, max(abs(c) for _, c in poly.items()))


def minimal_auxiliary(f: HomogeneousPolynomial, points, cap=D_CAP, budget=MATRIX_BUDGET) -> AuxiliaryCurve:
    """Smallest degree form vanishing on ``points`` and not divisible by ``f``.

    Degrees are tried in increasing order. Among nullspace basis vectors that
    are not multiples of f, the one with the smallest leading monomial wins,
    ties broken by the smaller largest coefficient.
    """
    if f.is_zero():
        raise InvalidParams("zero polynomial")
    pts = tuple(_coords(P) for P in points)
    for P in pts:
        if f.evaluate(P) != 0:
            raise InvalidParams(f"point {list(P)} is not on the curve")
    for D in range(1, cap + 1):
        if pts:
            M = monomial_matrix(pts, D, f.nvars, budget)
            basis = exact_nullspace(M)
            cols = M.columns
        else:
            cols = tuple(monomials(f.nvars, D))
            basis = [tuple(int(i == j) for i in range(len(cols))) for j in range(len(cols))]
        found = []
        for v in basis:
            g = HomogeneousPolynomial({e: c for e, c in zip(cols, v) if c}, f.nvars)
            _, rem = g.divmod(f)
            if not rem.is_zero():
                found.append((g, rem))
        if found:
            # smallest leading monomial first (exponent tuples compare in descending-lex order)
            g, rem = min(found, key=lambda t: _selection_key(t[0]))
            if g.leading_term()[1] < 0:
                g, rem = -g, -rem
            evals = tuple(g.evaluate(P) for P in pts)
            mult = rank_r(f.nvars - 1, D - f.degree) if D > f.degree else int(D == f.degree)
            return AuxiliaryCurve(g, D, evals, rem, pts, len(basis), mult)
    raise BudgetExceeded(f"no auxiliary curve of degree <= {cap}")


def conic_class_points(p, s0, count, t_values=(1,)):
    """Points [s^2 : s t : t^2] of xz = y^2 whose parameter ratio reduces to s0 mod p."""
    out = []
    k = 0
    while len(out) < count:
        for t in t_values:
            s = s0 * t + p * k
            P = canonicalize((s * s, s * t, t * t))
            if P not in out:
                out.append(P)
            if len(out) == count:
                break
        k += 1
    return out


def determinant_experiment(points, p, D):
    """Valuations of every nonsingular maximal minor of the degree-D matrix.

    With r points and at least r columns, yields (columns, valuation) for
    each r-subset of monomials giving a nonzero determinant.
    """
    M = monomial_matrix(points, D)
    r = len(points)
    if r > len(M.columns):
        raise InvalidParams("more points than monomials")
    out = []
    for sel in combinations(range(len(M.columns)), r):
        sub = [[row[j] for j in sel] for row in M.rows]
        det = determinant(sub)
        if det:
            out.append((tuple(M.columns[j] for j in sel), p_valuation(det, p)))
    return out
