"""Exact zero-sum matrix games over the rationals.

The row player maximizes, the column player minimizes.  Everything here is
computed with ``fractions.Fraction``; there is no floating point and no
tolerance anywhere.  ``game_value`` is the production solver (simplex with
Bland's rule), ``support_enumeration_value`` and ``fictitious_play`` are the
two independent oracles used to certify it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadParameters, DimensionMismatch, SimulgameError, SizeLimit

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class Solution:
    """Value and one pair of optimal mixed strategies."""

    value: Fraction
    row_mix: tuple[Fraction, ...]
    col_mix: tuple[Fraction, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Validate shape and convert entries to Fraction."""
    if not rows or not rows[0]:
        raise BadParameters("matrix must have at least one row and one column")
    width = len(rows[0])
    out = []
    for row in rows:
        if len(row) != width:
            raise BadParameters("matrix rows have unequal lengths")
        out.append([Fraction(x) for x in row])
    return out


def game_value(rows: Sequence[Sequence]) -> Solution:
    """Solve the matrix game exactly.

    The LP is the classical reciprocal formulation on a copy of the matrix
    shifted to be strictly positive.  Bland's rule (lowest variable index)
    makes the pivot sequence, and therefore the returned mixes, deterministic.
    """
    a = as_matrix(rows)
    m, n = len(a), len(a[0])
    low = min(min(row) for row in a)
    shift = Fraction(1) - low if low <= 0 else Fraction(0)
    b = [[x + shift for x in row] for row in a]

    # Maximize sum(y) subject to B y <= 1, y >= 0.  Variables 0..n-1 are the
    # structural y, n..n+m-1 the slacks; the last column is the RHS.
    width = n + m + 1
    tab = []
    for i in range(m):
        row = b[i] + [Fraction(0)] * m + [Fraction(1)]
        row[n + i] = Fraction(1)
        tab.append(row)
    obj = [Fraction(-1)] * n + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]

    while True:
        enter = -1
        for j in range(n + m):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width - 1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise SimulgameError("unbounded game LP; matrix shift failed")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    total = obj[width - 1]
    assert total > 0
    shifted_value = 1 / total
    ys = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            ys[basis[i]] = tab[i][width - 1]
    col_mix = tuple(y * shifted_value for y in ys)
    row_mix = tuple(obj[n + i] * shifted_value for i in range(m))
    return Solution(shifted_value - shift, row_mix, col_mix)


def _solve_linear(mat: Matrix, rhs: list[Fraction]):
    """Gaussian elimination; returns None for singular systems."""
    k = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def support_enumeration_value(rows: Sequence[Sequence]) -> Fraction:
    """Game value by exhaustive square-support enumeration.

    Independent of the simplex path: solves the equalization system of every
    square support pair and verifies the equilibrium inequalities exactly.
    Limited to 5x5 by design.
    """
    a = as_matrix(rows)
    m, n = len(a), len(a[0])
    if m > 5 or n > 5:
        raise SizeLimit("support enumeration is limited to 5x5 matrices")
    for k in range(1, min(m, n) + 1):
        for support_rows in itertools.combinations(range(m), k):
            for support_cols in itertools.combinations(range(n), k):
                value = _check_support(a, support_rows, support_cols)
                if value is not None:
                    return value
    raise SimulgameError("no equilibrium support found; should be impossible")


def _check_support(a: Matrix, srows, scols):
    k = len(srows)
    n_all = len(a[0])
    m_all = len(a)
    # Row mix p on srows equalizing the columns in scols, plus sum(p) = 1.
    sys_rows = [[a[i][j] for i in srows] + [Fraction(-1)] for j in scols]
    sys_rows.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = _solve_linear(sys_rows, rhs)
    if sol is None:
        return None
    p, v = sol[:k], sol[k]
    if any(x < 0 for x in p):
        return None
    for j in range(n_all):
        if j in scols:
            continue
        if sum(p[t] * a[srows[t]][j] for t in range(k)) < v:
            return None
    # Column mix q on scols equalizing the rows in srows.
    sys_cols = [[a[i][j] for j in scols] + [Fraction(-1)] for i in srows]
    sys_cols.append([Fraction(1)] * k + [Fraction(0)])
    sol = _solve_linear(sys_cols, rhs)
    if sol is None:
        return None
    q, w = sol[:k], sol[k]
    if w != v or any(x < 0 for x in q):
        return None
    for i in range(m_all):
        if i in srows:
            continue
        if sum(q[t] * a[i][scols[t]] for t in range(k)) > v:
            return None
    return v


def fictitious_play(rows: Sequence[Sequence], iterations: int) -> tuple[Fraction, Fraction]:
    """Empirical bracket [lo, hi] with lo <= value <= hi.

    Each round both players best-respond to the opponent's empirical mix
    (lowest index on ties).  The bracket is the best security bound either
    empirical mix has achieved so far, so it always contains the true value.
    """
    if iterations < 1:
        raise BadParameters("iterations must be >= 1")
    a = as_matrix(rows)
    m, n = len(a), len(a[0])
    row_counts = [0] * m
    col_counts = [0] * n
    # against_col[i]: payoff of pure row i summed over the column history;
    # against_row[j]: payoff of pure column j summed over the row history.
    against_col = [Fraction(0)] * m
    against_row = [Fraction(0)] * n
    best_lo = None
    best_hi = None
    for t in range(1, iterations + 1):
        if t == 1:
            r = c = 0
        else:
            r = max(range(m), key=lambda i: (against_col[i], -i))
            c = min(range(n), key=lambda j: (against_row[j], j))
        row_counts[r] += 1
        col_counts[c] += 1
        for i in range(m):
            against_col[i] += a[i][c]
        for j in range(n):
            against_row[j] += a[r][j]
        lo = min(against_row) / t
        hi = max(against_col) / t
        if best_lo is None or lo > best_lo:
            best_lo = lo
        if best_hi is None or hi < best_hi:
            best_hi = hi
    return best_lo, best_hi


def eliminate_dominated(rows: Sequence[Sequence]):
    """Iterated weak dominance with lowest-index survivors.

    Removes any row weakly dominated by a surviving row and any column that
    is weakly worse for the column player than a surviving column, until a
    fixpoint.  Returns (reduced matrix, kept row indices, kept col indices).
    """
    a = as_matrix(rows)
    keep_r = list(range(len(a)))
    keep_c = list(range(len(a[0])))
    changed = True
    while changed:
        changed = False
        for i in list(keep_r):
            for k in keep_r:
                if k == i:
                    continue
                ri = [a[i][j] for j in keep_c]
                rk = [a[k][j] for j in keep_c]
                if all(x >= y for x, y in zip(rk, ri)) and (rk != ri or k < i):
                    keep_r.remove(i)
                    changed = True
                    break
        for j in list(keep_c):
            for l in keep_c:
                if l == j:
                    continue
                cj = [a[i][j] for i in keep_r]
                cl = [a[i][l] for i in keep_r]
                if all(x <= y for x, y in zip(cl, cj)) and (cl != cj or l < j):
                    keep_c.remove(j)
                    changed = True
                    break
    reduced = [[a[i][j] for j in keep_c] for i in keep_r]
    return reduced, tuple(keep_r), tuple(keep_c)


def response_value(rows: Sequence[Sequence], row_mix: Sequence) -> Fraction:
    """Payoff the row player secures by fixing row_mix: min over pure columns."""
    a = as_matrix(rows)
    if len(row_mix) != len(a):
        raise DimensionMismatch("row_mix length does not match matrix rows")
    mix = [Fraction(x) for x in row_mix]
    return min(sum(mix[i] * a[i][j] for i in range(len(a))) for j in range(len(a[0])))
