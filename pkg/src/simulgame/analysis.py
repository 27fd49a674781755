"""Derived quantities: reductions, comparisons, closed forms.

Everything here sits on top of the engine; nothing feeds back into
evaluation.  In particular ``reduce_game`` exists for study and for the
CLI only: reduction is value-preserving for a game in isolation but is
unsound inside sums, so the engine never calls it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import NORMAL, SCORING, Memo, evaluate, guarantee_profile
from .errors import BadParameters, BadStalk
from .matgame import eliminate_dominated
from .position import ExplicitGame, Position, require_position

LESS, EQUAL, GREATER, INCOMPARABLE = "Less", "Equal", "Greater", "Incomparable"


@dataclass(frozen=True)
class ComparisonResult:
    relation: str
    witness: tuple


def reduce_game(p: Position, convention: str = NORMAL, *, memo: Memo | None = None) -> Position:
    """Recursively eliminate dominated pure strategies, bottom up.

    The result is an explicit game with the surviving options; its expected
    value in isolation equals the original's.
    """
    require_position(p)
    if p.is_terminal():
        return p
    matrix = p.move_matrix()
    values = [
        [evaluate(cell, convention, memo=memo).ex for cell in row] for row in matrix.cells
    ]
    _, keep_rows, keep_cols = eliminate_dominated(values)
    lefts = tuple(
        reduce_game(p.left_successor(matrix.row_labels[i]), convention, memo=memo)
        for i in keep_rows
    )
    rights = tuple(
        reduce_game(p.right_successor(matrix.col_labels[j]), convention, memo=memo)
        for j in keep_cols
    )
    table = tuple(
        tuple(reduce_game(matrix.cells[i][j], convention, memo=memo) for j in keep_cols)
        for i in keep_rows
    )
    return ExplicitGame(lefts, rights, table)


def compare_continued_scoring(g: Position, h: Position, *, memo: Memo | None = None) -> ComparisonResult:
    """Order two games for the continued-conjunctive scoring sum.

    Expected value decides completely there, so the result is never
    Incomparable.
    """
    ex_g = evaluate(g, SCORING, memo=memo).ex
    ex_h = evaluate(h, SCORING, memo=memo).ex
    if ex_g == ex_h:
        rel = EQUAL
    elif ex_g > ex_h:
        rel = GREATER
    else:
        rel = LESS
    return ComparisonResult(rel, (ex_g, ex_h))


def compare_index(g: Position, h: Position, *, memo: Memo | None = None) -> ComparisonResult:
    """Compare securities componentwise: Left's up, Right's down."""
    pg = guarantee_profile(g, NORMAL, memo=memo)
    ph = guarantee_profile(h, NORMAL, memo=memo)
    witness = ((pg.ell, pg.arr), (ph.ell, ph.arr))
    if pg.ell == ph.ell and pg.arr == ph.arr:
        return ComparisonResult(EQUAL, witness)
    if pg.ell >= ph.ell and pg.arr <= ph.arr:
        return ComparisonResult(GREATER, witness)
    if pg.ell <= ph.ell and pg.arr >= ph.arr:
        return ComparisonResult(LESS, witness)
    return ComparisonResult(INCOMPARABLE, witness)


def sq_expected_sequence(a: int, b: int, n_max: int) -> list[Fraction]:
    """Expected values of strips 0..n_max for singleton subtraction sets.

    Base cases: 0 below a, 1 from a up to b; from b on, the two sides
    match or miss with equal probability, so each term averages the
    same-side and opposite-side follow-ups (the opposite-side strip
    clamps at the empty strip).
    """
    if a < 1 or b <= a:
        raise BadParameters("need 1 <= a < b")
    if n_max < 0:
        raise BadParameters("n_max must be >= 0")
    out: list[Fraction] = []
    for n in range(n_max + 1):
        if n < a:
            out.append(Fraction(0))
        elif n < b:
            out.append(Fraction(1))
        else:
            same = out[n - b]
            opposite = out[max(0, n - b - a)]
            out.append(Fraction(same + opposite, 2))
    return out


@dataclass(frozen=True)
class _GaussianRational:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return _GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return _GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return _GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def power(self, n: int) -> "_GaussianRational":
        result = _GaussianRational(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def sq12_closed_form(n: int) -> Fraction:
    """Closed form of the {1},{2} strip sequence via Gaussian rationals.

    The two conjugate terms cancel imaginary parts exactly; the real part
    is the expected value and tends to 2/5.
    """
    if n < 0:
        raise BadParameters("n must be >= 0")
    g = _GaussianRational
    half = Fraction(1, 2)
    first = g(Fraction(1), Fraction(2)) * g(-half, half).power(n)
    second = g(Fraction(1), Fraction(-2)) * g(-half, -half).power(n)
    total = g(Fraction(2), Fraction(0)) - first - second
    assert total.im == 0
    return total.re / 5


def clobber_kn_expected(n: int) -> Fraction:
    """Scoring value of one X against n-1 O pieces on the complete graph."""
    if n < 2:
        raise BadParameters("complete-graph clobber needs n >= 2")
    return Fraction(n, 2) - 1


def stalk_score_formula(colors) -> int:
    """Score of a monochrome-prefix, strictly-alternating stalk.

    The prefix length n is the score when the stalk ends in the prefix
    colour, n - 1 otherwise; negated for red-led stalks.
    """
    seq = list(colors)
    if not seq or any(c not in "BR" for c in seq):
        raise BadStalk("stalk must be a nonempty string over B and R")
    n = 1
    while n < len(seq) and seq[n] == seq[0]:
        n += 1
    for i in range(n - 1, len(seq) - 1):
        if seq[i] == seq[i + 1]:
            raise BadStalk("suffix after the monochrome prefix must alternate strictly")
    magnitude = n if seq[-1] == seq[0] else n - 1
    return magnitude if seq[0] == "B" else -magnitude
