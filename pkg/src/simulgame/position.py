"""Position model shared by every ruleset and sum combinator.

A position exposes its Left options, Right options, and the joint result of
any (Left move, Right move) pair.  Terminality, the terminal outcome under
the move-based winning convention, and the terminal score all derive from
those three primitives.  Positions are immutable and hashable; evaluation
never mutates them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotTerminal, UnknownRuleset

OUTCOME_LEFT = "L"
OUTCOME_RIGHT = "R"
OUTCOME_DRAW = "D"


@dataclass(frozen=True)
class MoveMatrix:
    """Left pure strategies x Right pure strategies, cells holding successors."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cells: tuple[tuple["Position", ...], ...]

    def __post_init__(self):
        assert len(self.cells) == len(self.row_labels)
        for row in self.cells:
            assert len(row) == len(self.col_labels)
        assert len(set(self.row_labels)) == len(self.row_labels)
        assert len(set(self.col_labels)) == len(self.col_labels)

    @property
    def is_empty(self) -> bool:
        return not self.row_labels or not self.col_labels


EMPTY_MATRIX = MoveMatrix((), (), ())


class Position:
    """Base class: subclasses provide options and a canonical key."""

    ruleset_tag = "abstract"

    # Subclass API ---------------------------------------------------------

    def left_options(self) -> tuple[tuple[str, "Position"], ...]:
        raise NotImplementedError

    def right_options(self) -> tuple[tuple[str, "Position"], ...]:
        raise NotImplementedError

    def joint_option(self, left_label: str, right_label: str) -> "Position":
        raise NotImplementedError

    def canonical_key(self) -> str:
        raise NotImplementedError

    # Derived behaviour ------------------------------------------------------

    def has_left_option(self) -> bool:
        return bool(self.left_options())

    def has_right_option(self) -> bool:
        return bool(self.right_options())

    def is_terminal(self) -> bool:
        """Simultaneous option set empty: either player is out of moves."""
        return not (self.has_left_option() and self.has_right_option())

    def move_matrix(self) -> MoveMatrix:
        lo = self.left_options()
        ro = self.right_options()
        if not lo or not ro:
            return EMPTY_MATRIX
        cells = tuple(
            tuple(self.joint_option(ll, rl) for rl, _ in ro) for ll, _ in lo
        )
        return MoveMatrix(tuple(l for l, _ in lo), tuple(r for r, _ in ro), cells)

    def normal_outcome(self) -> str:
        """Winner of a terminal position by who still has moves."""
        if not self.is_terminal():
            raise NotTerminal("outcome is defined for terminal positions only")
        hl, hr = self.has_left_option(), self.has_right_option()
        if hl and not hr:
            return OUTCOME_LEFT
        if hr and not hl:
            return OUTCOME_RIGHT
        return OUTCOME_DRAW

    def terminal_score(self) -> Fraction:
        """Score of a terminal position; sums override with their own rule."""
        if not self.is_terminal():
            raise NotTerminal("score is defined for terminal positions only")
        return self.component_score()

    def component_score(self) -> Fraction:
        """Score this position contributes at the end of a sum.

        Default is the move-count score: the longest run of unilateral moves
        the mobile player can make while the opponent stays moveless.
        Rulesets with a bespoke scoring rule override this.
        """
        return Fraction(v_a(self))

    def swap_roles(self) -> "Position":
        raise NotImplementedError(f"{self.ruleset_tag} has no defined role swap")

    def left_successor(self, label: str) -> "Position":
        for lbl, succ in self.left_options():
            if lbl == label:
                return succ
        raise KeyError(label)

    def right_successor(self, label: str) -> "Position":
        for lbl, succ in self.right_options():
            if lbl == label:
                return succ
        raise KeyError(label)


def require_position(p) -> Position:
    if not isinstance(p, Position):
        raise UnknownRuleset(f"not a registered position: {p!r}")
    return p


def v_a(p: Position) -> int:
    """Move-count score of a one-sided terminal position.

    Positive when only Left can move, negative when only Right can; the
    magnitude is the longest chain of unilateral moves that never opens a
    move for the opponent.  Raises NotTerminal while both players can move.
    """
    require_position(p)
    hl, hr = p.has_left_option(), p.has_right_option()
    if hl and hr:
        raise NotTerminal("v_a needs a position where some player cannot move")
    if not hl and not hr:
        return 0
    if hl:
        return _chain(p, left=True)
    return -_chain(p, left=False)


def _chain(p: Position, left: bool) -> int:
    best = 0
    options = p.left_options() if left else p.right_options()
    for _, child in options:
        blocked = child.has_right_option() if left else child.has_left_option()
        if blocked:
            continue
        best = max(best, 1 + _chain(child, left))
    return best


@dataclass(frozen=True)
class ScoreLiteral(Position):
    """A moveless terminal position carrying a fixed score."""

    value: Fraction

    ruleset_tag = "score"

    def left_options(self):
        return ()

    def right_options(self):
        return ()

    def joint_option(self, left_label, right_label):
        raise KeyError((left_label, right_label))

    def canonical_key(self) -> str:
        return f"s({self.value})"

    def component_score(self) -> Fraction:
        return self.value

    def swap_roles(self) -> "ScoreLiteral":
        return ScoreLiteral(-self.value)


def score(value) -> ScoreLiteral:
    return ScoreLiteral(Fraction(value))


@dataclass(frozen=True)
class ExplicitGame(Position):
    """A game given literally by its option lists and simultaneous table."""

    lefts: tuple[Position, ...]
    rights: tuple[Position, ...]
    table: tuple[tuple[Position, ...], ...]

    ruleset_tag = "explicit"

    def __post_init__(self):
        if self.lefts and self.rights:
            assert len(self.table) == len(self.lefts)
            for row in self.table:
                assert len(row) == len(self.rights)
        else:
            assert self.table == ()

    def left_options(self):
        return tuple((f"L{i}", g) for i, g in enumerate(self.lefts))

    def right_options(self):
        return tuple((f"R{j}", g) for j, g in enumerate(self.rights))

    def joint_option(self, left_label, right_label):
        return self.table[int(left_label[1:])][int(right_label[1:])]

    def canonical_key(self) -> str:
        ls = ",".join(g.canonical_key() for g in self.lefts)
        rs = ",".join(g.canonical_key() for g in self.rights)
        ts = ";".join(
            ",".join(g.canonical_key() for g in row) for row in self.table
        )
        return f"x(L[{ls}]|R[{rs}]|T[{ts}])"


def outcome_literal(which: str) -> Position:
    """Terminal position with the requested move-convention outcome.

    'L' has one Left move to a dead end, 'R' one Right move, 'D' none.
    """
    dead = score(0)
    if which == OUTCOME_LEFT:
        return ExplicitGame((dead,), (), ())
    if which == OUTCOME_RIGHT:
        return ExplicitGame((), (dead,), ())
    if which == OUTCOME_DRAW:
        return dead
    raise ValueError(f"unknown outcome literal {which!r}")
