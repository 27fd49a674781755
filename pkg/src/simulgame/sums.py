"""Disjunctive, conjunctive, and continued-conjunctive sums.

A sum is itself a position, so sums nest and components may come from
different rulesets.  Evaluation of a sum is always global: the sum builds
one move matrix over whole strategy tuples and never pre-reduces its
components (reducing components first changes values; see the analysis
module for the witnesses).

Termination and winner rules per kind:

* ``+`` each player moves in one component; over when either player has no
  move anywhere; the mover with moves left wins.
* ``^`` each player moves in every component; over when any component has
  no simultaneous options; whoever still has a move in every finished
  component wins.
* ``v`` each player moves in every component where both still have moves;
  over when no component is live; whoever has a move in every component
  wins.

Scoring terminals: ``+`` and ``v`` add up every component's score, ``^``
adds up the scores of the components that finished.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import BadParameters
from .position import (
    OUTCOME_DRAW,
    OUTCOME_LEFT,
    OUTCOME_RIGHT,
    EMPTY_MATRIX,
    MoveMatrix,
    Position,
    v_a,
)

DISJUNCTIVE = "+"
CONJUNCTIVE = "^"
CONTINUED = "v"
SUM_KINDS = (DISJUNCTIVE, CONJUNCTIVE, CONTINUED)


class SumPosition(Position):
    """A sum of at least two component positions, flattened and canonically
    ordered so that commutative rearrangements are the same position."""

    ruleset_tag = "sum"

    def __init__(self, kind: str, components):
        if kind not in SUM_KINDS:
            raise BadParameters(f"unknown sum kind {kind!r}")
        flat = []
        for comp in components:
            if isinstance(comp, SumPosition) and comp.kind == kind:
                flat.extend(comp.components)
            else:
                flat.append(comp)
        if len(flat) < 2:
            raise BadParameters("a sum needs at least two components")
        self.kind = kind
        self.components = tuple(sorted(flat, key=lambda c: c.canonical_key()))
        self._key = f"{kind}({';'.join(c.canonical_key() for c in self.components)})"

    def __eq__(self, other):
        return isinstance(other, SumPosition) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SumPosition({self.kind!r}, {list(self.components)!r})"

    def canonical_key(self) -> str:
        return self._key

    # -- option structure ----------------------------------------------------

    def _live(self):
        """Indices of components where both players still have moves."""
        return [i for i, c in enumerate(self.components) if not c.is_terminal()]

    def _replace(self, updates: dict[int, Position]) -> "SumPosition":
        comps = [updates.get(i, c) for i, c in enumerate(self.components)]
        return SumPosition(self.kind, comps)

    def _unilateral(self, left: bool):
        def options(c):
            return c.left_options() if left else c.right_options()

        if self.kind == DISJUNCTIVE:
            out = []
            for i, comp in enumerate(self.components):
                for lbl, succ in options(comp):
                    out.append((f"{i}:{lbl}", self._replace({i: succ})))
            return tuple(out)
        # A finished conjunctive or continued sum offers no moves at all;
        # only the pick-one-component sum keeps exposing component moves
        # from its own terminal states (a one-sided component is playable
        # there until the mover runs out everywhere).
        if self.is_terminal():
            return ()
        if self.kind == CONJUNCTIVE:
            per_comp = [options(c) for c in self.components]
            indices = range(len(self.components))
        else:
            live = self._live()
            per_comp = [options(self.components[i]) for i in live]
            indices = live
        out = []
        for combo in itertools.product(*per_comp):
            label = "|".join(f"{i}:{lbl}" for i, (lbl, _) in zip(indices, combo))
            updates = {i: succ for i, (_, succ) in zip(indices, combo)}
            out.append((label, self._replace(updates)))
        return tuple(out)

    def left_options(self):
        return self._unilateral(left=True)

    def right_options(self):
        return self._unilateral(left=False)

    def is_terminal(self) -> bool:
        comps = self.components
        if self.kind == DISJUNCTIVE:
            return not (
                any(c.has_left_option() for c in comps)
                and any(c.has_right_option() for c in comps)
            )
        if self.kind == CONJUNCTIVE:
            return any(c.is_terminal() for c in comps)
        return not self._live()

    def move_matrix(self) -> MoveMatrix:
        if self.is_terminal():
            return EMPTY_MATRIX
        if self.kind == DISJUNCTIVE:
            return self._disjunctive_matrix()
        indices = (
            list(range(len(self.components)))
            if self.kind == CONJUNCTIVE
            else self._live()
        )
        left_moves = [self.components[i].left_options() for i in indices]
        right_moves = [self.components[i].right_options() for i in indices]
        rows = list(itertools.product(*left_moves))
        cols = list(itertools.product(*right_moves))
        cells = []
        for row in rows:
            line = []
            for col in cols:
                updates = {}
                for i, (llbl, _), (rlbl, _) in zip(indices, row, col):
                    updates[i] = self.components[i].joint_option(llbl, rlbl)
                line.append(self._replace(updates))
            cells.append(tuple(line))
        row_labels = tuple(
            "|".join(f"{i}:{lbl}" for i, (lbl, _) in zip(indices, row)) for row in rows
        )
        col_labels = tuple(
            "|".join(f"{i}:{lbl}" for i, (lbl, _) in zip(indices, col)) for col in cols
        )
        return MoveMatrix(row_labels, col_labels, tuple(cells))

    def _disjunctive_matrix(self) -> MoveMatrix:
        lefts = []
        rights = []
        for i, comp in enumerate(self.components):
            for lbl, succ in comp.left_options():
                lefts.append((i, lbl, succ))
            for lbl, succ in comp.right_options():
                rights.append((i, lbl, succ))
        cells = []
        for i, llbl, lsucc in lefts:
            line = []
            for j, rlbl, rsucc in rights:
                if i == j:
                    line.append(self._replace({i: self.components[i].joint_option(llbl, rlbl)}))
                else:
                    line.append(self._replace({i: lsucc, j: rsucc}))
            cells.append(tuple(line))
        return MoveMatrix(
            tuple(f"{i}:{lbl}" for i, lbl, _ in lefts),
            tuple(f"{j}:{lbl}" for j, lbl, _ in rights),
            tuple(cells),
        )

    def joint_option(self, left_label, right_label):
        matrix = self.move_matrix()
        return matrix.cells[matrix.row_labels.index(left_label)][
            matrix.col_labels.index(right_label)
        ]

    # -- terminal readings -----------------------------------------------------

    def normal_outcome(self) -> str:
        if not self.is_terminal():
            from .errors import NotTerminal

            raise NotTerminal("outcome is defined for terminal positions only")
        comps = self.components
        if self.kind == DISJUNCTIVE:
            left_ok = any(c.has_left_option() for c in comps)
            right_ok = any(c.has_right_option() for c in comps)
        elif self.kind == CONJUNCTIVE:
            done = [c for c in comps if c.is_terminal()]
            left_ok = all(c.has_left_option() for c in done)
            right_ok = all(c.has_right_option() for c in done)
        else:
            left_ok = all(c.has_left_option() for c in comps)
            right_ok = all(c.has_right_option() for c in comps)
        if left_ok and not right_ok:
            return OUTCOME_LEFT
        if right_ok and not left_ok:
            return OUTCOME_RIGHT
        return OUTCOME_DRAW

    def terminal_score(self) -> Fraction:
        if not self.is_terminal():
            from .errors import NotTerminal

            raise NotTerminal("score is defined for terminal positions only")
        if self.kind == CONJUNCTIVE:
            parts = [c for c in self.components if c.is_terminal()]
        else:
            parts = self.components
        return sum((c.component_score() for c in parts), Fraction(0))

    def component_score(self) -> Fraction:
        if self.is_terminal():
            return self.terminal_score()
        return Fraction(v_a(self))


def disjunctive(*components) -> SumPosition:
    return SumPosition(DISJUNCTIVE, components)


def conjunctive(*components) -> SumPosition:
    return SumPosition(CONJUNCTIVE, components)


def continued_conjunctive(*components) -> SumPosition:
    return SumPosition(CONTINUED, components)


def _kind_matrix(s: SumPosition, kind: str) -> MoveMatrix:
    if not isinstance(s, SumPosition) or s.kind != kind:
        raise BadParameters(f"expected a {kind!r} sum")
    return s.move_matrix()


def disjunctive_options(s: SumPosition) -> MoveMatrix:
    return _kind_matrix(s, DISJUNCTIVE)


def conjunctive_options(s: SumPosition) -> MoveMatrix:
    return _kind_matrix(s, CONJUNCTIVE)


def continued_conjunctive_options(s: SumPosition) -> MoveMatrix:
    return _kind_matrix(s, CONTINUED)
