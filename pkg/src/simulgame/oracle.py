"""Independent brute-force evaluator used to certify the engine.

Shares only the position model with the engine: backward induction here
uses exhaustive support enumeration for every matrix value, never the
simplex solver, and keeps its own table.  Bounded to small games on
purpose; raises SizeLimit beyond the bounds.
"""

from __future__ import annotations

from fractions import Fraction

from .engine import ARR, ELL, NORMAL, GuaranteeProfile, _terminal_payoff
from .errors import LoopyGame, SizeLimit
from .matgame import support_enumeration_value
from .position import Position, require_position

MAX_POSITIONS = 100_000
MAX_SIDE = 5


def brute_ex(
    p: Position, convention: str = NORMAL, *, transform=None, max_positions: int = MAX_POSITIONS
) -> Fraction:
    """Expected value by pure enumeration."""
    require_position(p)
    seen: dict = {}
    return _brute(p, convention, transform, seen, frozenset(), max_positions)


def _brute(p, convention, transform, seen, path, max_positions) -> Fraction:
    key = p.canonical_key()
    if key in seen:
        return seen[key]
    if key in path:
        raise LoopyGame(f"position repeats along a play line: {key}")
    if len(seen) >= max_positions:
        raise SizeLimit(f"more than {max_positions} distinct positions")
    if p.is_terminal():
        value = _terminal_payoff(p, convention, transform)
    else:
        matrix = p.move_matrix()
        if len(matrix.row_labels) > MAX_SIDE or len(matrix.col_labels) > MAX_SIDE:
            raise SizeLimit(
                f"{len(matrix.row_labels)}x{len(matrix.col_labels)} matrix exceeds "
                f"the oracle bound of {MAX_SIDE}"
            )
        below = path | {key}
        values = [
            [_brute(cell, convention, transform, seen, below, max_positions) for cell in row]
            for row in matrix.cells
        ]
        value = support_enumeration_value(values)
    seen[key] = value
    return value


def brute_profile(p: Position, convention: str = NORMAL) -> GuaranteeProfile:
    """Security probabilities via the enumeration oracle."""
    ell = brute_ex(p, convention, transform=ELL)
    arr = -brute_ex(p, convention, transform=ARR)
    return GuaranteeProfile(ell, arr)
