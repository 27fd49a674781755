"""Solver unit tests: frozen values, invariants, and cross-oracle checks."""

import random
from fractions import Fraction

import pytest

from simulgame.errors import BadParameters, DimensionMismatch, SizeLimit
from simulgame.matgame import (
    eliminate_dominated,
    fictitious_play,
    game_value,
    response_value,
    support_enumeration_value,
)

F = Fraction


def random_matrix(rng, max_dim=4):
    m = rng.randint(1, max_dim)
    n = rng.randint(1, max_dim)
    d = rng.choice([1, 2, 3])
    return [[F(rng.randint(-2, 2), d) for _ in range(n)] for _ in range(m)]


def check_solution(matrix, sol):
    m, n = len(matrix), len(matrix[0])
    assert all(p >= 0 for p in sol.row_mix) and sum(sol.row_mix) == 1
    assert all(q >= 0 for q in sol.col_mix) and sum(sol.col_mix) == 1
    paid = sum(
        sol.row_mix[i] * matrix[i][j] * sol.col_mix[j] for i in range(m) for j in range(n)
    )
    assert paid == sol.value
    for j in range(n):
        assert sum(sol.row_mix[i] * matrix[i][j] for i in range(m)) >= sol.value
    for i in range(m):
        assert sum(matrix[i][j] * sol.col_mix[j] for j in range(n)) <= sol.value


def test_matching_draws_value():
    # 2x2 equalization: v = (ad - bc) / (a + d - b - c) = 1/2 here.
    sol = game_value([[0, 1], [1, 0]])
    assert sol.value == F(1, 2)
    assert sol.row_mix == (F(1, 2), F(1, 2))
    assert sol.col_mix == (F(1, 2), F(1, 2))


def test_single_cell():
    sol = game_value([[F(-7, 3)]])
    assert sol.value == F(-7, 3)
    assert sol.row_mix == (F(1),) and sol.col_mix == (F(1),)


def test_tall_matrix_with_zero_rows():
    # Value matrix of the 4-square position in the two-move subtraction variant.
    sol = game_value([[-1, 1], [1, -1], [0, 0], [0, 0]])
    assert sol.value == 0
    check_solution([[F(-1), F(1)], [F(1), F(-1)], [F(0), F(0)], [F(0), F(0)]], sol)


def test_support_enumeration_matches_examples():
    assert support_enumeration_value([[0, 1], [1, 0]]) == F(1, 2)
    assert support_enumeration_value([[3]]) == 3
    assert support_enumeration_value([[0, 1], [1, 0], [1, 1]]) == 1


def test_support_enumeration_size_limit():
    with pytest.raises(SizeLimit):
        support_enumeration_value([[0] * 6 for _ in range(2)])


def test_solver_agrees_with_support_enumeration():
    rng = random.Random(7)
    for _ in range(250):
        a = random_matrix(rng)
        sol = game_value(a)
        check_solution(a, sol)
        assert sol.value == support_enumeration_value(a)


def test_role_swap_negates_value():
    rng = random.Random(11)
    for _ in range(100):
        a = random_matrix(rng)
        swapped = [[-a[i][j] for i in range(len(a))] for j in range(len(a[0]))]
        assert game_value(swapped).value == -game_value(a).value


def test_constant_shift_moves_value_only():
    rng = random.Random(13)
    for _ in range(60):
        a = random_matrix(rng)
        c = F(rng.randint(-3, 3), rng.choice([1, 2]))
        sol = game_value(a)
        shifted = game_value([[x + c for x in row] for row in a])
        assert shifted.value == sol.value + c
        support = lambda mix: tuple(i for i, p in enumerate(mix) if p > 0)
        assert support(shifted.row_mix) == support(sol.row_mix)
        assert support(shifted.col_mix) == support(sol.col_mix)


def test_eliminate_dominated_keeps_maximal_row():
    reduced, rows, cols = eliminate_dominated([[0, 0], [1, 0], [1, 1]])
    assert rows == (2,)
    assert game_value(reduced).value == 1


def test_eliminate_dominated_equal_rows_keep_lowest():
    _, rows, _ = eliminate_dominated([[0, 0], [1, 0], [1, 1], [1, 1]])
    assert rows == (2,)


def test_eliminate_dominated_preserves_value():
    rng = random.Random(17)
    for _ in range(120):
        a = random_matrix(rng)
        reduced, rows, cols = eliminate_dominated(a)
        assert rows and cols
        assert game_value(reduced).value == game_value(a).value


def test_fictitious_play_bracket():
    lo, hi = fictitious_play([[0, 1], [1, 0]], 10_000)
    assert lo <= F(1, 2) <= hi
    assert hi - lo < F(2, 100)


def test_fictitious_play_single_cell():
    assert fictitious_play([[F(5, 3)]], 1) == (F(5, 3), F(5, 3))


def test_fictitious_play_contains_value():
    rng = random.Random(19)
    for _ in range(40):
        a = random_matrix(rng, max_dim=3)
        lo, hi = fictitious_play(a, 300)
        assert lo <= game_value(a).value <= hi


def test_fictitious_play_rejects_bad_iterations():
    with pytest.raises(BadParameters):
        fictitious_play([[1]], 0)


def test_response_value():
    a = [[0, 1], [1, 0]]
    assert response_value(a, [F(1, 2), F(1, 2)]) == F(1, 2)
    assert response_value(a, [1, 0]) == 0
    with pytest.raises(DimensionMismatch):
        response_value(a, [1, 0, 0])


def test_response_of_optimal_mix_is_value():
    rng = random.Random(23)
    for _ in range(60):
        a = random_matrix(rng)
        sol = game_value(a)
        assert response_value(a, sol.row_mix) == sol.value


def test_rejects_empty_matrix():
    with pytest.raises(BadParameters):
        game_value([])
    with pytest.raises(BadParameters):
        game_value([[1], [2, 3]])
