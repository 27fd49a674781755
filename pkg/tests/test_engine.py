"""Engine behaviour: evaluation, memoization, profiles, keys."""

import random
from fractions import Fraction

import pytest

from simulgame.engine import (
    NORMAL,
    SCORING,
    Memo,
    canonical_key,
    evaluate,
    guarantee_profile,
    is_terminal,
    move_matrix,
    outcome,
)
from simulgame.errors import LoopyGame, UnknownRuleset
from simulgame.position import Position, score
from simulgame.rulesets import clobber_strip, hb_stalk, sq
from simulgame.sums import disjunctive

F = Fraction


def test_strip_values():
    memo = Memo()
    values = [evaluate(sq({1}, {2}, n), NORMAL, memo=memo).ex for n in range(8)]
    assert values == [0, 1, 0, F(1, 2), F(1, 2), F(1, 4), F(1, 2), F(3, 8)]


def test_terminal_reports():
    report = evaluate(sq({1}, {2}, 1), NORMAL)
    assert report.terminal and report.ex == 1
    assert report.left_mix == () and report.right_mix == ()


def test_mixes_certify_value():
    memo = Memo()
    for position in (sq({1}, {2}, 6), sq({1, 4}, {2}, 4, primed=True), hb_stalk("BRBR")):
        report = evaluate(position, NORMAL, memo=memo)
        matrix = position.move_matrix()
        values = [
            [evaluate(cell, NORMAL, memo=memo).ex for cell in row] for row in matrix.cells
        ]
        paid = sum(
            report.left_mix[i] * values[i][j] * report.right_mix[j]
            for i in range(len(values))
            for j in range(len(values[0]))
        )
        assert paid == report.ex
        assert sum(report.left_mix) == 1 and sum(report.right_mix) == 1


def test_value_between_maximin_and_minimax():
    memo = Memo()
    rng = random.Random(3)
    sample = [sq({1}, {2}, n) for n in range(3, 9)]
    sample += [sq({1}, {3}, n) for n in range(4, 9)]
    sample += [hb_stalk("".join(rng.choice("BR") for _ in range(4))) for _ in range(6)]
    for position in sample:
        if position.is_terminal():
            continue
        matrix = position.move_matrix()
        values = [
            [evaluate(cell, NORMAL, memo=memo).ex for cell in row] for row in matrix.cells
        ]
        ex = evaluate(position, NORMAL, memo=memo).ex
        maximin = max(min(row) for row in values)
        minimax = min(max(col) for col in zip(*values))
        assert maximin <= ex <= minimax
        assert -1 <= ex <= 1


def test_memo_on_equals_memo_off():
    sample = [sq({1}, {2}, 6), sq({1}, {2}, 5, primed=True), clobber_strip("OOXO"), hb_stalk("BRB")]
    sample.append(disjunctive(sq({1}, {2}, 2), sq({1}, {2}, 3)))
    for position in sample:
        for convention in (NORMAL, SCORING):
            with_memo = evaluate(position, convention, memo=Memo())
            without = evaluate(position, convention, memo=Memo(limit=0))
            assert with_memo == without


def test_repeated_calls_identical():
    memo = Memo()
    p = sq({1}, {2}, 7)
    assert evaluate(p, NORMAL, memo=memo) == evaluate(p, NORMAL, memo=memo)


def test_memo_limit_caps_entries():
    memo = Memo(limit=3)
    evaluate(sq({1}, {2}, 8), NORMAL, memo=memo)
    assert len(memo) <= 3


class _Loop(Position):
    ruleset_tag = "loop"

    def left_options(self):
        return (("l", self),)

    def right_options(self):
        return (("r", self),)

    def joint_option(self, left_label, right_label):
        return self

    def canonical_key(self):
        return "loop"


def test_loop_detection():
    with pytest.raises(LoopyGame):
        evaluate(_Loop(), NORMAL, memo=Memo())


def test_foreign_objects_rejected():
    with pytest.raises(UnknownRuleset):
        move_matrix("not a position")
    with pytest.raises(UnknownRuleset):
        canonical_key(42)


def test_is_terminal_wrapper():
    assert is_terminal(sq({1}, {2}, 0))
    assert not is_terminal(sq({1}, {2}, 2))


def test_canonical_key_commutes_for_sums():
    a, b = sq({1}, {2}, 3), sq({1}, {2}, 2)
    assert canonical_key(disjunctive(a, b)) == canonical_key(disjunctive(b, a))


def test_canonical_key_separates_rulesets_and_states():
    assert canonical_key(sq({1}, {2}, 3)) != canonical_key(sq({2}, {1}, 3))
    assert canonical_key(hb_stalk("BR")) != canonical_key(hb_stalk("RB"))


def test_role_swap_negates_values():
    memo = Memo()
    sample = [sq({1}, {2}, n) for n in range(7)]
    sample += [sq({1}, {2}, n, primed=True) for n in range(7)]
    sample += [hb_stalk(s) for s in ("B", "BR", "BRB", "BBRB", "RRB")]
    for position in sample:
        swapped = position.swap_roles()
        assert evaluate(swapped, NORMAL, memo=memo).ex == -evaluate(position, NORMAL, memo=memo).ex
        prof = guarantee_profile(position, NORMAL, memo=memo)
        swapped_prof = guarantee_profile(swapped, NORMAL, memo=memo)
        assert (swapped_prof.ell, swapped_prof.arr) == (prof.arr, prof.ell)


def test_profile_of_terminal_left_win():
    prof = guarantee_profile(sq({1}, {2}, 1), NORMAL)
    assert (prof.ell, prof.arr) == (1, 0)
    assert prof.left_forces_win and prof.right_cannot_win
    assert not prof.left_cannot_win and not prof.right_forces_win


def test_profile_of_strip_equals_value():
    memo = Memo()
    for n in range(9):
        p = sq({1}, {2}, n)
        prof = guarantee_profile(p, NORMAL, memo=memo)
        assert prof.ell == evaluate(p, NORMAL, memo=memo).ex
        assert prof.arr == 0


def test_profile_of_drawn_stalk():
    prof = guarantee_profile(hb_stalk("BR"), NORMAL)
    assert (prof.ell, prof.arr) == (0, 0)
    assert prof.left_cannot_win and prof.right_cannot_win


def test_profile_bounds():
    memo = Memo()
    sample = [sq({1, 4}, {2}, n, primed=True) for n in range(7)]
    sample += [hb_stalk(s) for s in ("BRBR", "BBR", "RRBB")]
    for position in sample:
        prof = guarantee_profile(position, NORMAL, memo=memo)
        assert 0 <= prof.ell and 0 <= prof.arr
        assert prof.ell + prof.arr <= 1


def test_outcome_classification():
    memo = Memo()
    assert outcome(score(0), NORMAL, memo=memo) == "D"
    assert outcome(sq({1}, {2}, 1), NORMAL, memo=memo) == "L"
    assert outcome(sq({1}, {2}, 3), NORMAL, memo=memo) == "L"
    assert outcome(hb_stalk("BR"), NORMAL, memo=memo) == "D"
    assert outcome(hb_stalk("BR").swap_roles(), NORMAL, memo=memo) == "D"
    assert outcome(sq({1}, {2}, 4, primed=True), NORMAL, memo=memo) == "?"


def test_memo_insertion_idempotent():
    memo = Memo()
    memo.put(("k", NORMAL, None), 1)
    memo.put(("k", NORMAL, None), 1)
    with pytest.raises(AssertionError):
        memo.put(("k", NORMAL, None), 2)
