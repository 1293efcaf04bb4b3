import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from veritop import (
    DivergenceError,
    RunReport,
    Script,
    ScriptedTest,
    SequentialTest,
    VerifyOutcome,
    run_all,
    run_any,
)
from oracles import dovetail_brute, run_all_brute

steps = st.one_of(st.none(), st.integers(1, 15))
script_lists = st.lists(steps, min_size=1, max_size=8)


def scripted(ks):
    return [ScriptedTest(Script(k)) for k in ks]


def report_tuple(r: RunReport):
    return (r.outcome.value, r.winner_index, r.round, r.total_steps, r.rounds_completed)


class TestRunAll:
    def test_two_successes(self):
        ks = [3, 5]
        assert run_all_brute(ks, 100) == ("success", 8)
        r = run_all(scripted(ks), fuel=100)
        assert r.succeeded and r.total_steps == 8

    def test_short_scripts(self):
        ks = [2, 3]
        assert run_all_brute(ks, 100) == ("success", 5)
        r = run_all(scripted(ks), fuel=100)
        assert r.succeeded and r.total_steps == 5

    def test_divergent_member_exhausts_all_fuel(self):
        ks = [2, None]
        assert run_all_brute(ks, 50) == ("exhausted", 50)
        r = run_all(scripted(ks), fuel=50)
        assert not r.succeeded
        assert r.total_steps == 50
        assert r.rounds_completed == 0

    def test_exact_fuel_boundary(self):
        assert run_all(scripted([3, 5]), fuel=8).succeeded
        assert not run_all(scripted([3, 5]), fuel=7).succeeded

    def test_unbounded_success(self):
        r = run_all(scripted([4, 4]))
        assert r.succeeded and r.total_steps == 8

    def test_unbounded_divergence_rejected(self):
        with pytest.raises(DivergenceError):
            run_all(scripted([2, None]))

    def test_validation(self):
        with pytest.raises(ValueError):
            run_all([])
        with pytest.raises(ValueError):
            run_all(scripted([1]), fuel=0)

    @given(script_lists, st.integers(1, 200))
    def test_matches_brute(self, ks, fuel):
        outcome, total = run_all_brute(ks, fuel)
        r = run_all(scripted(ks), fuel=fuel)
        assert (r.outcome.value, r.total_steps) == (outcome, total)
        assert r.winner_index is None and r.round is None
        assert r.rounds_completed == (1 if r.succeeded else 0)

    @given(script_lists, st.integers(1, 200))
    def test_generic_path_matches_kernel_path(self, ks, fuel):
        fast = run_all(scripted(ks), fuel=fuel)
        # A single sequential wrapper falls off the all-scripted fast path.
        slow = run_all([SequentialTest(scripted(ks))], fuel=fuel)
        assert report_tuple(fast) == report_tuple(slow)


class TestRunAny:
    def test_later_test_wins_over_divergent_first(self):
        ks = [None, 5]
        assert dovetail_brute(ks, None) == ("success", 2, 5, 29, 5)
        r = run_any(scripted(ks), fuel=100)
        assert report_tuple(r) == ("success", 2, 5, 29, 5)

    def test_unbounded_run_terminates_on_eventual_success(self):
        r = run_any(scripted([None, 7]))
        assert dovetail_brute([None, 7], None) == ("success", 2, 7, 55, 7)
        assert report_tuple(r) == ("success", 2, 7, 55, 7)

    def test_exhaustion_reports_completed_rounds(self):
        assert dovetail_brute([None, 7], 50) == ("exhausted", None, None, 50, 6)
        r = run_any(scripted([None, 7]), fuel=50)
        assert report_tuple(r) == ("exhausted", None, None, 50, 6)

    def test_immediate_winner(self):
        r = run_any(scripted([1, 1]), fuel=10)
        assert report_tuple(r) == ("success", 1, 1, 1, 1)

    def test_all_divergent_unbounded_rejected(self):
        with pytest.raises(DivergenceError):
            run_any(scripted([None, None]))

    def test_all_divergent_with_fuel_exhausts(self):
        r = run_any(scripted([None, None]), fuel=37)
        assert not r.succeeded
        assert r.total_steps == 37

    def test_validation(self):
        with pytest.raises(ValueError):
            run_any([])
        with pytest.raises(ValueError):
            run_any(scripted([1]), fuel=-3)

    @given(script_lists, st.integers(1, 300))
    def test_matches_brute(self, ks, fuel):
        expected = dovetail_brute(ks, fuel)
        r = run_any(scripted(ks), fuel=fuel)
        assert report_tuple(r) == expected

    @given(script_lists)
    def test_unbounded_matches_brute(self, ks):
        if all(k is None for k in ks):
            with pytest.raises(DivergenceError):
                run_any(scripted(ks))
            return
        expected = dovetail_brute(ks, None)
        r = run_any(scripted(ks))
        assert report_tuple(r) == expected

    @given(script_lists, st.integers(1, 300))
    def test_generic_path_matches_kernel_path(self, ks, fuel):
        fast = run_any(scripted(ks), fuel=fuel)
        # Feeding a generator forces the step-by-step dovetail machine.
        slow = run_any(iter(scripted(ks)), fuel=fuel)
        assert report_tuple(fast) == report_tuple(slow)

    def test_infinite_stream_with_a_success(self):
        def tests():
            yield ScriptedTest(Script.diverge())
            yield ScriptedTest(Script.succeed_at(3))
            while True:
                yield ScriptedTest(Script.diverge())

        r = run_any(tests())
        assert r.succeeded
        assert r.winner_index == 2
        assert report_tuple(r) == dovetail_brute([None, 3] + [None] * 10, None)

    def test_infinite_stream_exhausts_at_fuel(self):
        r = run_any((ScriptedTest(Script.diverge()) for _ in itertools.count()), fuel=37)
        assert not r.succeeded
        assert r.total_steps == 37

    @given(script_lists, st.integers(1, 300))
    def test_success_report_invariants(self, ks, fuel):
        r = run_any(scripted(ks), fuel=fuel)
        if r.succeeded:
            assert 1 <= r.winner_index <= min(r.round, len(ks))
            assert r.rounds_completed == r.round
            assert ks[r.winner_index - 1] is not None
            assert r.total_steps <= fuel
        else:
            assert r.total_steps == fuel

    def test_determinism(self):
        ks = [None, 4, 2, None, 6]
        reports = {report_tuple(run_any(scripted(ks), fuel=90)) for _ in range(5)}
        assert len(reports) == 1


class TestRunReport:
    def test_to_text_success(self):
        r = run_any(scripted([None, 5]), fuel=100)
        assert r.to_text() == (
            "outcome: success\n"
            "winner_index: 2\n"
            "round: 5\n"
            "total_steps: 29\n"
            "rounds_completed: 5"
        )

    def test_to_text_exhausted_uses_dash(self):
        r = run_any(scripted([None]), fuel=5)
        lines = r.to_text().splitlines()
        assert "winner_index: -" in lines and "round: -" in lines
