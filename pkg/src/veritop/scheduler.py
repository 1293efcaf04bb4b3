"""Executors that drive test machines under a step budget.

``run_all`` runs a finite list of tests back to back and succeeds when
every one of them has; ``run_any`` dovetails a stream of tests and
succeeds on the first individual success.  Both count every step taken,
including steps of runs that are later thrown away.

Lists of purely scripted tests are dispatched to kernels; anything else
is driven step by step through the generic machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import DivergenceError
from .observation import (
    DovetailTest,
    ExperimentalTest,
    LazyStream,
    ScriptedTest,
    SequentialTest,
    StepOutcome,
    VerifyOutcome,
)


@dataclass(frozen=True)
class RunReport:
    """What an executor did with its fuel.

    ``winner_index`` and ``round`` are 1-based and only set for a
    dovetailed success; ``rounds_completed`` is the winning round on
    success and the last fully finished round on exhaustion.  For
    ``run_all`` the single sequential pass counts as round 1.
    """

    outcome: VerifyOutcome
    winner_index: int | None
    round: int | None
    total_steps: int
    rounds_completed: int

    @property
    def succeeded(self) -> bool:
        return self.outcome is VerifyOutcome.SUCCESS

    def to_text(self) -> str:
        def show(value):
            return "-" if value is None else str(value)

        return "\n".join(
            [
                f"outcome: {self.outcome.value}",
                f"winner_index: {show(self.winner_index)}",
                f"round: {show(self.round)}",
                f"total_steps: {self.total_steps}",
                f"rounds_completed: {self.rounds_completed}",
            ]
        )


def _check_fuel(fuel: int | None) -> None:
    if fuel is not None and fuel < 1:
        raise ValueError(f"fuel must be at least 1, got {fuel}")


def _scripts_of(tests: Sequence[ExperimentalTest]) -> list[int] | None:
    if not isinstance(tests, Sequence):
        return None
    ks = []
    for t in tests:
        if not isinstance(t, ScriptedTest):
            return None
        ks.append(t.script.steps_to_success or 0)
    return ks


def _drive(machine: ExperimentalTest, fuel: int | None) -> tuple[bool, int]:
    machine.reset()
    total = 0
    while fuel is None or total < fuel:
        outcome = machine.step()
        total += 1
        if outcome is StepOutcome.SUCCEEDED:
            return True, total
    return False, total


def run_all(tests: Sequence[ExperimentalTest], fuel: int | None = None) -> RunReport:
    """Run every test to completion, in order.  Succeeds iff all do."""
    _check_fuel(fuel)
    tests = list(tests)
    if not tests:
        raise ValueError("run_all needs at least one test")
    ks = _scripts_of(tests)
    if ks is not None:
        if fuel is None:
            if any(k == 0 for k in ks):
                raise DivergenceError("a test never succeeds; an unbounded run would not end")
            fuel_for_kernel = sum(ks)
        else:
            fuel_for_kernel = fuel
        status, total = _kernels.run_all_scripted(ks, fuel_for_kernel)
        success = status == 1
    else:
        success, total = _drive(SequentialTest(tests), fuel)
    return RunReport(
        outcome=VerifyOutcome.SUCCESS if success else VerifyOutcome.EXHAUSTED,
        winner_index=None,
        round=None,
        total_steps=total,
        rounds_completed=1 if success else 0,
    )


def _dovetail_fuel_bound(ks: Sequence[int]) -> int:
    # The winner fires by round N* = min over succeeding tests of
    # max(position, k); complete rounds 1..N* cost at most the sum of
    # their squares, which therefore bounds the winning step count.
    n_star = min(max(i + 1, k) for i, k in enumerate(ks) if k > 0)
    return n_star * (n_star + 1) * (2 * n_star + 1) // 6


def run_any(tests: Iterable[ExperimentalTest], fuel: int | None = None) -> RunReport:
    """Dovetail a stream of tests; the first success wins.

    With ``fuel=None`` the run is unbounded: it terminates exactly when
    some test in the stream eventually succeeds (round-robin budgets
    guarantee every test gets arbitrarily long fresh runs), except that
    a fully scripted list of never-succeeding tests is rejected upfront.
    """
    _check_fuel(fuel)
    ks = _scripts_of(tests) if isinstance(tests, Sequence) else None
    if ks is not None:
        if not ks:
            raise ValueError("run_any needs at least one test")
        if fuel is None:
            if all(k == 0 for k in ks):
                raise DivergenceError("no test ever succeeds; an unbounded run would not end")
            fuel_for_kernel = _dovetail_fuel_bound(ks)
        else:
            fuel_for_kernel = fuel
        status, winner, rnd, total, done = _kernels.dovetail_any_scripted(ks, fuel_for_kernel)
        if status == 1:
            return RunReport(VerifyOutcome.SUCCESS, winner, rnd, total, done)
        return RunReport(VerifyOutcome.EXHAUSTED, None, None, total, done)
    machine = DovetailTest(LazyStream(tests))
    success, total = _drive(machine, fuel)
    if success:
        return RunReport(
            VerifyOutcome.SUCCESS,
            machine.winner_index,
            machine.winning_round,
            total,
            machine.rounds_completed,
        )
    return RunReport(VerifyOutcome.EXHAUSTED, None, None, total, machine.rounds_completed)
