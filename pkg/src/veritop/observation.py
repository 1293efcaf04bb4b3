"""Semidecidable tests and the observations they verify.

A test is a resettable machine stepped in discrete time.  Each step
either reports that the test is still running or that it has succeeded;
success is absorbing and a machine must be reset before it can run
again.  A test may simply never succeed, and no caller can tell that
apart from "not yet" by watching finitely many steps.

An observation pairs a statement about a hidden state of affairs with a
test that succeeds exactly when the statement is true.  Observations
combine through finite conjunction (run the tests one after another)
and countable disjunction (dovetail fresh runs of ever-longer budgets).
There is deliberately no negation: failing to see a success is not
evidence of anything.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .sets import SetOfPossibilities


class StepOutcome(enum.Enum):
    RUNNING = "running"
    SUCCEEDED = "succeeded"


class VerifyOutcome(enum.Enum):
    SUCCESS = "success"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Script:
    """Deterministic behaviour of a leaf test.

    ``steps_to_success`` gives the step on which the test succeeds;
    ``None`` means it runs forever.
    """

    steps_to_success: int | None

    def __post_init__(self):
        k = self.steps_to_success
        if k is not None and k < 1:
            raise ValueError(f"steps_to_success must be at least 1, got {k}")

    @classmethod
    def succeed_at(cls, k: int) -> "Script":
        return cls(k)

    @classmethod
    def diverge(cls) -> "Script":
        return cls(None)

    @property
    def diverges(self) -> bool:
        return self.steps_to_success is None


class ExperimentalTest(ABC):
    """A resettable step machine with absorbing success."""

    @abstractmethod
    def step(self) -> StepOutcome:
        """Advance one step.  Raises if called after success."""

    @abstractmethod
    def reset(self) -> None:
        """Restore the initial state exactly."""

    def _already_succeeded(self) -> RuntimeError:
        return RuntimeError("test already succeeded; reset it before stepping again")


class ScriptedTest(ExperimentalTest):
    """Leaf test that follows a script."""

    def __init__(self, script: Script):
        self.script = script
        self._steps = 0
        self._finished = False

    def reset(self) -> None:
        self._steps = 0
        self._finished = False

    def step(self) -> StepOutcome:
        if self._finished:
            raise self._already_succeeded()
        self._steps += 1
        if self.script.steps_to_success == self._steps:
            self._finished = True
            return StepOutcome.SUCCEEDED
        return StepOutcome.RUNNING


class SequentialTest(ExperimentalTest):
    """Runs each child to completion in order; succeeds when the last does.

    One step of this machine is one step of the current child, so the
    total step count is the sum of the children's counts.  If any child
    never succeeds the whole machine never does.
    """

    def __init__(self, children: Sequence[ExperimentalTest]):
        self._children = tuple(children)
        if not self._children:
            raise ValueError("a conjunction needs at least one test")
        self._cursor = 0
        self._finished = False
        self.reset()

    def reset(self) -> None:
        for child in self._children:
            child.reset()
        self._cursor = 0
        self._finished = False

    def step(self) -> StepOutcome:
        if self._finished:
            raise self._already_succeeded()
        outcome = self._children[self._cursor].step()
        if outcome is StepOutcome.SUCCEEDED:
            self._cursor += 1
            if self._cursor == len(self._children):
                self._finished = True
                return StepOutcome.SUCCEEDED
        return StepOutcome.RUNNING


class LazyStream:
    """Caches a possibly infinite iterable for indexed access."""

    def __init__(self, items: Iterable):
        if isinstance(items, LazyStream):
            self._iter = items.iter_items()
        else:
            self._iter = iter(items)
        self._cache: list = []
        self._exhausted = False

    def get(self, i: int):
        """Item at index i, or None once the stream has ended before it."""
        while len(self._cache) <= i and not self._exhausted:
            try:
                self._cache.append(next(self._iter))
            except StopIteration:
                self._exhausted = True
        return self._cache[i] if i < len(self._cache) else None

    def length_if_known(self) -> int | None:
        return len(self._cache) if self._exhausted else None

    def iter_items(self) -> Iterator:
        i = 0
        while True:
            item = self.get(i)
            if item is None:
                return
            yield item
            i += 1

    def map(self, fn: Callable) -> "LazyStream":
        return LazyStream(fn(item) for item in self.iter_items())


class DovetailTest(ExperimentalTest):
    """Interleaves a countable stream of tests by rounds.

    Round n gives each of the first n tests (or as many as the stream
    has) a fresh n-step run, in index order; the first success wins.  A
    run is fresh in the strict sense: the child is reset before it, so
    partial progress from earlier rounds is thrown away.
    """

    def __init__(self, tests: Iterable[ExperimentalTest] | LazyStream):
        self._stream = tests if isinstance(tests, LazyStream) else LazyStream(tests)
        if self._stream.get(0) is None:
            raise ValueError("a disjunction needs at least one test")
        self._finished = False
        self.reset()

    def reset(self) -> None:
        self._finished = False
        self._round = 1
        self._slot = 1
        self._slot_steps = 0
        self._rounds_completed = 0
        self._winner = None
        self._winning_round = None
        self._current = self._stream.get(0)
        self._current.reset()

    @property
    def winner_index(self) -> int | None:
        """1-based stream position of the winning test, once there is one."""
        return self._winner

    @property
    def winning_round(self) -> int | None:
        return self._winning_round

    @property
    def rounds_completed(self) -> int:
        return self._rounds_completed

    def step(self) -> StepOutcome:
        if self._finished:
            raise self._already_succeeded()
        outcome = self._current.step()
        self._slot_steps += 1
        if outcome is StepOutcome.SUCCEEDED:
            self._finished = True
            self._winner = self._slot
            self._winning_round = self._round
            self._rounds_completed = self._round
            return StepOutcome.SUCCEEDED
        if self._slot_steps >= self._round:
            self._advance_slot()
        return StepOutcome.RUNNING

    def _advance_slot(self) -> None:
        nxt = self._slot + 1
        while nxt > self._round or self._stream.get(nxt - 1) is None:
            # Round over, either by budget or because the stream is shorter.
            self._rounds_completed = self._round
            self._round += 1
            nxt = 1
        self._slot = nxt
        self._current = self._stream.get(nxt - 1)
        self._current.reset()
        self._slot_steps = 0


@dataclass(frozen=True)
class Statement:
    """A classical predicate over hidden states of affairs."""

    predicate: Callable[[object], bool]
    text: str = ""

    def holds(self, state) -> bool:
        return bool(self.predicate(state))


@dataclass(frozen=True)
class Observation:
    """A statement tied to a test that succeeds exactly when it is true.

    ``verifiable_set`` optionally records which possibilities the
    observation picks out of a finite universe; combinators propagate it
    when every input carries one.
    """

    statement: Statement
    test: ExperimentalTest
    verifiable_set: SetOfPossibilities | None = None


def membership_observation(
    members: SetOfPossibilities, actual: str, *, succeed_step: int = 1
) -> Observation:
    """Observation that the hidden point lies in ``members``.

    ``actual`` plays the ground truth: the scripted test succeeds (at
    ``succeed_step``) exactly when the actual point is a member.
    """
    if actual in members:
        script = Script.succeed_at(succeed_step)
    else:
        script = Script.diverge()
    statement = Statement(lambda state: state in members, text=f"point in {members.render()}")
    return Observation(statement, ScriptedTest(script), members)


def conjunction(observations: Sequence[Observation]) -> Observation:
    """Finite AND: statements conjoined, tests run back to back."""
    obs = list(observations)
    if not obs:
        raise ValueError("a conjunction needs at least one observation")
    statement = Statement(
        lambda state: all(o.statement.holds(state) for o in obs),
        text="(" + " and ".join(o.statement.text or "?" for o in obs) + ")",
    )
    test = SequentialTest([o.test for o in obs])
    vset = None
    if all(o.verifiable_set is not None for o in obs):
        vset = obs[0].verifiable_set
        for o in obs[1:]:
            vset = vset & o.verifiable_set
    return Observation(statement, test, vset)


def disjunction(observations: Iterable[Observation]) -> Observation:
    """Countable OR: statements disjoined, tests dovetailed.

    The input may be an infinite iterable; it is consumed lazily.  The
    verifiable set is computed only when the input is a concrete
    sequence whose members all carry one (finiteness of an arbitrary
    iterable cannot be checked without running it forever).
    """
    stream = LazyStream(observations)
    if stream.get(0) is None:
        raise ValueError("a disjunction needs at least one observation")
    statement = Statement(
        lambda state: any(o.statement.holds(state) for o in stream.iter_items()),
        text="(or ...)",
    )
    test = DovetailTest(stream.map(lambda o: o.test))
    vset = None
    if isinstance(observations, Sequence):
        if all(o.verifiable_set is not None for o in observations):
            vset = observations[0].verifiable_set
            for o in observations[1:]:
                vset = vset | o.verifiable_set
    return Observation(statement, test, vset)


def is_contradiction(observation: Observation) -> bool:
    """True when the observation can never be made of any possibility."""
    if observation.verifiable_set is None:
        raise ValueError("observation carries no verifiable set")
    return observation.verifiable_set.is_empty


def incompatible(first: Observation, second: Observation) -> bool:
    """True when the two observations can never both be made."""
    if first.verifiable_set is None or second.verifiable_set is None:
        raise ValueError("both observations need verifiable sets")
    return is_contradiction(conjunction([first, second]))


def verify(observation: Observation, fuel: int) -> VerifyOutcome:
    """Run the observation's test from a reset for at most ``fuel`` steps."""
    if fuel < 1:
        raise ValueError(f"fuel must be at least 1, got {fuel}")
    machine = observation.test
    machine.reset()
    for _ in range(fuel):
        if machine.step() is StepOutcome.SUCCEEDED:
            return VerifyOutcome.SUCCESS
    return VerifyOutcome.EXHAUSTED
