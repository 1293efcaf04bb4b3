"""Finite universes of possibilities and their subsets.

A universe is an ordered tuple of distinct point labels.  Subsets are
stored as integer bitmasks (bit i set means the point with index i is a
member), which keeps intersection, union and containment cheap no matter
how many sets a construction churns through.  Python integers carry the
masks, so universes larger than a machine word still work; the size cap
exists to keep accidental blow-ups loud, not because of the encoding.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CapacityError

DEFAULT_MAX_POINTS = 64
MAX_POINTS_ENV = "VERITOP_MAX_POINTS"


def max_points() -> int:
    """Universe-size cap; override with the VERITOP_MAX_POINTS env var."""
    raw = os.environ.get(MAX_POINTS_ENV)
    if raw is None:
        return DEFAULT_MAX_POINTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_POINTS_ENV} must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValueError(f"{MAX_POINTS_ENV} must be at least 2, got {value}")
    return value


@dataclass(frozen=True)
class Possibilities:
    """An ordered universe of at least two distinct point labels.

    ``size_limit`` defaults to the global cap; constructions that build
    large derived universes (for example spaces of functions) pass their
    own limit instead of asking the user to raise the global one.
    """

    labels: tuple[str, ...]
    size_limit: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 2:
            raise ValueError("a universe needs at least two points")
        if any(not isinstance(x, str) or not x for x in labels):
            raise ValueError("point labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("point labels must be distinct")
        cap = self.size_limit if self.size_limit is not None else max_points()
        if len(labels) > cap:
            raise CapacityError(
                f"universe has {len(labels)} points but the cap is {cap}"
                f" (set {MAX_POINTS_ENV} to raise it)",
                required=len(labels),
            )
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown point label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> "SetOfPossibilities":
        mask = 0
        for x in labels:
            mask |= 1 << self.index(x)
        return SetOfPossibilities(self, mask)

    def from_mask(self, mask: int) -> "SetOfPossibilities":
        return SetOfPossibilities(self, mask)

    @property
    def empty(self) -> "SetOfPossibilities":
        return SetOfPossibilities(self, 0)

    @property
    def full(self) -> "SetOfPossibilities":
        return SetOfPossibilities(self, self.full_mask)

    def singletons(self) -> list["SetOfPossibilities"]:
        return [SetOfPossibilities(self, 1 << i) for i in range(self.size)]

    def all_subsets(self) -> Iterator["SetOfPossibilities"]:
        """Every subset, in mask order.  Only sensible for small universes."""
        for mask in range(1 << self.size):
            yield SetOfPossibilities(self, mask)


@dataclass(frozen=True)
class SetOfPossibilities:
    """A subset of a universe, stored as a bitmask."""

    universe: Possibilities
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.universe.full_mask:
            raise ValueError(f"mask {self.mask:#x} out of range for universe")

    # -- set algebra ------------------------------------------------------

    def _check_same_universe(self, other: "SetOfPossibilities") -> None:
        if self.universe != other.universe:
            raise ValueError("sets live in different universes")

    def __and__(self, other: "SetOfPossibilities") -> "SetOfPossibilities":
        self._check_same_universe(other)
        return SetOfPossibilities(self.universe, self.mask & other.mask)

    def __or__(self, other: "SetOfPossibilities") -> "SetOfPossibilities":
        self._check_same_universe(other)
        return SetOfPossibilities(self.universe, self.mask | other.mask)

    def complement(self) -> "SetOfPossibilities":
        return SetOfPossibilities(self.universe, self.mask ^ self.universe.full_mask)

    def issubset(self, other: "SetOfPossibilities") -> bool:
        self._check_same_universe(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "SetOfPossibilities") -> bool:
        self._check_same_universe(other)
        return self.mask & other.mask == 0

    # -- inspection -------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == self.universe.full_mask

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, label: str) -> bool:
        return (self.mask >> self.universe.index(label)) & 1 == 1

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.universe.size) if (self.mask >> i) & 1)

    def members(self) -> tuple[str, ...]:
        return tuple(self.universe.labels[i] for i in self.indices())

    # -- ordering and rendering --------------------------------------------

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: cardinality first, then member indices."""
        return (self.cardinality, self.indices())

    def render(self) -> str:
        return "{" + ",".join(self.members()) + "}"

    def __repr__(self) -> str:
        return f"SetOfPossibilities({self.render()})"


def canonical_sort(sets: Iterable[SetOfPossibilities]) -> list[SetOfPossibilities]:
    """Sort by cardinality, breaking ties by member indices."""
    return sorted(sets, key=SetOfPossibilities.sort_key)
