"""Finite topologies generated by families of verifiable sets.

A sub-basis is any family of sets a user can verify membership in; its
finite intersections form a basis, and unions of basis members form the
open sets.  On a finite universe every point x has a smallest open set
U_x (the intersection of the generators containing it), and most
questions about the space reduce to comparisons of these minimal
neighborhoods: a set is open iff it contains the minimal neighborhood
of each of its points, two points are separated iff their minimal
neighborhoods are disjoint, and the deduplicated family of minimal
neighborhoods is the unique smallest basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import _kernels
from .errors import CapacityError, InvalidBasisError
from .sets import Possibilities, SetOfPossibilities, canonical_sort

DEFAULT_MAX_OPENS = 1 << 20


@dataclass(frozen=True)
class SubBasis:
    """A family of subsets of one universe, in the order given."""

    universe: Possibilities
    sets: tuple[SetOfPossibilities, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        for s in self.sets:
            if s.universe != self.universe:
                raise ValueError("sub-basis sets live in different universes")

    @classmethod
    def from_labels(
        cls, universe: Possibilities, families: Iterable[Iterable[str]]
    ) -> "SubBasis":
        return cls(universe, tuple(universe.subset(f) for f in families))


@dataclass(frozen=True)
class Topology:
    """A finite topology: its opens plus the basis that generated them.

    Instances built by ``generate_topology`` always satisfy the axioms;
    hand-built ones can be checked with ``is_topology``.
    """

    universe: Possibilities
    opens: tuple[SetOfPossibilities, ...]
    basis: tuple[SetOfPossibilities, ...]

    @cached_property
    def open_masks(self) -> frozenset:
        return frozenset(s.mask for s in self.opens)

    def is_open(self, s: SetOfPossibilities) -> bool:
        return s.mask in self.open_masks

    @cached_property
    def minimal_neighborhoods(self) -> tuple[SetOfPossibilities, ...]:
        masks = minimal_neighborhood_masks(
            self.universe.size, [b.mask for b in self.basis]
        )
        return tuple(self.universe.from_mask(m) for m in masks)


def minimal_neighborhood_masks(n_points: int, masks: Iterable[int]) -> list[int]:
    """Per point, the intersection of the given sets containing it."""
    full = (1 << n_points) - 1
    result = [full] * n_points
    for m in masks:
        rest = m
        while rest:
            x = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            result[x] &= m
    return result


def _union_closure_py(masks: Iterable[int], cap: int | None) -> set[int]:
    return _closure_py(masks, seed=0, combine=int.__or__, cap=cap)


def _intersection_closure_py(masks: Iterable[int], full: int, cap: int | None) -> set[int]:
    return _closure_py(masks, seed=full, combine=int.__and__, cap=cap)


def _closure_py(masks, seed, combine, cap):
    result = {seed}
    frontier = [seed]
    masks = list(masks)
    while frontier:
        fresh = []
        for m in frontier:
            for g in masks:
                nm = combine(m, g)
                if nm not in result:
                    if cap is not None and len(result) >= cap:
                        raise CapacityError(
                            f"closure exceeds the cap of {cap} sets", required=len(result) + 1
                        )
                    result.add(nm)
                    fresh.append(nm)
        frontier = fresh
    return result


def generate_basis(
    sb: SubBasis, *, max_sets: int | None = None
) -> list[SetOfPossibilities]:
    """Close a sub-basis under finite intersection.

    The empty intersection is the whole universe, so the result always
    contains it; the output comes back in canonical order (cardinality,
    then member indices).
    """
    n = sb.universe.size
    masks = [s.mask for s in sb.sets]
    if n <= _kernels.TABLE_MAX_POINTS:
        closed = [int(m) for m in _kernels.intersection_closure(masks, n)]
        if max_sets is not None and len(closed) > max_sets:
            raise CapacityError(
                f"closure exceeds the cap of {max_sets} sets", required=len(closed)
            )
    else:
        closed = _intersection_closure_py(masks, sb.universe.full_mask, max_sets)
    return canonical_sort(sb.universe.from_mask(m) for m in closed)


def generate_topology(
    basis: Sequence[SetOfPossibilities], *, max_opens: int | None = None
) -> Topology:
    """Close a basis under arbitrary union.

    The basis must be non-empty and cover its universe, otherwise no
    family of unions can satisfy the axioms.  The empty union
    contributes the empty set.
    """
    basis = list(basis)
    if not basis:
        raise InvalidBasisError("topology generation needs a non-empty basis")
    universe = basis[0].universe
    for s in basis:
        if s.universe != universe:
            raise ValueError("basis sets live in different universes")
    cover = 0
    for s in basis:
        cover |= s.mask
    if cover != universe.full_mask:
        raise InvalidBasisError("basis does not cover the universe")
    masks = sorted({s.mask for s in basis})
    n = universe.size
    if n <= _kernels.TABLE_MAX_POINTS:
        closed = [int(m) for m in _kernels.union_closure(masks, n)]
        if max_opens is not None and len(closed) > max_opens:
            raise CapacityError(
                f"topology exceeds the cap of {max_opens} opens", required=len(closed)
            )
    else:
        closed = _union_closure_py(masks, max_opens)
    opens = canonical_sort(universe.from_mask(m) for m in closed)
    basis_sets = canonical_sort(universe.from_mask(m) for m in masks)
    return Topology(universe, tuple(opens), tuple(basis_sets))


def topology_from_subbasis(
    sb: SubBasis, *, max_sets: int | None = None, max_opens: int | None = None
) -> Topology:
    return generate_topology(generate_basis(sb, max_sets=max_sets), max_opens=max_opens)


def discrete_topology(universe: Possibilities) -> Topology:
    return generate_topology(universe.singletons())


def indiscrete_topology(universe: Possibilities) -> Topology:
    return generate_topology([universe.full])


def is_topology(t: Topology) -> bool:
    """Exhaustively check the axioms and that the basis generates the opens."""
    if not t.opens or not t.basis:
        return False
    for s in itertools.chain(t.opens, t.basis):
        if s.universe != t.universe:
            return False
    masks = [s.mask for s in t.opens]
    mask_set = set(masks)
    if len(mask_set) != len(masks):
        return False
    full = t.universe.full_mask
    if 0 not in mask_set or full not in mask_set:
        return False
    for a, b in itertools.combinations_with_replacement(masks, 2):
        if a & b not in mask_set or a | b not in mask_set:
            return False
    basis_masks = [s.mask for s in t.basis]
    if not set(basis_masks) <= mask_set:
        return False
    for o in masks:
        union = 0
        for b in basis_masks:
            if b & ~o == 0:
                union |= b
        if union != o:
            return False
    return True


@dataclass(frozen=True)
class HausdorffVerdict:
    """Outcome of a separation check, with the first failing pair if any."""

    separated: bool
    witness: tuple[str, str] | None

    def __bool__(self) -> bool:
        return self.separated


def separation_verdict(
    universe: Possibilities, generating: Sequence[SetOfPossibilities]
) -> HausdorffVerdict:
    """Hausdorff check against any generating family (sub-basis or basis).

    Two points can be told apart by disjoint opens iff their minimal
    neighborhoods are disjoint, and those only depend on the generators.
    """
    minnb = minimal_neighborhood_masks(universe.size, [s.mask for s in generating])
    for i, j in itertools.combinations(range(universe.size), 2):
        if minnb[i] & minnb[j]:
            return HausdorffVerdict(False, (universe.labels[i], universe.labels[j]))
    return HausdorffVerdict(True, None)


def is_hausdorff(t: Topology) -> HausdorffVerdict:
    return separation_verdict(t.universe, t.basis)


def separating_pair(
    t: Topology, x1: str, x2: str
) -> tuple[SetOfPossibilities, SetOfPossibilities] | None:
    """Disjoint opens around two distinct points, or None if there are none.

    When they exist the minimal neighborhoods themselves are returned;
    any other separating pair would contain them anyway.
    """
    i = t.universe.index(x1)
    j = t.universe.index(x2)
    if i == j:
        raise ValueError(f"need two distinct points, got {x1!r} twice")
    minnb = t.minimal_neighborhoods
    if minnb[i].isdisjoint(minnb[j]):
        return (minnb[i], minnb[j])
    return None


def closed_sets(t: Topology) -> list[SetOfPossibilities]:
    return canonical_sort(o.complement() for o in t.opens)


def clopen_sets(t: Topology) -> list[SetOfPossibilities]:
    return canonical_sort(o for o in t.opens if o.complement().mask in t.open_masks)


def closed_and_clopen_sets(
    t: Topology,
) -> tuple[list[SetOfPossibilities], list[SetOfPossibilities]]:
    """Complements of opens, and the sets that are both open and closed."""
    return closed_sets(t), clopen_sets(t)


def minimal_basis(t: Topology) -> list[SetOfPossibilities]:
    """The unique smallest basis: deduplicated minimal neighborhoods."""
    masks = sorted({s.mask for s in t.minimal_neighborhoods})
    return canonical_sort(t.universe.from_mask(m) for m in masks)


def enumerate_topologies(universe: Possibilities, *, max_size: int = 4) -> list[Topology]:
    """Every topology on the universe, ordered deterministically.

    Topologies correspond one-to-one with assignments of a minimal
    neighborhood to each point subject to x in U_x and the nesting rule
    y in U_x implies U_y inside U_x; the opens are the unions of the
    assigned neighborhoods.
    """
    n = universe.size
    if n > max_size:
        raise CapacityError(
            f"enumeration over {n} points is off by default (max_size={max_size})",
            required=n,
        )
    per_point = [
        [m for m in range(1 << n) if (m >> x) & 1] for x in range(n)
    ]
    results = []
    for combo in itertools.product(*per_point):
        ok = True
        for x in range(n):
            mx = combo[x]
            rest = mx
            while rest:
                y = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if combo[y] & ~mx:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        basis_masks = sorted(set(combo))
        opens = sorted(_union_closure_py(basis_masks, None))
        results.append(
            Topology(
                universe,
                tuple(canonical_sort(universe.from_mask(m) for m in opens)),
                tuple(canonical_sort(universe.from_mask(m) for m in basis_masks)),
            )
        )
    results.sort(key=lambda t: tuple(sorted(s.mask for s in t.opens)))
    return results
