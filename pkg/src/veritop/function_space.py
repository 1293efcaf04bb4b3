"""Spaces of continuous maps and topologies on them.

The continuous maps X -> Y form a finite universe of their own (one
point per map, in lexicographic order of value tuples).  Given a basis
on each side, the sets V(B, C) = "maps sending B into C" generate the
basis-to-basis topology; letting B and C range over all opens instead
gives the open-open topology.  Materializing either can blow up, the
separation and comparison checks therefore work from the generating
sets through minimal neighborhoods, which is equivalent on finite
universes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import _kernels
from .errors import CapacityError, InvalidBasisError
from .sets import Possibilities, SetOfPossibilities, canonical_sort
from .relationship import PointMap
from .topology import (
    HausdorffVerdict,
    SubBasis,
    Topology,
    generate_basis,
    generate_topology,
    minimal_neighborhood_masks,
    separation_verdict,
)

DEFAULT_ENUMERATION_CAP = 1 << 18
_KERNEL_MASK_BITS = 62


@dataclass(frozen=True)
class FunctionSpace:
    """All continuous maps between two topologies, as a universe.

    ``assignments[i]`` is the value tuple of the map labelled ``f{i}``;
    the tuples are in lexicographic order, so labels are stable.
    """

    domain: Topology
    codomain: Topology
    assignments: tuple[tuple[int, ...], ...]

    @cached_property
    def universe(self) -> Possibilities:
        labels = tuple(f"f{i}" for i in range(len(self.assignments)))
        return Possibilities(labels, size_limit=max(2, len(labels)))

    @property
    def size(self) -> int:
        return len(self.assignments)

    def point_map(self, i: int) -> PointMap:
        return PointMap(self.domain, self.codomain, self.assignments[i])

    def describe(self, i: int) -> str:
        pairs = ", ".join(f"{x}->{y}" for x, y in self.point_map(i).as_pairs())
        return f"f{i}: {pairs}"


def _decode(candidate: int, n_x: int, n_y: int) -> tuple[int, ...]:
    values = []
    for x in range(n_x):
        weight = n_y ** (n_x - 1 - x)
        values.append((candidate // weight) % n_y)
    return tuple(values)


def enumerate_continuous(
    domain: Topology, codomain: Topology, *, cap: int = DEFAULT_ENUMERATION_CAP
) -> FunctionSpace:
    """Filter all point maps down to the continuous ones.

    Continuity needs only the basis preimages to be open, since
    preimages commute with unions.  Total candidates are capped at
    ``cap`` before any work happens.
    """
    n_x = domain.universe.size
    n_y = codomain.universe.size
    total = n_y**n_x
    if total > cap:
        raise CapacityError(
            f"{total} candidate maps exceed the cap of {cap}", required=total
        )
    if n_x <= _KERNEL_MASK_BITS and n_y <= _KERNEL_MASK_BITS:
        ids = _kernels.continuous_assignments(
            n_x,
            n_y,
            [s.mask for s in domain.opens],
            [s.mask for s in codomain.basis],
        )
        assignments = tuple(_decode(int(i), n_x, n_y) for i in ids)
    else:
        open_masks = domain.open_masks
        assignments = tuple(
            values
            for values in itertools.product(range(n_y), repeat=n_x)
            if all(
                _preimage_mask(values, b.mask) in open_masks for b in codomain.basis
            )
        )
    return FunctionSpace(domain, codomain, assignments)


def _preimage_mask(values: Sequence[int], target_mask: int) -> int:
    mask = 0
    for x, y in enumerate(values):
        if (target_mask >> y) & 1:
            mask |= 1 << x
    return mask


def function_set(
    space: FunctionSpace, u_x: SetOfPossibilities, u_y: SetOfPossibilities
) -> SetOfPossibilities:
    """V(u_x, u_y): the maps in the space sending u_x into u_y.

    Both arguments must be open on their side.  An empty u_x puts no
    constraint on anything, so the answer is the whole space.
    """
    if not space.domain.is_open(u_x):
        raise ValueError(f"{u_x.render()} is not open in the domain")
    if not space.codomain.is_open(u_y):
        raise ValueError(f"{u_y.render()} is not open in the codomain")
    mask = 0
    xs = u_x.indices()
    for i, values in enumerate(space.assignments):
        image = 0
        for x in xs:
            image |= 1 << values[x]
        if image & ~u_y.mask == 0:
            mask |= 1 << i
    return space.universe.from_mask(mask)


vset = function_set


def _check_basis_choice(t: Topology, sets: Sequence[SetOfPossibilities], side: str) -> None:
    if not sets:
        raise InvalidBasisError(f"{side} basis is empty")
    for s in sets:
        if not t.is_open(s):
            raise InvalidBasisError(f"{side} basis set {s.render()} is not open")
    regenerated = generate_topology(list(sets))
    if regenerated.open_masks != t.open_masks:
        raise InvalidBasisError(f"{side} basis does not generate the topology")


@dataclass(frozen=True)
class BasisToBasisTopology:
    """The topology on a function space generated by V(basis, basis) sets.

    ``vsets`` keeps every generator with its provenance pair; ``topology``
    is the materialized space when it fits under the cap, else None.
    Checks that only need generators (separation, openness, comparison)
    run off the sub-basis either way.
    """

    space: FunctionSpace
    basis_x: tuple[SetOfPossibilities, ...]
    basis_y: tuple[SetOfPossibilities, ...]
    vsets: tuple[tuple[SetOfPossibilities, SetOfPossibilities, SetOfPossibilities], ...]
    subbasis: tuple[SetOfPossibilities, ...]
    topology: Topology | None

    @cached_property
    def _minimal_neighborhoods(self) -> list[int]:
        return minimal_neighborhood_masks(
            self.space.universe.size, [s.mask for s in self.subbasis]
        )

    def covers_space(self) -> bool:
        mask = 0
        for s in self.subbasis:
            mask |= s.mask
        return mask == self.space.universe.full_mask

    def hausdorff(self) -> HausdorffVerdict:
        return separation_verdict(self.space.universe, self.subbasis)

    def is_open(self, s: SetOfPossibilities) -> bool:
        """Openness from minimal neighborhoods; no opens materialized."""
        minnb = self._minimal_neighborhoods
        return all(minnb[i] & ~s.mask == 0 for i in s.indices())

    def separating_pair(
        self, f_label: str, g_label: str
    ) -> tuple[SetOfPossibilities, SetOfPossibilities] | None:
        universe = self.space.universe
        i = universe.index(f_label)
        j = universe.index(g_label)
        if i == j:
            raise ValueError(f"need two distinct maps, got {f_label!r} twice")
        minnb = self._minimal_neighborhoods
        if minnb[i] & minnb[j] == 0:
            return (universe.from_mask(minnb[i]), universe.from_mask(minnb[j]))
        return None


def generate_b2b_topology(
    space: FunctionSpace,
    basis_x: Sequence[SetOfPossibilities] | None = None,
    basis_y: Sequence[SetOfPossibilities] | None = None,
    *,
    materialize_cap: int | None = 4096,
) -> BasisToBasisTopology:
    """Build the basis-to-basis topology for a chosen pair of bases.

    Defaults to the bases the two topologies were generated from.  A
    ``materialize_cap`` of 0 skips materialization outright; otherwise
    materialization is attempted and quietly abandoned once the closure
    overflows the cap.
    """
    bx = canonical_sort(basis_x if basis_x is not None else space.domain.basis)
    by = canonical_sort(basis_y if basis_y is not None else space.codomain.basis)
    _check_basis_choice(space.domain, bx, "domain")
    _check_basis_choice(space.codomain, by, "codomain")
    vsets = tuple(
        (u_x, u_y, function_set(space, u_x, u_y))
        for u_x, u_y in itertools.product(bx, by)
    )
    subbasis = tuple(canonical_sort({v for _, _, v in vsets}))
    topology = None
    if materialize_cap is None or materialize_cap > 0:
        try:
            basis = generate_basis(
                SubBasis(space.universe, subbasis), max_sets=materialize_cap
            )
            topology = generate_topology(basis, max_opens=materialize_cap)
        except CapacityError:
            topology = None
    return BasisToBasisTopology(space, tuple(bx), tuple(by), vsets, subbasis, topology)


@dataclass(frozen=True)
class OpenOpenComparison:
    """How the basis-to-basis topology relates to the open-open one.

    ``relation`` is one of "equal", "strictly-coarser" (basis-to-basis
    misses some open-open set), "strictly-finer", "incomparable".  The
    witness, when present, is a generator of the finer side that is not
    open in the coarser, with the pair that produced it.
    """

    relation: str
    witness: SetOfPossibilities | None
    witness_provenance: str | None
    b2b_generators: int
    open_open_generators: int


def compare_with_open_open(b2b: BasisToBasisTopology) -> OpenOpenComparison:
    space = b2b.space
    n = space.universe.size
    oo_vsets = [
        (u_x, u_y, function_set(space, u_x, u_y))
        for u_x, u_y in itertools.product(space.domain.opens, space.codomain.opens)
    ]
    oo_masks = sorted({v.mask for _, _, v in oo_vsets})
    minnb_oo = minimal_neighborhood_masks(n, oo_masks)
    minnb_b2b = b2b._minimal_neighborhoods

    def open_in(mask: int, minnb: list[int]) -> bool:
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if minnb[i] & ~mask:
                return False
        return True

    b2b_inside_oo = True
    oo_inside_b2b = True
    witness = None
    provenance = None
    for u_x, u_y, v in b2b.vsets:
        if not open_in(v.mask, minnb_oo):
            b2b_inside_oo = False
            witness = v
            provenance = f"V({u_x.render()},{u_y.render()}) from the basis pair"
            break
    for u_x, u_y, v in oo_vsets:
        if not open_in(v.mask, minnb_b2b):
            oo_inside_b2b = False
            if witness is None:
                witness = v
                provenance = f"V({u_x.render()},{u_y.render()}) from the open pair"
            break
    if b2b_inside_oo and oo_inside_b2b:
        relation = "equal"
    elif b2b_inside_oo:
        relation = "strictly-coarser"
    elif oo_inside_b2b:
        relation = "strictly-finer"
    else:
        relation = "incomparable"
    return OpenOpenComparison(
        relation, witness, provenance, len(b2b.subbasis), len(oo_masks)
    )


def compare_open_open(
    space: FunctionSpace, b2b: BasisToBasisTopology
) -> OpenOpenComparison:
    if b2b.space is not space and b2b.space != space:
        raise ValueError("the basis-to-basis topology was built over a different space")
    return compare_with_open_open(b2b)


def separating_generators(
    b2b: BasisToBasisTopology, f_label: str, g_label: str
) -> tuple[
    tuple[SetOfPossibilities, SetOfPossibilities, SetOfPossibilities],
    tuple[SetOfPossibilities, SetOfPossibilities, SetOfPossibilities],
] | None:
    """Disjoint V-sets around two distinct maps, built constructively.

    Pick a point x where the maps differ; when their values have
    disjoint minimal neighborhoods w_f and w_g in the codomain, any
    basis set b with x in b inside both preimages gives V(b, w_f) and
    V(b, w_g): the maps land in their own V-set and no map can be in
    both, since its value at x would lie in w_f and w_g at once.
    Returns ((b, w_f, V(b, w_f)), (b, w_g, V(b, w_g))), or None when
    the values cannot be separated.
    """
    space = b2b.space
    i = space.universe.index(f_label)
    j = space.universe.index(g_label)
    if i == j:
        raise ValueError(f"need two distinct maps, got {f_label!r} twice")
    f_values = space.assignments[i]
    g_values = space.assignments[j]
    x = next(k for k in range(len(f_values)) if f_values[k] != g_values[k])
    minnb_y = minimal_neighborhood_masks(
        space.codomain.universe.size, [s.mask for s in b2b.basis_y]
    )
    wf_mask = minnb_y[f_values[x]]
    wg_mask = minnb_y[g_values[x]]
    if wf_mask & wg_mask:
        return None
    by_masks = {s.mask for s in b2b.basis_y}
    if wf_mask not in by_masks or wg_mask not in by_masks:
        # Cannot happen for a valid basis: every basis contains each
        # minimal neighborhood.
        return None
    w_f = space.codomain.universe.from_mask(wf_mask)
    w_g = space.codomain.universe.from_mask(wg_mask)
    f_map = space.point_map(i)
    g_map = space.point_map(j)
    allowed = f_map.preimage_of(w_f) & g_map.preimage_of(w_g)
    for b in b2b.basis_x:
        if (b.mask >> x) & 1 and b.issubset(allowed):
            return (
                (b, w_f, function_set(space, b, w_f)),
                (b, w_g, function_set(space, b, w_g)),
            )
    return None


@dataclass(frozen=True)
class SurveyReport:
    """Tally of open-open comparisons over an exhaustive corpus."""

    instances: int
    equal: int
    non_equal: tuple[str, ...]

    def render(self) -> str:
        lines = [
            f"instances: {self.instances}",
            f"equal: {self.equal}",
            f"non-equal: {len(self.non_equal)}",
        ]
        lines.extend(self.non_equal)
        return "\n".join(lines)


def survey_open_open(max_size: int = 3) -> SurveyReport:
    """Compare basis-to-basis against open-open over every space pair.

    Runs over all topologies on universes of 2..max_size points, all
    ordered pairs, and both basis choices (minimal and full) on each
    side.  Whether a strict instance exists is an empirical question;
    the report lists any found, deterministically.
    """
    from .topology import enumerate_topologies, minimal_basis

    spaces = []
    for size in range(2, max_size + 1):
        universe = Possibilities(tuple("abcdefghij"[:size]))
        for idx, t in enumerate(enumerate_topologies(universe, max_size=max_size)):
            spaces.append((f"{size}p#{idx}", t))
    instances = 0
    equal = 0
    non_equal = []
    for (name_x, t_x), (name_y, t_y) in itertools.product(spaces, spaces):
        space = enumerate_continuous(t_x, t_y)
        choices_x = [("minimal", minimal_basis(t_x)), ("full", list(t_x.opens))]
        choices_y = [("minimal", minimal_basis(t_y)), ("full", list(t_y.opens))]
        for (kind_x, bx), (kind_y, by) in itertools.product(choices_x, choices_y):
            b2b = generate_b2b_topology(space, bx, by, materialize_cap=0)
            comparison = compare_with_open_open(b2b)
            instances += 1
            if comparison.relation == "equal":
                equal += 1
            else:
                non_equal.append(
                    f"X={name_x} Y={name_y} bases={kind_x}/{kind_y}"
                    f" relation={comparison.relation} witness={comparison.witness_provenance}"
                )
    return SurveyReport(instances, equal, tuple(non_equal))
