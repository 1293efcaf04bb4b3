"""Maps between spaces, seen from both ends.

A point map sends points to points; it is continuous when the preimage
of every open set is open, in which case pulling opens back gives its
observation map.  An observation map is the thing an experimenter
actually has: an assignment of domain opens to codomain opens, with no
points in sight.  Subject to consistency axioms (it must respect finite
intersections, arbitrary unions, and the empty and full sets) such an
assignment extends uniquely to all subsets and pins down the point map
it came from, provided the opens are fine enough to isolate points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import ExtensionError, NotContinuousError, ReconstructionError
from .sets import SetOfPossibilities, canonical_sort
from .topology import Topology


@dataclass(frozen=True)
class PointMap:
    """A total function between the point sets of two topologies.

    ``assignment[i]`` is the codomain index of the image of domain
    point i.
    """

    domain: Topology
    codomain: Topology
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.domain.universe.size:
            raise ValueError("assignment must cover every domain point")
        for i in self.assignment:
            if not 0 <= i < self.codomain.universe.size:
                raise ValueError(f"image index {i} out of range")

    @classmethod
    def from_labels(
        cls, domain: Topology, codomain: Topology, pairs: Mapping[str, str] | Iterable[tuple[str, str]]
    ) -> "PointMap":
        table = dict(pairs.items() if isinstance(pairs, Mapping) else pairs)
        assignment = []
        for x in domain.universe.labels:
            if x not in table:
                raise ValueError(f"map is not total: no image for {x!r}")
            assignment.append(codomain.universe.index(table[x]))
        return cls(domain, codomain, tuple(assignment))

    def __call__(self, label: str) -> str:
        return self.codomain.universe.labels[self.assignment[self.domain.universe.index(label)]]

    def as_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            (x, self.codomain.universe.labels[self.assignment[i]])
            for i, x in enumerate(self.domain.universe.labels)
        )

    def image_of(self, s: SetOfPossibilities) -> SetOfPossibilities:
        if s.universe != self.domain.universe:
            raise ValueError("argument lives in the wrong universe")
        mask = 0
        for i in s.indices():
            mask |= 1 << self.assignment[i]
        return self.codomain.universe.from_mask(mask)

    def preimage_of(self, s: SetOfPossibilities) -> SetOfPossibilities:
        if s.universe != self.codomain.universe:
            raise ValueError("argument lives in the wrong universe")
        mask = 0
        for i, j in enumerate(self.assignment):
            if (s.mask >> j) & 1:
                mask |= 1 << i
        return self.domain.universe.from_mask(mask)


@dataclass(frozen=True)
class ContinuityVerdict:
    continuous: bool
    witness: SetOfPossibilities | None

    def __bool__(self) -> bool:
        return self.continuous


def is_continuous(
    f: PointMap, t_x: Topology | None = None, t_y: Topology | None = None
) -> ContinuityVerdict:
    """Check preimages of codomain opens; witness the first non-open one.

    Topologies default to the ones the map was built over; passing
    others (on the same universes) checks continuity relative to those.
    """
    t_x = t_x if t_x is not None else f.domain
    t_y = t_y if t_y is not None else f.codomain
    if t_x.universe != f.domain.universe or t_y.universe != f.codomain.universe:
        raise ValueError("topologies must live on the map's universes")
    for v in t_y.opens:
        if not t_x.is_open(f.preimage_of(v)):
            return ContinuityVerdict(False, v)
    return ContinuityVerdict(True, None)


@dataclass(frozen=True)
class ObservationMap:
    """An assignment of codomain opens to domain opens, points unseen.

    ``source`` is the space whose opens are fed in, ``target`` the space
    the answers land in.  The container itself accepts any assignment;
    ``validate_observation_map`` checks the consistency axioms.
    """

    source: Topology
    target: Topology
    pairs: tuple[tuple[SetOfPossibilities, SetOfPossibilities], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @classmethod
    def from_dict(
        cls,
        source: Topology,
        target: Topology,
        table: Mapping[SetOfPossibilities, SetOfPossibilities],
    ) -> "ObservationMap":
        ordered = sorted(table.items(), key=lambda kv: kv[0].sort_key())
        return cls(source, target, tuple(ordered))

    @cached_property
    def table(self) -> dict[SetOfPossibilities, SetOfPossibilities]:
        return dict(self.pairs)

    def value(self, v: SetOfPossibilities) -> SetOfPossibilities:
        try:
            return self.table[v]
        except KeyError:
            raise KeyError(f"map has no value on {v.render()}") from None


def preimage_map(f: PointMap, t_y: Topology | None = None) -> ObservationMap:
    """The observation map of a continuous point map.

    Raises ``NotContinuousError`` (carrying the witness open) otherwise.
    """
    t_y = t_y if t_y is not None else f.codomain
    verdict = is_continuous(f, f.domain, t_y)
    if not verdict:
        raise NotContinuousError(
            f"preimage of {verdict.witness.render()} is not open",
            witness=verdict.witness,
        )
    return ObservationMap.from_dict(
        t_y, f.domain, {v: f.preimage_of(v) for v in t_y.opens}
    )


@dataclass(frozen=True)
class MapViolation:
    """First axiom failure found in an observation map, with witnesses."""

    kind: str
    message: str
    involved: tuple[SetOfPossibilities, ...]

    def render(self) -> str:
        sets = " ".join(s.render() for s in self.involved)
        return f"{self.kind}: {self.message}" + (f" [{sets}]" if sets else "")


@dataclass(frozen=True)
class MapValidationReport:
    ok: bool
    violation: MapViolation | None

    def __bool__(self) -> bool:
        return self.ok


def validate_observation_map(g: ObservationMap) -> MapValidationReport:
    """Check the consistency axioms, reporting the first violation.

    Checks run in a fixed order: totality on the source opens, images
    being open, empty to empty, full to full, then intersections and
    unions over canonically ordered pairs.
    """

    def fail(kind, message, *involved):
        return MapValidationReport(False, MapViolation(kind, message, tuple(involved)))

    table = g.table
    for v in g.source.opens:
        if v not in table:
            return fail("NOT_TOTAL", f"no value on the open set {v.render()}", v)
    for v, gv in g.pairs:
        if not g.source.is_open(v):
            return fail("NOT_OPEN", f"argument {v.render()} is not open in the source", v)
        if not g.target.is_open(gv):
            return fail("NOT_OPEN", f"value {gv.render()} is not open in the target", v, gv)
    empty = g.source.universe.empty
    if not table[empty].is_empty:
        return fail("EMPTY_IMAGE", "the empty set must map to the empty set", table[empty])
    full = g.source.universe.full
    if not table[full].is_full:
        return fail("FULL_IMAGE", "the full set must map to the full set", table[full])
    opens = canonical_sort(g.source.opens)
    for v1, v2 in itertools.combinations(opens, 2):
        meet = table[v1 & v2]
        if meet != table[v1] & table[v2]:
            return fail(
                "INTERSECTION",
                f"value on {(v1 & v2).render()} disagrees with the intersection of values",
                v1,
                v2,
            )
        join = table[v1 | v2]
        if join != table[v1] | table[v2]:
            return fail(
                "UNION",
                f"value on {(v1 | v2).render()} disagrees with the union of values",
                v1,
                v2,
            )
    return MapValidationReport(True, None)


@dataclass(frozen=True)
class BorelMap:
    """Extension of an observation map to every subset of the source.

    ``fibers[j]`` is the set of target points assigned to source point
    j; the value on an arbitrary subset is the union of its members'
    fibers, which makes the extension respect unions, intersections and
    complements at once.
    """

    source: Topology
    target: Topology
    fibers: tuple[SetOfPossibilities, ...]

    def value(self, s: SetOfPossibilities) -> SetOfPossibilities:
        if s.universe != self.source.universe:
            raise ValueError("argument lives in the wrong universe")
        out = self.target.universe.empty
        for j in s.indices():
            out = out | self.fibers[j]
        return out


def borel_extend(g: ObservationMap) -> BorelMap:
    """Extend a valid observation map to all subsets of the source.

    The fiber of a source point y is forced: it is the intersection of
    the values on opens containing y and of the complements of values on
    opens avoiding y.  The extension exists iff points sharing all their
    opens have empty forced fibers and the fibers recombine into every
    original value; otherwise ``ExtensionError`` explains what broke.
    """
    report = validate_observation_map(g)
    if not report:
        raise ExtensionError(f"map fails the consistency axioms; {report.violation.render()}")
    y_universe = g.source.universe
    x_universe = g.target.universe
    items = [(v, g.table[v]) for v in g.source.opens]
    profiles: dict[tuple[bool, ...], list[int]] = {}
    for j in range(y_universe.size):
        profile = tuple((v.mask >> j) & 1 == 1 for v, _ in items)
        profiles.setdefault(profile, []).append(j)
    fibers = [x_universe.empty] * y_universe.size
    for profile, members in profiles.items():
        forced = x_universe.full.mask
        for inside, (v, gv) in zip(profile, items):
            forced &= gv.mask if inside else gv.mask ^ x_universe.full_mask
        if len(members) > 1 and forced:
            labels = ",".join(y_universe.labels[j] for j in members)
            raise ExtensionError(
                f"opens cannot tell {{{labels}}} apart but their joint fiber "
                f"{x_universe.from_mask(forced).render()} is non-empty; no unique extension"
            )
        if len(members) == 1:
            fibers[members[0]] = x_universe.from_mask(forced)
    extension = BorelMap(g.source, g.target, tuple(fibers))
    for v, gv in items:
        if extension.value(v) != gv:
            raise ExtensionError(
                f"fibers do not recombine into the value on {v.render()}; "
                "the map is not induced by any assignment of points"
            )
    return extension


def reconstruct_function(g: ObservationMap) -> PointMap:
    """Recover the point map whose preimages are ``g``.

    The fiber of y collects the domain points sent to y, so the fibers
    must partition the domain; each x then goes to its unique y.  Raises
    ``ReconstructionError`` when no point map induces ``g``.
    """
    try:
        extension = borel_extend(g)
    except ExtensionError as e:
        raise ReconstructionError(str(e)) from e
    y_universe = g.source.universe
    x_universe = g.target.universe
    assignment = []
    for i in range(x_universe.size):
        owners = [j for j in range(y_universe.size) if (extension.fibers[j].mask >> i) & 1]
        if not owners:
            raise ReconstructionError(
                f"no fiber covers {x_universe.labels[i]!r}; the map is not total"
            )
        if len(owners) > 1:
            raise ReconstructionError(
                f"fibers overlap on {x_universe.labels[i]!r}; the map is not single-valued"
            )
        assignment.append(owners[0])
    f = PointMap(g.target, g.source, tuple(assignment))
    if preimage_map(f).table != g.table:
        raise ReconstructionError("reconstructed map does not induce the original assignment")
    return f
