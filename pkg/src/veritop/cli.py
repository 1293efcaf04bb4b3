"""Command-line front end.

Spaces, maps and test scripts come in as small JSON documents; every
command prints a deterministic plain-text report.  Exit codes: 0 for
success, 1 when a semantic check fails (a property does not hold, a run
exhausts its fuel), 2 for malformed input or exceeded capacity.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import (
    DivergenceError,
    ExtensionError,
    NotContinuousError,
    ReconstructionError,
    SpecFormatError,
    VeritopError,
)
from .function_space import (
    compare_with_open_open,
    enumerate_continuous,
    generate_b2b_topology,
)
from .observation import Script, ScriptedTest
from .relationship import (
    ObservationMap,
    PointMap,
    is_continuous,
    preimage_map,
    reconstruct_function,
    validate_observation_map,
)
from .scheduler import run_all, run_any
from .sets import Possibilities
from .topology import (
    SubBasis,
    Topology,
    generate_basis,
    generate_topology,
    is_hausdorff,
    is_topology,
    minimal_basis,
    minimal_neighborhood_masks,
    separation_verdict,
)

_FORBIDDEN_IN_LABELS = set(",{}|")


# -- document parsing ------------------------------------------------------


@dataclass(frozen=True)
class SpaceSpec:
    name: str
    points: tuple[str, ...]
    subbasis: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class MapSpec:
    name: str
    kind: str
    domain: SpaceSpec
    codomain: SpaceSpec
    point_pairs: tuple[tuple[str, str], ...]
    set_pairs: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]


@dataclass(frozen=True)
class ScriptSpec:
    name: str
    behaviors: tuple[int | None, ...]
    combinator: str
    fuel: int | None


def _fail(code: str, message: str):
    raise SpecFormatError(code, message)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        _fail("BAD_DOCUMENT", f"not valid JSON: {e}")


def _check_label(label) -> str:
    if not isinstance(label, str) or not label:
        _fail("BAD_LABEL", f"labels must be non-empty strings, got {label!r}")
    if any(c.isspace() or c in _FORBIDDEN_IN_LABELS for c in label):
        _fail("BAD_LABEL", f"label {label!r} contains whitespace or one of ,{{}}|")
    return label


def _space_from_obj(obj) -> SpaceSpec:
    if not isinstance(obj, dict):
        _fail("BAD_DOCUMENT", "space document must be a JSON object")
    name = obj.get("name", "space")
    if not isinstance(name, str) or not name:
        _fail("BAD_DOCUMENT", "space name must be a non-empty string")
    points = obj.get("points")
    if not isinstance(points, list):
        _fail("BAD_DOCUMENT", "space document needs a 'points' list")
    points = tuple(_check_label(p) for p in points)
    if len(points) < 2:
        _fail("TOO_FEW_POINTS", f"a space needs at least 2 points, got {len(points)}")
    if len(set(points)) != len(points):
        seen = set()
        dup = next(p for p in points if p in seen or seen.add(p))
        _fail("DUPLICATE_LABEL", f"point label {dup!r} appears more than once")
    known = set(points)
    raw_subbasis = obj.get("subbasis")
    if not isinstance(raw_subbasis, list) or not all(
        isinstance(s, list) for s in raw_subbasis
    ):
        _fail("BAD_DOCUMENT", "space document needs a 'subbasis' list of lists")
    subbasis = []
    for s in raw_subbasis:
        members = tuple(_check_label(p) for p in s)
        for p in members:
            if p not in known:
                _fail("UNKNOWN_LABEL", f"sub-basis member {p!r} is not a point")
        if len(set(members)) != len(members):
            _fail("DUPLICATE_LABEL", f"a sub-basis set repeats a member: {list(members)}")
        subbasis.append(members)
    return SpaceSpec(name, points, tuple(subbasis))


def parse_space_spec(text: str) -> SpaceSpec:
    return _space_from_obj(_load_json(text))


def render_space_spec(spec: SpaceSpec) -> str:
    doc = {
        "name": spec.name,
        "points": list(spec.points),
        "subbasis": [list(s) for s in spec.subbasis],
    }
    return json.dumps(doc, indent=2) + "\n"


def _map_from_obj(obj) -> MapSpec:
    if not isinstance(obj, dict):
        _fail("BAD_DOCUMENT", "map document must be a JSON object")
    name = obj.get("name", "map")
    if not isinstance(name, str) or not name:
        _fail("BAD_DOCUMENT", "map name must be a non-empty string")
    kind = obj.get("kind")
    if kind not in ("point-map", "observation-map"):
        _fail("BAD_DOCUMENT", f"map kind must be point-map or observation-map, got {kind!r}")
    if "domain" not in obj or "codomain" not in obj:
        _fail("BAD_DOCUMENT", "map document needs 'domain' and 'codomain' spaces")
    domain = _space_from_obj(obj["domain"])
    codomain = _space_from_obj(obj["codomain"])
    pairs = obj.get("pairs")
    if not isinstance(pairs, list):
        _fail("BAD_DOCUMENT", "map document needs a 'pairs' list")
    point_pairs: list[tuple[str, str]] = []
    set_pairs: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    if kind == "point-map":
        for entry in pairs:
            if not (isinstance(entry, list) and len(entry) == 2):
                _fail("BAD_DOCUMENT", f"point-map pairs must be [from, to], got {entry!r}")
            a, b = _check_label(entry[0]), _check_label(entry[1])
            if a not in domain.points:
                _fail("UNKNOWN_LABEL", f"map source {a!r} is not a domain point")
            if b not in codomain.points:
                _fail("UNKNOWN_LABEL", f"map value {b!r} is not a codomain point")
            point_pairs.append((a, b))
        sources = [a for a, _ in point_pairs]
        if len(set(sources)) != len(sources):
            seen = set()
            dup = next(a for a in sources if a in seen or seen.add(a))
            _fail("DUPLICATE_LABEL", f"domain point {dup!r} is assigned twice")
        for p in domain.points:
            if p not in sources:
                _fail("NOT_TOTAL", f"map assigns no value to domain point {p!r}")
    else:
        for entry in pairs:
            if not (isinstance(entry, list) and len(entry) == 2 and all(isinstance(s, list) for s in entry)):
                _fail(
                    "BAD_DOCUMENT",
                    f"observation-map pairs must be [[labels...], [labels...]], got {entry!r}",
                )
            arg = tuple(_check_label(p) for p in entry[0])
            val = tuple(_check_label(p) for p in entry[1])
            for p in arg:
                if p not in domain.points:
                    _fail("UNKNOWN_LABEL", f"argument member {p!r} is not a domain point")
            for p in val:
                if p not in codomain.points:
                    _fail("UNKNOWN_LABEL", f"value member {p!r} is not a codomain point")
            set_pairs.append((arg, val))
    return MapSpec(name, kind, domain, codomain, tuple(point_pairs), tuple(set_pairs))


def parse_map_spec(text: str) -> MapSpec:
    return _map_from_obj(_load_json(text))


def render_map_spec(spec: MapSpec) -> str:
    doc = {
        "name": spec.name,
        "kind": spec.kind,
        "domain": json.loads(render_space_spec(spec.domain)),
        "codomain": json.loads(render_space_spec(spec.codomain)),
        "pairs": [list(p) for p in spec.point_pairs]
        if spec.kind == "point-map"
        else [[list(a), list(v)] for a, v in spec.set_pairs],
    }
    return json.dumps(doc, indent=2) + "\n"


def _script_from_obj(obj) -> ScriptSpec:
    if not isinstance(obj, dict):
        _fail("BAD_DOCUMENT", "script document must be a JSON object")
    name = obj.get("name", "script")
    if not isinstance(name, str) or not name:
        _fail("BAD_DOCUMENT", "script name must be a non-empty string")
    tests = obj.get("tests")
    if not isinstance(tests, list) or not tests:
        _fail("BAD_DOCUMENT", "script document needs a non-empty 'tests' list")
    by_index: dict[int, int | None] = {}
    for entry in tests:
        if not isinstance(entry, dict) or "index" not in entry or "behavior" not in entry:
            _fail("BAD_DOCUMENT", f"each test needs 'index' and 'behavior', got {entry!r}")
        idx = entry["index"]
        if not isinstance(idx, int) or idx < 1:
            _fail("BAD_INDEX", f"test index must be a positive integer, got {idx!r}")
        if idx in by_index:
            _fail("BAD_INDEX", f"test index {idx} appears more than once")
        behavior = entry["behavior"]
        if behavior == "diverge":
            by_index[idx] = None
        elif isinstance(behavior, dict) and set(behavior) == {"succeed_at"}:
            k = behavior["succeed_at"]
            if not isinstance(k, int) or k < 1:
                _fail("BAD_STEP", f"succeed_at must be a positive integer, got {k!r}")
            by_index[idx] = k
        else:
            _fail("BAD_FIELD", f"behavior must be 'diverge' or {{'succeed_at': k}}, got {behavior!r}")
    expected = set(range(1, len(by_index) + 1))
    if set(by_index) != expected:
        _fail("BAD_INDEX", f"test indices must be 1..{len(by_index)} with no gaps")
    combinator = obj.get("combinator")
    if combinator not in ("all", "any"):
        _fail("BAD_FIELD", f"combinator must be 'all' or 'any', got {combinator!r}")
    fuel = obj.get("fuel")
    if fuel is not None and (not isinstance(fuel, int) or fuel < 1):
        _fail("BAD_FUEL", f"fuel must be a positive integer, got {fuel!r}")
    behaviors = tuple(by_index[i] for i in sorted(by_index))
    return ScriptSpec(name, behaviors, combinator, fuel)


def parse_script_spec(text: str) -> ScriptSpec:
    return _script_from_obj(_load_json(text))


parse_script = parse_script_spec


def render_script_spec(spec: ScriptSpec) -> str:
    doc = {
        "name": spec.name,
        "tests": [
            {
                "index": i + 1,
                "behavior": "diverge" if k is None else {"succeed_at": k},
            }
            for i, k in enumerate(spec.behaviors)
        ],
        "combinator": spec.combinator,
        "fuel": spec.fuel,
    }
    return json.dumps(doc, indent=2) + "\n"


# -- building runtime objects ----------------------------------------------


def _build_space(spec: SpaceSpec) -> tuple[Possibilities, Topology]:
    universe = Possibilities(spec.points)
    sb = SubBasis.from_labels(universe, spec.subbasis)
    return universe, generate_topology(generate_basis(sb))


def _read(path: str) -> str:
    return Path(path).read_text()


# -- subcommand handlers -----------------------------------------------------


def _cmd_topology(ns) -> tuple[int, list[str]]:
    spec = parse_space_spec(_read(_resolve_path(ns, "space")))
    universe, t = _build_space(spec)
    lines = [f"space: {spec.name}", "points: " + ",".join(universe.labels)]
    lines.append(f"basis ({len(t.basis)}):")
    lines.extend(s.render() for s in t.basis)
    lines.append(f"opens ({len(t.opens)}):")
    lines.extend(s.render() for s in t.opens)
    return 0, lines


def _cmd_check(ns) -> tuple[int, list[str]]:
    spec = parse_space_spec(_read(_resolve_path(ns, "space")))
    universe, t = _build_space(spec)
    lines = [f"space: {spec.name}", f"property: {ns.property}"]
    if ns.property == "axioms":
        ok = is_topology(t)
        lines.append(f"result: {'PASS' if ok else 'FAIL'}")
        return (0 if ok else 1), lines
    verdict = is_hausdorff(t)
    if ns.property == "hausdorff":
        lines.append(f"result: {'PASS' if verdict.separated else 'FAIL'}")
        if not verdict.separated:
            lines.append("witness: " + ",".join(verdict.witness))
        return (0 if verdict.separated else 1), lines
    # distinguishability: how many point pairs admit incompatible
    # verifiable sets, which on a finite universe is the separation count
    minnb = minimal_neighborhood_masks(universe.size, [s.mask for s in t.basis])
    total = 0
    separated = 0
    for i in range(universe.size):
        for j in range(i + 1, universe.size):
            total += 1
            if minnb[i] & minnb[j] == 0:
                separated += 1
    lines.append(f"result: {'PASS' if verdict.separated else 'FAIL'}")
    lines.append(f"separated: {separated} of {total} pairs")
    if not verdict.separated:
        lines.append("witness: " + ",".join(verdict.witness))
    return (0 if verdict.separated else 1), lines


def _point_map_from_spec(spec: MapSpec) -> PointMap:
    _, t_dom = _build_space(spec.domain)
    _, t_cod = _build_space(spec.codomain)
    return PointMap.from_labels(t_dom, t_cod, spec.point_pairs)


def _observation_map_from_spec(spec: MapSpec) -> ObservationMap:
    dom_universe, t_dom = _build_space(spec.domain)
    cod_universe, t_cod = _build_space(spec.codomain)
    pairs = tuple(
        (dom_universe.subset(arg), cod_universe.subset(val))
        for arg, val in spec.set_pairs
    )
    return ObservationMap(t_dom, t_cod, pairs)


def _cmd_continuity(ns) -> tuple[int, list[str]]:
    spec = parse_map_spec(_read(_resolve_path(ns, "map")))
    if spec.kind != "point-map":
        _fail("BAD_DOCUMENT", "continuity expects a point-map document")
    f = _point_map_from_spec(spec)
    lines = [
        f"map: {spec.name}",
        f"from: {spec.domain.name}",
        f"to: {spec.codomain.name}",
    ]
    verdict = is_continuous(f)
    lines.append(f"continuous: {'yes' if verdict.continuous else 'no'}")
    if not verdict.continuous:
        lines.append(f"witness: {verdict.witness.render()} has non-open preimage "
                     f"{f.preimage_of(verdict.witness).render()}")
    return (0 if verdict.continuous else 1), lines


def _cmd_preimage(ns) -> tuple[int, list[str]]:
    spec = parse_map_spec(_read(_resolve_path(ns, "map")))
    if spec.kind != "point-map":
        _fail("BAD_DOCUMENT", "preimage expects a point-map document")
    f = _point_map_from_spec(spec)
    lines = [f"map: {spec.name}"]
    try:
        g = preimage_map(f)
    except NotContinuousError as e:
        lines.append("continuous: no")
        lines.append(f"witness: {e.witness.render()}")
        return 1, lines
    lines.append(f"observation map ({len(g.pairs)}):")
    lines.extend(f"{v.render()} -> {gv.render()}" for v, gv in g.pairs)
    return 0, lines


def _cmd_reconstruct(ns) -> tuple[int, list[str]]:
    spec = parse_map_spec(_read(_resolve_path(ns, "map")))
    if spec.kind != "observation-map":
        _fail("BAD_DOCUMENT", "reconstruct expects an observation-map document")
    g = _observation_map_from_spec(spec)
    lines = [f"map: {spec.name}"]
    report = validate_observation_map(g)
    if not report:
        lines.append("result: FAIL")
        lines.append(f"violation {report.violation.render()}")
        return 1, lines
    try:
        f = reconstruct_function(g)
    except (ReconstructionError, ExtensionError) as e:
        lines.append("result: FAIL")
        lines.append(f"reason: {e}")
        return 1, lines
    lines.append("point map:")
    lines.extend(f"{x} -> {y}" for x, y in f.as_pairs())
    lines.append("round-trip: ok")
    return 0, lines


def _cmd_fnspace(ns) -> tuple[int, list[str]]:
    spec_x = parse_space_spec(_read(ns.domain))
    spec_y = parse_space_spec(_read(ns.codomain))
    _, t_x = _build_space(spec_x)
    _, t_y = _build_space(spec_y)
    space = enumerate_continuous(t_x, t_y)
    lines = [
        f"domain: {spec_x.name} (points {','.join(t_x.universe.labels)})",
        f"codomain: {spec_y.name} (points {','.join(t_y.universe.labels)})",
        f"continuous maps ({space.size}):",
    ]
    lines.extend(space.describe(i) for i in range(space.size))

    def choose(t: Topology, kind: str):
        return minimal_basis(t) if kind == "minimal" else list(t.opens)

    b2b = generate_b2b_topology(
        space, choose(t_x, ns.basis_x), choose(t_y, ns.basis_y)
    )
    lines.append(f"bases: domain={ns.basis_x} codomain={ns.basis_y}")
    lines.append(f"generators ({len(b2b.vsets)}):")
    lines.extend(
        f"V({ux.render()},{uy.render()}) = {v.render()}" for ux, uy, v in b2b.vsets
    )
    if b2b.topology is not None:
        lines.append(f"opens ({len(b2b.topology.opens)}):")
        lines.extend(s.render() for s in b2b.topology.opens)
    else:
        lines.append("opens: not materialized (over cap)")
    lines.append(f"coverage: {'PASS' if b2b.covers_space() else 'FAIL'}")
    verdict = b2b.hausdorff()
    lines.append(f"hausdorff: {'PASS' if verdict.separated else 'FAIL'}")
    if not verdict.separated:
        lines.append("witness: " + ",".join(verdict.witness))
    if ns.compare_open_open:
        comparison = compare_with_open_open(b2b)
        lines.append(f"open-open: {comparison.relation}")
        if comparison.witness_provenance is not None:
            lines.append(f"open-open witness: {comparison.witness_provenance}")
    return 0, lines


def _cmd_dovetail(ns) -> tuple[int, list[str]]:
    spec = parse_script_spec(_read(_resolve_path(ns, "script")))
    mode = ns.mode or spec.combinator
    fuel = ns.fuel if ns.fuel is not None else spec.fuel
    tests = [
        ScriptedTest(Script.diverge() if k is None else Script.succeed_at(k))
        for k in spec.behaviors
    ]
    report = run_all(tests, fuel) if mode == "all" else run_any(tests, fuel)
    lines = [
        f"script: {spec.name}",
        f"mode: {mode}",
        f"tests: {len(tests)}",
        f"fuel: {'unbounded' if fuel is None else fuel}",
    ]
    lines.extend(report.to_text().splitlines())
    return (0 if report.succeeded else 1), lines


# -- entry points ------------------------------------------------------------


def _path_argument(p: argparse.ArgumentParser, name: str, helptext: str, *aliases: str):
    # Document paths work positionally or as flags (--space s.json).
    p.add_argument(f"{name}_positional", nargs="?", metavar=name.upper(), help=helptext)
    p.add_argument(f"--{name}", dest=f"{name}_flag", help=argparse.SUPPRESS)
    for alias in aliases:
        p.add_argument(f"--{alias}", dest=f"{name}_flag", help=argparse.SUPPRESS)


def _resolve_path(ns, name: str) -> str:
    value = getattr(ns, f"{name}_flag") or getattr(ns, f"{name}_positional")
    if not value:
        _fail("BAD_DOCUMENT", f"missing {name} document path")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="veritop",
        description="Finite topologies of verifiable sets, from the command line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("topology", help="basis and opens generated by a space document")
    _path_argument(p, "space", "path to a space JSON document")
    p.set_defaults(handler=_cmd_topology)

    p = sub.add_parser("check", help="check a property of a space")
    _path_argument(p, "space", "path to a space JSON document")
    p.add_argument(
        "--property",
        required=True,
        choices=["hausdorff", "axioms", "distinguishability"],
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("continuity", help="is a point map continuous")
    _path_argument(p, "map", "path to a point-map JSON document")
    p.set_defaults(handler=_cmd_continuity)

    p = sub.add_parser("preimage", help="observation map of a continuous point map")
    _path_argument(p, "map", "path to a point-map JSON document")
    p.set_defaults(handler=_cmd_preimage)

    p = sub.add_parser("reconstruct", help="recover the point map behind an observation map")
    _path_argument(p, "map", "path to an observation-map JSON document", "gmap")
    p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser("fnspace", help="space of continuous maps between two spaces")
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("--basis-x", choices=["minimal", "full"], default="minimal")
    p.add_argument("--basis-y", choices=["minimal", "full"], default="minimal")
    p.add_argument("--compare-open-open", action="store_true")
    p.set_defaults(handler=_cmd_fnspace)

    p = sub.add_parser("dovetail", help="run a scripted schedule")
    _path_argument(p, "script", "path to a script JSON document")
    p.add_argument("--mode", choices=["all", "any"])
    p.add_argument("--fuel", type=int)
    p.set_defaults(handler=_cmd_dovetail)

    return parser


def run_command(argv: Sequence[str]) -> tuple[int, str]:
    """Parse and execute; returns (exit code, full output text)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as e:
        return (int(e.code) if e.code else 0), ""
    try:
        code, lines = ns.handler(ns)
    except SpecFormatError as e:
        return 2, f"error {e.code}: {e}\n"
    except DivergenceError as e:
        return 2, f"error: {e}\n"
    except VeritopError as e:
        return 2, f"error: {e}\n"
    except OSError as e:
        return 2, f"error: {e}\n"
    return code, "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
