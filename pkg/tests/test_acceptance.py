"""End-to-end acceptance checks.

Each test prints exactly one summary line so the run reads as a
checklist; the assertions behind the lines use the independent oracles
from tests/oracles.py rather than anything the library computed.
"""

import itertools
import random
import time
from pathlib import Path

from veritop import (
    Possibilities,
    Script,
    ScriptedTest,
    SubBasis,
    discrete_topology,
    enumerate_continuous,
    enumerate_topologies,
    generate_b2b_topology,
    is_continuous,
    is_hausdorff,
    is_topology,
    minimal_basis,
    preimage_map,
    reconstruct_function,
    run_all,
    run_any,
    separation_verdict,
    survey_open_open,
    topology_from_subbasis,
    validate_observation_map,
)
from veritop.cli import run_command
from veritop.relationship import ObservationMap, PointMap
from oracles import closure_oracle, separable_by_scan

GOLDEN = Path(__file__).resolve().parent / "golden"
DEMO = Path(__file__).resolve().parent.parent / "demo"

SEED = 20260814


def _report(number, ok, detail):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def _random_subbasis(rng, n):
    u = Possibilities(tuple("abcdef"[:n]))
    masks = [rng.randrange(1 << n) for _ in range(rng.randint(0, 6))]
    return SubBasis(u, tuple(u.from_mask(m) for m in masks))


def _hausdorff_corpus():
    corpus = []
    for side, letters in (("x", "pqrs"), ("y", "wxyz")):
        per_side = []
        for n in (2, 3, 4):
            u = Possibilities(tuple(letters[:n]))
            separated = [t for t in enumerate_topologies(u) if is_hausdorff(t)]
            assert separated == [t for t in separated if t.open_masks == discrete_topology(u).open_masks]
            per_side.extend(separated)
        corpus.append(per_side)
    return list(itertools.product(corpus[0], corpus[1]))


def test_criterion_1_dovetail_termination_bound():
    rng = random.Random(SEED)
    started = time.monotonic()
    violations = 0
    for _ in range(1000):
        length = rng.randint(1, 10)
        ks = [rng.randint(1, 20) if rng.random() < 0.5 else None for _ in range(length)]
        if all(k is None for k in ks):
            ks[rng.randrange(length)] = rng.randint(1, 20)
        report = run_any([ScriptedTest(Script(k)) for k in ks])
        bound_round = min(max(i + 1, k) for i, k in enumerate(ks) if k is not None)
        bound_steps = sum(n * n for n in range(1, bound_round + 1))
        if not (
            report.succeeded
            and report.round <= bound_round
            and report.total_steps <= bound_steps
        ):
            violations += 1
    elapsed = time.monotonic() - started
    _report(
        1,
        violations == 0 and elapsed < 10.0,
        f"1000 dovetailed streams within round/step bounds, {elapsed:.2f}s (< 10s), "
        f"{violations} violations",
    )


def test_criterion_2_conjunction_semantics():
    rng = random.Random(SEED + 1)
    violations = 0
    for _ in range(1000):
        length = rng.randint(1, 8)
        ks = [rng.randint(1, 25) if rng.random() < 0.7 else None for _ in range(length)]
        needed = sum(k for k in ks if k is not None)
        fuel = max(1, needed + rng.randint(-3, 3))
        report = run_all([ScriptedTest(Script(k)) for k in ks], fuel=fuel)
        should_succeed = all(k is not None for k in ks) and needed <= fuel
        if report.succeeded != should_succeed:
            violations += 1
        elif report.succeeded and report.total_steps != needed:
            violations += 1
        elif not report.succeeded and report.total_steps != fuel:
            violations += 1
    _report(2, violations == 0, f"1000 sequential runs, {violations} violations")


def test_criterion_3_topology_oracle_equivalence():
    rng = random.Random(SEED + 2)
    started = time.monotonic()
    mismatches = 0
    for _ in range(500):
        sb = _random_subbasis(rng, rng.randint(2, 6))
        t = topology_from_subbasis(sb)
        expected = closure_oracle(sb.universe.size, [s.mask for s in sb.sets])
        if t.open_masks != expected:
            mismatches += 1
    elapsed = time.monotonic() - started
    _report(
        3,
        mismatches == 0 and elapsed < 30.0,
        f"500 random sub-bases against the fixed-point oracle, {elapsed:.2f}s (< 30s), "
        f"{mismatches} mismatches",
    )


def test_criterion_4_separation_suite():
    rng = random.Random(SEED + 3)
    failures = 0
    checked = 0
    for _ in range(500):
        sb = _random_subbasis(rng, rng.randint(2, 5))
        t = topology_from_subbasis(sb)
        checked += 1
        if not is_topology(t):
            failures += 1
            continue
        n = t.universe.size
        sub_masks = [s.mask for s in sb.sets]
        pairwise_separated = all(
            separable_by_scan(sub_masks, i, j)
            for i in range(n)
            for j in range(i + 1, n)
        )
        verdict = is_hausdorff(t)
        if pairwise_separated and not verdict.separated:
            failures += 1
            continue
        if not verdict.separated:
            i = t.universe.index(verdict.witness[0])
            j = t.universe.index(verdict.witness[1])
            if separable_by_scan(sorted(t.open_masks), i, j):
                failures += 1
    _report(4, failures == 0, f"{checked} topologies through the separation suite, {failures} failures")


def test_criterion_5_reconstruction_round_trips():
    failures = 0
    maps_checked = 0
    for t_x, t_y in _hausdorff_corpus():
        n_x, n_y = t_x.universe.size, t_y.universe.size
        for assignment in itertools.product(range(n_y), repeat=n_x):
            f = PointMap(t_x, t_y, assignment)
            maps_checked += 1
            g = preimage_map(f)
            back = reconstruct_function(g)
            if back.assignment != f.assignment:
                failures += 1
                continue
            if preimage_map(back).table != g.table:
                failures += 1
    _report(
        5,
        failures == 0,
        f"{maps_checked} continuous maps round-tripped exactly, {failures} failures",
    )


def test_criterion_6_continuity_axiom_equivalence():
    counterexamples = 0
    maps_checked = 0
    corpora = list(_hausdorff_corpus())
    # The Hausdorff corpus only contains continuous maps; add every pair
    # of (possibly non-Hausdorff) 3-point topologies so both directions
    # of the equivalence get exercised.
    u_x = Possibilities(("p", "q", "r"))
    u_y = Possibilities(("w", "x", "y"))
    corpora.extend(itertools.product(enumerate_topologies(u_x), enumerate_topologies(u_y)))
    for t_x, t_y in corpora:
        n_x, n_y = t_x.universe.size, t_y.universe.size
        for assignment in itertools.product(range(n_y), repeat=n_x):
            f = PointMap(t_x, t_y, assignment)
            maps_checked += 1
            raw = ObservationMap.from_dict(
                t_y, t_x, {v: f.preimage_of(v) for v in t_y.opens}
            )
            if bool(is_continuous(f)) != validate_observation_map(raw).ok:
                counterexamples += 1
    _report(
        6,
        counterexamples == 0,
        f"{maps_checked} maps checked for continuity iff axioms, "
        f"{counterexamples} counterexamples",
    )


def test_criterion_7_function_space_separation():
    failures = 0
    instances = 0
    for t_x, t_y in _hausdorff_corpus():
        space = enumerate_continuous(t_x, t_y)
        for bx in (minimal_basis(t_x), list(t_x.opens)):
            for by in (minimal_basis(t_y), list(t_y.opens)):
                b2b = generate_b2b_topology(space, bx, by, materialize_cap=0)
                instances += 1
                if not b2b.hausdorff().separated:
                    failures += 1
                elif not b2b.covers_space():
                    failures += 1
    _report(
        7,
        failures == 0,
        f"{instances} basis-to-basis spaces separated and covered, {failures} failures",
    )


def test_criterion_8_open_open_comparison():
    first = survey_open_open(3)
    second = survey_open_open(3)
    contained = all("strictly-coarser" in line for line in first.non_equal)
    stable = first.render() == second.render()
    golden = (GOLDEN / "open_open_survey.txt").read_text()
    emitted = first.render() + "\n"
    _report(
        8,
        contained and stable and emitted == golden,
        f"{first.instances} instances, {first.equal} equal, "
        f"{len(first.non_equal)} strict, report stable and matches the saved copy",
    )


def test_criterion_9_golden_cli_outputs():
    cases = {
        "topology_discrete_pair.txt": ["topology", str(DEMO / "discrete_pair.json")],
        "check_sierpinski_hausdorff.txt": [
            "check",
            str(DEMO / "sierpinski.json"),
            "--property",
            "hausdorff",
        ],
        "dovetail_black_swan.txt": ["dovetail", str(DEMO / "black_swan.json")],
    }
    mismatches = 0
    for name, argv in cases.items():
        expected = (GOLDEN / name).read_text()
        _, once = run_command(argv)
        _, twice = run_command(argv)
        if once != expected or twice != expected:
            mismatches += 1
    _report(
        9,
        mismatches == 0,
        f"{len(cases)} CLI outputs byte-identical across runs, {mismatches} mismatches",
    )
