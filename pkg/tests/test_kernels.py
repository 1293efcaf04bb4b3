import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veritop import _kernels
from veritop._kernels import numpy_backend
from oracles import (
    continuous_brute,
    dovetail_brute,
    intersection_closure_oracle,
    run_all_brute,
    union_closure_oracle,
)

try:
    from veritop._kernels import numba_backend
    BACKENDS = [numpy_backend, numba_backend]
except ImportError:  # pragma: no cover - numba is normally present
    numba_backend = None
    BACKENDS = [numpy_backend]

backends = pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)

script_lists = st.lists(st.integers(0, 15), min_size=1, max_size=8)
mask_lists = st.lists(st.integers(0, 255), max_size=7)


@backends
class TestScheduleKernels:
    @given(ks=script_lists, fuel=st.integers(1, 300))
    def test_dovetail_matches_brute(self, backend, ks, fuel):
        expected = dovetail_brute([k or None for k in ks], fuel)
        status, winner, rnd, total, done = backend.dovetail_any_scripted(ks, fuel)
        if expected[0] == "success":
            assert (status, winner, rnd, total, done) == (1,) + expected[1:]
        else:
            assert (status, total, done) == (0, expected[3], expected[4])

    @given(ks=script_lists, fuel=st.integers(1, 300))
    def test_run_all_matches_brute(self, backend, ks, fuel):
        expected = run_all_brute([k or None for k in ks], fuel)
        status, total = backend.run_all_scripted(ks, fuel)
        assert ("success" if status == 1 else "exhausted", total) == expected


@backends
class TestClosureKernels:
    @given(masks=mask_lists)
    def test_union_closure(self, backend, masks):
        got = backend.union_closure(masks, 8)
        assert set(int(m) for m in got) == union_closure_oracle(masks)
        assert list(got) == sorted(got)

    @given(masks=mask_lists)
    def test_intersection_closure(self, backend, masks):
        got = backend.intersection_closure(masks, 8)
        assert set(int(m) for m in got) == intersection_closure_oracle(8, masks)
        assert list(got) == sorted(got)

    def test_empty_family(self, backend):
        assert list(backend.union_closure([], 3)) == [0]
        assert list(backend.intersection_closure([], 3)) == [7]


@st.composite
def topology_masks(draw, n_points):
    full = (1 << n_points) - 1
    generators = draw(st.lists(st.integers(0, full), max_size=4))
    closed = {0, full}
    frontier = list(generators)
    while frontier:
        m = frontier.pop()
        for other in list(closed):
            for c in (m & other, m | other):
                if c not in closed:
                    closed.add(c)
                    frontier.append(c)
        closed.add(m)
    return sorted(closed)


@backends
class TestContinuityKernel:
    @given(data=st.data())
    @settings(max_examples=40)
    def test_matches_brute(self, backend, data):
        n_x = data.draw(st.integers(2, 3), label="n_x")
        n_y = data.draw(st.integers(2, 3), label="n_y")
        opens_x = data.draw(topology_masks(n_x), label="opens_x")
        opens_y = data.draw(topology_masks(n_y), label="opens_y")
        ids = backend.continuous_assignments(n_x, n_y, opens_x, opens_y)
        expected = continuous_brute(n_x, n_y, opens_x, opens_y)
        # Candidate r encodes the tuple base-n_y with f(0) most significant.
        decoded = []
        for r in ids:
            values = []
            rest = int(r)
            for _ in range(n_x):
                values.append(rest % n_y)
                rest //= n_y
            decoded.append(tuple(reversed(values)))
        assert decoded == expected

    def test_identity_always_included(self, backend):
        opens = [0, 1, 3]  # {}, {0}, {0,1}
        ids = backend.continuous_assignments(2, 2, opens, opens)
        assert 0 * 2 + 1 in [int(i) for i in ids]  # id of (0, 1)


@pytest.mark.skipif(numba_backend is None, reason="numba unavailable")
class TestBackendAgreement:
    @given(ks=script_lists, fuel=st.integers(1, 500))
    def test_dovetail_identical(self, ks, fuel):
        assert tuple(numpy_backend.dovetail_any_scripted(ks, fuel)) == tuple(
            numba_backend.dovetail_any_scripted(ks, fuel)
        )

    @given(ks=script_lists, fuel=st.integers(1, 500))
    def test_run_all_identical(self, ks, fuel):
        assert tuple(numpy_backend.run_all_scripted(ks, fuel)) == tuple(
            numba_backend.run_all_scripted(ks, fuel)
        )

    @given(masks=st.lists(st.integers(0, 1023), max_size=8))
    def test_closures_identical(self, masks):
        for name in ("union_closure", "intersection_closure"):
            a = getattr(numpy_backend, name)(masks, 10)
            b = getattr(numba_backend, name)(masks, 10)
            assert np.array_equal(np.asarray(a), np.asarray(b))

    @given(data=st.data())
    @settings(max_examples=30)
    def test_continuity_identical(self, data):
        n_x = data.draw(st.integers(2, 4))
        n_y = data.draw(st.integers(2, 3))
        opens_x = data.draw(topology_masks(n_x))
        opens_y = data.draw(topology_masks(n_y))
        a = numpy_backend.continuous_assignments(n_x, n_y, opens_x, opens_y)
        b = numba_backend.continuous_assignments(n_x, n_y, opens_x, opens_y)
        assert np.array_equal(np.asarray(a), np.asarray(b))


class TestBackendSelection:
    def _selected_backend(self, env_value):
        env = dict(os.environ)
        env.pop("VERITOP_NUMBA", None)
        if env_value is not None:
            env["VERITOP_NUMBA"] = env_value
        out = subprocess.run(
            [sys.executable, "-c", "from veritop import _kernels; print(_kernels.backend_name)"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        return out.stdout.strip()

    def test_flag_forces_numpy(self):
        assert self._selected_backend("0") == "numpy"
        assert self._selected_backend("off") == "numpy"

    @pytest.mark.skipif(numba_backend is None, reason="numba unavailable")
    def test_default_prefers_numba(self):
        assert self._selected_backend(None) == "numba"
        assert self._selected_backend("1") == "numba"

    def test_loaded_backend_is_consistent(self):
        expected = "numba" if (numba_backend is not None and _kernels.numba_requested()) else "numpy"
        assert _kernels.backend_name == expected
