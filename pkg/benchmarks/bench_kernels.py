"""Times the numba kernels against the pure-numpy fallback.

Run with `python benchmarks/bench_kernels.py`.  The first numba call
compiles, so every kernel is warmed up before timing.  Workloads are
sized to make the hot loops visible without taking minutes.
"""

import random
import time

from veritop._kernels import numpy_backend

try:
    from veritop._kernels import numba_backend
except ImportError:
    numba_backend = None

rng = random.Random(93)


def time_call(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def dovetail_workload():
    cases = []
    for _ in range(2000):
        length = rng.randint(1, 12)
        ks = [rng.randint(0, 40) for _ in range(length)]
        cases.append((ks, rng.randint(1, 4000)))
    def run(backend):
        for ks, fuel in cases:
            backend.dovetail_any_scripted(ks, fuel)
    return run


def run_all_workload():
    cases = [
        ([rng.randint(0, 50) for _ in range(rng.randint(1, 12))], rng.randint(1, 400))
        for _ in range(2000)
    ]
    def run(backend):
        for ks, fuel in cases:
            backend.run_all_scripted(ks, fuel)
    return run


def closure_workload():
    n = 16
    families = [
        [rng.randrange(1 << n) for _ in range(8)] for _ in range(60)
    ]
    def run(backend):
        for masks in families:
            backend.union_closure(masks, n)
            backend.intersection_closure(masks, n)
    return run


def continuity_workload():
    # Dense 6 -> 5 instance: 15,625 candidate maps per call.
    n_x, n_y = 6, 5
    opens_x = sorted({0, (1 << n_x) - 1, *(rng.randrange(1 << n_x) for _ in range(40))})
    opens_y = sorted({0, (1 << n_y) - 1, *(rng.randrange(1 << n_y) for _ in range(12))})
    def run(backend):
        backend.continuous_assignments(n_x, n_y, opens_x, opens_y)
    return run


def main():
    workloads = [
        ("dovetail_any_scripted x2000", dovetail_workload()),
        ("run_all_scripted x2000", run_all_workload()),
        ("union+intersection closure x60 (n=16)", closure_workload()),
        ("continuous_assignments (6->5 points)", continuity_workload()),
    ]
    backends = [("numpy", numpy_backend)]
    if numba_backend is not None:
        backends.append(("numba", numba_backend))
        for _, workload in workloads:
            workload(numba_backend)  # compile before timing
    else:
        print("numba backend unavailable; timing the fallback only")

    width = max(len(name) for name, _ in workloads)
    header = f"{'workload'.ljust(width)}  " + "  ".join(f"{n:>10}" for n, _ in backends)
    print(header)
    print("-" * len(header))
    results = {}
    for name, workload in workloads:
        row = [name.ljust(width)]
        for backend_name, backend in backends:
            best = time_call(workload, (backend,), repeats=3)
            results[(name, backend_name)] = best
            row.append(f"{best * 1000:>8.2f}ms")
        print("  ".join(row))
    if numba_backend is not None:
        print()
        for name, _ in workloads:
            ratio = results[(name, "numpy")] / results[(name, "numba")]
            print(f"{name.ljust(width)}  numpy/numba = {ratio:5.1f}x")


if __name__ == "__main__":
    main()
