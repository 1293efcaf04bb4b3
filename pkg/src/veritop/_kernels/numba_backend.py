"""Jitted kernels.  Each function mirrors its numpy_backend twin exactly."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _dovetail_sim(ks, fuel):
    # Round n hands each of the first n tests a fresh n-step run, in index
    # order; a test whose script says "succeed at step k" fires when the
    # run reaches its k-th step.  Every step burns one unit of fuel.
    length = ks.shape[0]
    total = np.int64(0)
    rounds_completed = np.int64(0)
    n = np.int64(1)
    while True:
        limit = n if n < length else length
        for slot in range(1, limit + 1):
            k = ks[slot - 1]
            run_steps = np.int64(0)
            while run_steps < n:
                if total >= fuel:
                    return (np.int64(0), np.int64(0), np.int64(0), total, rounds_completed)
                total += 1
                run_steps += 1
                if k > 0 and run_steps == k:
                    return (np.int64(1), np.int64(slot), n, total, n)
        rounds_completed = n
        n += 1


def dovetail_any_scripted(ks, fuel):
    status, winner, rnd, total, done = _dovetail_sim(
        np.asarray(ks, dtype=np.int64), np.int64(fuel)
    )
    return int(status), int(winner), int(rnd), int(total), int(done)


@njit(cache=True)
def _run_all_sim(ks, fuel):
    total = np.int64(0)
    for i in range(ks.shape[0]):
        k = ks[i]
        run_steps = np.int64(0)
        while True:
            if total >= fuel:
                return (np.int64(0), total)
            total += 1
            run_steps += 1
            if k > 0 and run_steps == k:
                break
    return (np.int64(1), total)


def run_all_scripted(ks, fuel):
    status, total = _run_all_sim(np.asarray(ks, dtype=np.int64), np.int64(fuel))
    return int(status), int(total)


@njit(cache=True)
def _closure_table(masks, n_points, seed, use_or):
    # Breadth-first closure over the 2**n subset table: every reachable
    # mask is a fold of the seed with some subfamily.
    size = 1 << n_points
    seen = np.zeros(size, dtype=np.bool_)
    work = np.empty(size, dtype=np.int64)
    seen[seed] = True
    work[0] = seed
    top = 1
    head = 0
    while head < top:
        m = work[head]
        head += 1
        for j in range(masks.shape[0]):
            if use_or:
                nm = m | masks[j]
            else:
                nm = m & masks[j]
            if not seen[nm]:
                seen[nm] = True
                work[top] = nm
                top += 1
    return np.sort(work[:top])


def union_closure(masks, n_points):
    """All unions of subfamilies (the empty union included), mask-sorted."""
    arr = np.asarray(masks, dtype=np.int64)
    return _closure_table(arr, n_points, np.int64(0), True)


def intersection_closure(masks, n_points):
    """All intersections of subfamilies (the empty one gives the full set)."""
    arr = np.asarray(masks, dtype=np.int64)
    full = np.int64((1 << n_points) - 1)
    return _closure_table(arr, n_points, full, False)


@njit(cache=True)
def _contains_sorted(arr, value):
    lo = 0
    hi = arr.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.shape[0] and arr[lo] == value


@njit(cache=True)
def _continuity_filter(n_x, n_y, opens_x, opens_y):
    # Candidate ids run in lexicographic order of the value tuple
    # (f(0), f(1), ...): digit x has weight n_y ** (n_x - 1 - x).
    total = np.int64(1)
    for _ in range(n_x):
        total *= n_y
    weights = np.empty(n_x, dtype=np.int64)
    w = np.int64(1)
    for x in range(n_x - 1, -1, -1):
        weights[x] = w
        w *= n_y
    out = np.empty(total, dtype=np.int64)
    count = 0
    values = np.empty(n_x, dtype=np.int64)
    for cand in range(total):
        for x in range(n_x):
            values[x] = (cand // weights[x]) % n_y
        ok = True
        for j in range(opens_y.shape[0]):
            v = opens_y[j]
            pre = np.int64(0)
            for x in range(n_x):
                if (v >> values[x]) & 1:
                    pre |= np.int64(1) << x
            if not _contains_sorted(opens_x, pre):
                ok = False
                break
        if ok:
            out[count] = cand
            count += 1
    return out[:count]


def continuous_assignments(n_x, n_y, opens_x, opens_y):
    """Ids of the point maps whose preimages of opens are all open."""
    ox = np.sort(np.asarray(opens_x, dtype=np.int64))
    oy = np.asarray(opens_y, dtype=np.int64)
    return _continuity_filter(np.int64(n_x), np.int64(n_y), ox, oy)
