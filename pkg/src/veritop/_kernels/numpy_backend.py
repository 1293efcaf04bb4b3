"""Fallback kernels: exact integer closed forms plus vectorized filters.

The dovetail closed form replaces step-by-step simulation.  With tests
at positions 1..L and scripts k_i (0 = never succeeds), test i can first
fire in round N_i = max(i, k_i); the winner minimizes (N_i, i).  Rounds
before the winning one run in full, costing m * min(m, L) steps each.
"""

import numpy as np

NAME = "numpy"

_NO_WINNER = np.int64(1) << 62


def _cumfull(n, length):
    # Total steps consumed by complete rounds 1..n over a stream of the
    # given length, as exact integers.
    if n <= 0:
        return 0
    if n <= length:
        return n * (n + 1) * (2 * n + 1) // 6
    head = length * (length + 1) * (2 * length + 1) // 6
    return head + length * (n * (n + 1) // 2 - length * (length + 1) // 2)


def _rounds_within(fuel, length):
    # Largest n with _cumfull(n) <= fuel.
    if fuel < 1:
        return 0
    hi = 1
    while _cumfull(hi, length) <= fuel:
        hi <<= 1
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if _cumfull(mid, length) <= fuel:
            lo = mid
        else:
            hi = mid
    return lo


def dovetail_any_scripted(ks, fuel):
    arr = np.asarray(ks, dtype=np.int64)
    length = int(arr.shape[0])
    fuel = int(fuel)
    positions = np.arange(1, length + 1, dtype=np.int64)
    first_round = np.where(arr > 0, np.maximum(positions, arr), _NO_WINNER)
    n_win = int(first_round.min()) if length else int(_NO_WINNER)
    if n_win != int(_NO_WINNER):
        winner = int(np.argmax(first_round == n_win)) + 1
        # Earlier rounds run in full; in the winning round, slots before
        # the winner burn n_win steps each and the winner stops at k.
        total = (
            _cumfull(n_win - 1, length)
            + (winner - 1) * n_win
            + int(arr[winner - 1])
        )
        if total <= fuel:
            return 1, winner, n_win, total, n_win
    return 0, 0, 0, fuel, _rounds_within(fuel, length)


def run_all_scripted(ks, fuel):
    arr = np.asarray(ks, dtype=np.int64)
    fuel = int(fuel)
    if arr.size and (arr > 0).all():
        needed = int(arr.sum())
        if needed <= fuel:
            return 1, needed
    return 0, fuel


def _closure(masks, n_points, seed, combine):
    size = 1 << n_points
    arr = np.asarray(masks, dtype=np.int64)
    seen = np.zeros(size, dtype=np.bool_)
    seen[seed] = True
    frontier = np.array([seed], dtype=np.int64)
    while frontier.size and arr.size:
        candidates = np.unique(combine(frontier[:, None], arr[None, :]).ravel())
        fresh = candidates[~seen[candidates]]
        seen[fresh] = True
        frontier = fresh
    return np.nonzero(seen)[0].astype(np.int64)


def union_closure(masks, n_points):
    """All unions of subfamilies (the empty union included), mask-sorted."""
    return _closure(masks, n_points, 0, np.bitwise_or)


def intersection_closure(masks, n_points):
    """All intersections of subfamilies (the empty one gives the full set)."""
    full = (1 << n_points) - 1
    return _closure(masks, n_points, full, np.bitwise_and)


def continuous_assignments(n_x, n_y, opens_x, opens_y):
    """Ids of the point maps whose preimages of opens are all open."""
    ox = np.sort(np.asarray(opens_x, dtype=np.int64))
    oy = np.asarray(opens_y, dtype=np.int64)
    # Row r of the candidate table is the value tuple with id r; the id
    # orders tuples lexicographically, f(0) most significant.
    cands = np.indices((n_y,) * n_x, dtype=np.int64).reshape(n_x, -1).T
    bit_weights = np.int64(1) << np.arange(n_x, dtype=np.int64)
    keep = np.ones(cands.shape[0], dtype=np.bool_)
    for v in oy:
        bits = (int(v) >> cands) & 1
        preimages = (bits * bit_weights).sum(axis=1)
        keep &= np.isin(preimages, ox)
    return np.nonzero(keep)[0].astype(np.int64)
