"""Min-max dynamic programme over subsets of a small ground set.

Both locality and the two graph widths have the shape

    best(S) = max(cost(S), min over x in S of best(S - {x}))

for a cost table indexed by bitmask. The value is best(full). The returned order is
the lexicographically smallest sequence whose prefix sets all stay within that value.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.bitwise_count(masks)
    order = np.argsort(counts, kind="stable")
    bounds = np.searchsorted(counts[order], np.arange(n + 2))
    return tuple(order[bounds[p]:bounds[p + 1]] for p in range(n + 1))


def layers(n: int) -> tuple[np.ndarray, ...]:
    # Large tables are not worth pinning in the cache.
    if n > 16:
        return _layers.__wrapped__(n)
    return _layers(n)


def pairwise_sums(n: int, weight) -> np.ndarray:
    """Table t with t[S] = sum of weight(u, v) over pairs u < v inside S."""
    table = np.zeros(1, dtype=np.int32)
    for v in range(n):
        into = np.zeros(1, dtype=np.int32)
        for u in range(v):
            into = np.concatenate([into, into + weight(u, v)])
        table = np.concatenate([table, table + into])
    return table


def singleton_sums(n: int, value) -> np.ndarray:
    """Table t with t[S] = sum of value(v) over v in S."""
    table = np.zeros(1, dtype=np.int32)
    for v in range(n):
        table = np.concatenate([table, table + value(v)])
    return table


def minmax_order(cost: np.ndarray, n: int) -> tuple[int, tuple[int, ...]]:
    """Solve the recurrence for a cost table of length 2**n."""
    if n == 0:
        return int(cost[0]), ()
    levels = layers(n)
    best = np.empty_like(cost)
    best[0] = cost[0]
    for p in range(1, n + 1):
        idx = levels[p]
        low = np.full(len(idx), np.iinfo(cost.dtype).max, dtype=cost.dtype)
        for x in range(n):
            has = ((idx >> x) & 1).astype(bool)
            low[has] = np.minimum(low[has], best[idx[has] ^ (1 << x)])
        best[idx] = np.maximum(cost[idx], low)
    full = (1 << n) - 1
    value = int(best[full])

    # Which sets can still be completed to the full set without exceeding value.
    fits = cost <= value
    reach = np.zeros(1 << n, dtype=bool)
    reach[full] = fits[full]
    for p in range(n - 1, -1, -1):
        idx = levels[p]
        ok = np.zeros(len(idx), dtype=bool)
        for x in range(n):
            free = ((idx >> x) & 1) == 0
            ok[free] |= reach[idx[free] | (1 << x)]
        reach[idx] = fits[idx] & ok

    order = []
    marked = 0
    for _ in range(n):
        for x in range(n):
            if not marked >> x & 1 and reach[marked | (1 << x)]:
                order.append(x)
                marked |= 1 << x
                break
    return value, tuple(order)
