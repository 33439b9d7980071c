"""Brute-force ground truth for MinPAC.

Any solution can be closed upwards: give every vertex ``v`` the threshold
``t(v)`` equal to its heaviest chosen arc and add all arcs ``vu`` with
``w(vu) <= t(v)``.  This keeps strong connectivity and the cost, so the
optimum is the cheapest *threshold assignment* whose induced arc set is
strongly connected.  :func:`oracle_solve` enumerates all of them, one vertex
per digit of a mixed-radix counter (vertex 0 most significant, thresholds
ascending), in batches evaluated with numpy bit masks.

:func:`arc_subset_oracle` is a second, deliberately naive enumerator over all
``2^m`` arc subsets used to validate the first on tiny instances.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .exceptions import CapExceeded, Infeasible
from .graph import Instance, Solution, check_u64

DEFAULT_COMBINATION_CAP = 10**7
_SATURATE = 2**63 - 1
_CHUNK = 1 << 15


def threshold_choices(instance: Instance) -> list:
    """Sorted distinct outgoing weights per vertex (``[0]`` for an isolated vertex)."""
    choices = [set() for _ in range(instance.n)]
    for v, _, w in instance.arcs:
        choices[v].add(w)
    return [sorted(c) if c else [0] for c in choices]


def oracle_count_combinations(instance: Instance) -> int:
    """Number of threshold assignments, saturating at ``2**63 - 1``."""
    total = 1
    for c in threshold_choices(instance):
        total *= len(c)
        if total > _SATURATE:
            return _SATURATE
    return total


def oracle_solve(instance: Instance, combination_cap: int = DEFAULT_COMBINATION_CAP) -> Solution:
    """Exact optimum by exhaustive threshold enumeration.

    Raises :class:`CapExceeded` if the number of assignments exceeds
    ``combination_cap``.  Ties go to the first assignment in enumeration
    order.
    """
    count = oracle_count_combinations(instance)
    if count > combination_cap:
        raise CapExceeded(
            f"{count} threshold combinations exceed the cap of {combination_cap}", count, combination_cap
        )
    if instance.n == 1:
        return Solution((), 0)
    choices = threshold_choices(instance)
    if instance.n <= 64 and sum(c[-1] for c in choices) <= _SATURATE:
        best = _enumerate_numpy(instance, choices, count)
    else:
        best = _enumerate_python(instance, choices, count)
    if best is None:
        # only reachable for inputs that are not strongly connected
        raise Infeasible("no strongly connected spanning subgraph exists")
    thresholds = _decode(best, [len(c) for c in choices])
    thresholds = [choices[v][d] for v, d in enumerate(thresholds)]
    arcs = [(v, u) for v, u, w in instance.arcs if w <= thresholds[v]]
    return Solution(arcs, check_u64(sum(thresholds), "cost"))


def _decode(index: int, radices: list) -> list:
    digits = [0] * len(radices)
    for v in range(len(radices) - 1, -1, -1):
        index, digits[v] = divmod(index, radices[v])
    return digits


def _enumerate_numpy(instance: Instance, choices: list, count: int):
    n = instance.n
    dtype = np.uint32 if n <= 32 else np.uint64
    radices = [len(c) for c in choices]
    strides = [1] * n
    for v in range(n - 2, -1, -1):
        strides[v] = strides[v + 1] * radices[v + 1]
    table = [np.asarray(c, dtype=np.int64) for c in choices]
    tails = instance.tails.tolist()
    heads = instance.heads.tolist()
    weights = instance.weights.tolist()
    one = dtype(1)
    full = dtype((1 << n) - 1) if n < 64 else np.uint64(2**64 - 1)
    shifts = [dtype(v) for v in range(n)]
    best_cost = None
    best_index = None
    for start in range(0, count, _CHUNK):
        idx = np.arange(start, min(count, start + _CHUNK), dtype=np.int64)
        thr = np.empty((n, idx.size), dtype=np.int64)
        for v in range(n):
            thr[v] = table[v][(idx // strides[v]) % radices[v]]
        out = np.zeros((n, idx.size), dtype=dtype)
        inn = np.zeros((n, idx.size), dtype=dtype)
        for t, h, w in zip(tails, heads, weights):
            inc = (thr[t] >= w).astype(dtype)
            out[t] |= inc << shifts[h]
            inn[h] |= inc << shifts[t]
        ok = (_reach(out, shifts, one) == full) & (_reach(inn, shifts, one) == full)
        if not ok.any():
            continue
        costs = thr.sum(axis=0)
        costs = np.where(ok, costs, np.iinfo(np.int64).max)
        j = int(np.argmin(costs))
        c = int(costs[j])
        if best_cost is None or c < best_cost:
            best_cost, best_index = c, start + j
    return best_index


def _reach(adj: np.ndarray, shifts, one) -> np.ndarray:
    """Vertices reachable from vertex 0, as a bit mask per column."""
    reach = np.full(adj.shape[1], one, dtype=adj.dtype)
    while True:
        before = reach.copy()
        for v, sh in enumerate(shifts):
            has = (reach >> sh) & one
            reach |= adj[v] * has
        if np.array_equal(before, reach):
            return reach


def _enumerate_python(instance: Instance, choices: list, count: int):
    n = instance.n
    radices = [len(c) for c in choices]
    best_cost = None
    best_index = None
    for index in range(count):
        digits = _decode(index, radices)
        thr = [choices[v][d] for v, d in enumerate(digits)]
        arcs = [(v, u) for v, u, w in instance.arcs if w <= thr[v]]
        if _strongly_connected_pairs(n, arcs):
            c = sum(thr)
            if best_cost is None or c < best_cost:
                best_cost, best_index = c, index
    return best_index


def _strongly_connected_pairs(n: int, arcs) -> bool:
    fwd = [[] for _ in range(n)]
    bwd = [[] for _ in range(n)]
    for v, u in arcs:
        fwd[v].append(u)
        bwd[u].append(v)
    for adj in (fwd, bwd):
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        if not all(seen):
            return False
    return True


def arc_subset_oracle(instance: Instance, max_arcs: int = 14) -> Solution:
    """Cheapest strongly connected spanning arc subset over all ``2^m`` subsets.

    Only meant for ``m <= max_arcs``; intentionally shares no logic with the
    threshold enumeration.
    """
    m = instance.m
    if m > max_arcs:
        raise CapExceeded(f"{m} arcs exceed the subset-oracle limit of {max_arcs}", m, max_arcs)
    n = instance.n
    if n == 1:
        return Solution((), 0)
    arcs = instance.arcs
    best = None
    for mask in range(1 << m):
        chosen = [arcs[i] for i in range(m) if mask >> i & 1]
        if len(chosen) < n:
            continue
        pay = [-1] * n
        for v, _, w in chosen:
            pay[v] = max(pay[v], w)
        if min(pay) < 0:
            continue
        total = sum(pay)
        if best is not None and total >= best[0]:
            continue
        if _strongly_connected_pairs(n, [(v, u) for v, u, _ in chosen]):
            best = (total, chosen)
    if best is None:
        raise Infeasible("no strongly connected spanning subgraph exists")
    return Solution([(v, u) for v, u, _ in best[1]], best[0])


__all__ = [
    "DEFAULT_COMBINATION_CAP",
    "arc_subset_oracle",
    "oracle_count_combinations",
    "oracle_solve",
    "threshold_choices",
]
