"""Seeded instance generators.

All randomness comes from :class:`~minpac.rng.SplitMix64`, so a given
``(parameters, seed)`` pair yields the same instance on every platform.
Arc lists are emitted sorted by ``(tail, head)``.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInstance, UncoverableElement
from .graph import MAX_WEIGHT, Instance
from .rng import SplitMix64

DEFAULT_SEED = 0


def _check_weight(max_weight: int) -> int:
    max_weight = int(max_weight)
    if not 0 <= max_weight <= MAX_WEIGHT:
        raise ValueError(f"max_weight must lie in [0, {MAX_WEIGHT}]")
    return max_weight


def _sorted_instance(n: int, tails, heads, weights) -> Instance:
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    order = np.lexsort((heads, tails))
    return Instance.from_arrays(n, tails[order], heads[order], weights[order])


def setcover_vertices(universe_size: int, n_sets: int) -> dict:
    """Vertex ids used by :func:`gen_setcover`.

    ``s`` is 0, set vertices are ``1..n_sets`` in input order, element
    ``e`` (1-based) is ``n_sets + e`` and ``t`` is the last vertex.
    """
    return {
        "s": 0,
        "sets": list(range(1, n_sets + 1)),
        "elements": list(range(n_sets + 1, n_sets + universe_size + 1)),
        "t": n_sets + universe_size + 1,
    }


def gen_setcover(universe_size: int, sets, ell: int):
    """Reduce a Set Cover instance to MinPAC.

    Returns ``(instance, k)`` with ``k = ell``.  Weight-0 arcs ``t->s``,
    ``s->v_S``, ``v_S->t`` and ``v_u->t``; weight-1 arcs ``v_S->v_u`` for
    every ``u in S``.  A cover of size ``j`` corresponds to a solution of
    cost ``j``.
    """
    universe_size = int(universe_size)
    sets = [sorted(set(int(e) for e in S)) for S in sets]
    if universe_size < 1:
        raise InvalidInstance("universe must be nonempty")
    if not sets:
        raise UncoverableElement("no sets given; element 1 cannot be covered")
    covered = set()
    for i, S in enumerate(sets, 1):
        if not S:
            raise InvalidInstance(f"set {i} is empty")
        for e in S:
            if not 1 <= e <= universe_size:
                raise InvalidInstance(f"set {i} contains {e}, outside 1..{universe_size}")
        covered.update(S)
    missing = sorted(set(range(1, universe_size + 1)) - covered)
    if missing:
        raise UncoverableElement(f"element {missing[0]} is in no set")

    ids = setcover_vertices(universe_size, len(sets))
    s, t = ids["s"], ids["t"]
    arcs = [(t, s, 0)]
    for vs, S in zip(ids["sets"], sets):
        arcs.append((s, vs, 0))
        arcs.append((vs, t, 0))
        arcs.extend((vs, ids["elements"][e - 1], 1) for e in S)
    arcs.extend((vu, t, 0) for vu in ids["elements"])
    arcs.sort()
    return Instance(t + 1, arcs), int(ell)


def gen_grid(rows: int, cols: int, heavy_weight: int, seed: int = DEFAULT_SEED, *,
             walls: int = 0, density: float = 0.05) -> Instance:
    """Bidirectional grid with unit weights plus sparse heavier arcs.

    Vertex ``(r, c)`` has id ``r * cols + c``.  ``walls`` vertical cut lines,
    spread evenly over the columns, make every grid arc crossing them cost
    ``heavy_weight``; with ``heavy_weight > 1`` the obligatory subgraph under
    the trivial bound then has ``walls + 1`` SCCs.  Independently, each
    vertex receives with probability ``density`` one diagonal arc of weight
    uniform in ``[min(2, heavy_weight), heavy_weight]``.
    """
    rows, cols = int(rows), int(cols)
    heavy_weight = _check_weight(heavy_weight)
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("grid needs rows * cols >= 2")
    if not 0 <= walls < cols:
        raise ValueError("walls must lie in [0, cols - 1]")
    rng = SplitMix64(seed)
    n = rows * cols
    cut = {(cols * j) // (walls + 1) for j in range(1, walls + 1)}

    ids = np.arange(n, dtype=np.int64).reshape(rows, cols)
    right_t = ids[:, :-1].ravel()
    right_w = np.where(np.isin(np.arange(1, cols), list(cut)), heavy_weight, 1)
    right_w = np.tile(right_w, rows)
    down_t = ids[:-1, :].ravel()
    tails = [right_t, right_t + 1, down_t, down_t + cols]
    heads = [right_t + 1, right_t, down_t + cols, down_t]
    weights = [right_w, right_w, np.ones(down_t.size, np.int64), np.ones(down_t.size, np.int64)]

    lo = min(2, heavy_weight)
    extra_t, extra_h, extra_w = [], [], []
    for v in range(n):
        if rng.random() >= density:
            continue
        r, c = divmod(v, cols)
        dr, dc = ((1, 1), (1, -1), (-1, 1), (-1, -1))[rng.below(4)]
        w = rng.integers(lo, heavy_weight)
        if 0 <= r + dr < rows and 0 <= c + dc < cols:
            extra_t.append(v)
            extra_h.append((r + dr) * cols + c + dc)
            extra_w.append(w)
    tails.append(np.asarray(extra_t, np.int64))
    heads.append(np.asarray(extra_h, np.int64))
    weights.append(np.asarray(extra_w, np.int64))
    return _sorted_instance(n, np.concatenate(tails), np.concatenate(heads), np.concatenate(weights))


def gen_random_fes(n: int, g: int, max_weight: int, seed: int = DEFAULT_SEED) -> Instance:
    """Random tree of antiparallel arc pairs plus ``g`` single extra arcs.

    The tree is a random recursive tree on a shuffled vertex order.  Each
    extra arc joins two vertices not yet adjacent in the underlying
    undirected graph, so the feedback edge number is exactly ``g``.
    """
    n, g = int(n), int(g)
    max_weight = _check_weight(max_weight)
    if n < 2:
        raise ValueError("gen_random_fes needs n >= 2")
    if g < 0:
        raise ValueError("g must be nonnegative")
    if g > n * (n - 1) // 2 - (n - 1):
        raise ValueError(f"a graph on {n} vertices cannot have feedback edge number {g}")
    rng = SplitMix64(seed)
    # same draws as SplitMix64.shuffle: swap position n-1-i with swaps[i]
    swaps = rng.below_array(np.arange(n, 1, -1, dtype=np.uint64)).astype(np.int64)
    order = np.arange(n, dtype=np.int64)
    for i, j in enumerate(swaps.tolist()):
        pos = n - 1 - i
        order[pos], order[j] = order[j], order[pos]
    parents = rng.below_array(np.arange(1, n, dtype=np.uint64)).astype(np.int64)
    child = order[1:]
    parent = order[parents]
    wt = rng.below_array(np.full(2 * (n - 1), max_weight + 1, dtype=np.uint64)).astype(np.int64)

    adjacent = set(zip(np.minimum(child, parent).tolist(), np.maximum(child, parent).tolist()))
    extra = []
    while len(extra) < g:
        u, v = rng.below(n), rng.below(n)
        key = (min(u, v), max(u, v))
        if u == v or key in adjacent:
            continue
        adjacent.add(key)
        extra.append((u, v, rng.below(max_weight + 1)))
    ex = np.asarray(extra, dtype=np.int64).reshape(-1, 3)
    tails = np.concatenate([child, parent, ex[:, 0]])
    heads = np.concatenate([parent, child, ex[:, 1]])
    weights = np.concatenate([wt, ex[:, 2]])
    return _sorted_instance(n, tails, heads, weights)


def gen_random_sc(n: int, arc_prob: float, max_weight: int, seed: int = DEFAULT_SEED) -> Instance:
    """Random Hamiltonian cycle plus independent arcs with probability ``arc_prob``.

    The cycle follows a shuffled vertex order.  Remaining ordered pairs are
    then visited tail-major and kept with probability ``arc_prob``.
    """
    n = int(n)
    max_weight = _check_weight(max_weight)
    if n < 1:
        raise ValueError("gen_random_sc needs n >= 1")
    rng = SplitMix64(seed)
    order = rng.shuffle(list(range(n)))
    arcs = {}
    if n >= 2:
        for i in range(n):
            arcs[(order[i], order[(i + 1) % n])] = rng.below(max_weight + 1)
    for u in range(n):
        for v in range(n):
            if u != v and (u, v) not in arcs and rng.random() < arc_prob:
                arcs[(u, v)] = rng.below(max_weight + 1)
    return Instance(n, sorted((u, v, w) for (u, v), w in arcs.items()))


__all__ = [
    "DEFAULT_SEED",
    "gen_grid",
    "gen_random_fes",
    "gen_random_sc",
    "gen_setcover",
    "setcover_vertices",
]
