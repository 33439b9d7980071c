"""Kernelization by the feedback edge number of the underlying undirected graph.

Pipeline (:func:`kernelize_fes`):

* weight normalization: shift each vertex's outgoing weights so the
  cheapest becomes 0, paying the shift into ``d``;
* pendant removal: a vertex with one neighbour ``u`` is deleted, ``d`` pays
  both arcs and ``u``'s other arcs get cheaper by ``w(uv)``;
* long-path replacement: the inner vertices ``v_2 .. v_{h-1}`` of every
  maximal induced path with ``h >= 7`` inner vertices are replaced by a
  four-vertex gadget.

If only a cycle is left after the first two steps it is solved directly
(:func:`solve_cycle`).  Every step is logged in a
:class:`~minpac.journal.KernelJournal`, and :func:`lift_solution_fes` turns
a kernel solution back into a solution of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

import numpy as np

from .exceptions import (
    Infeasible,
    InvalidKernelSolution,
    NotStronglyConnected,
    WeightOverflow,
)
from .graph import (
    MAX_WEIGHT,
    Instance,
    Solution,
    check_u64,
    cost,
    is_strongly_connected,
    solution_from_arcs,
    verify_solution,
)
from .journal import R2, R3, R4, Cycle, KernelJournal

MIN_PATH_INNER = 7


# -- weight normalization and pendant removal, one application at a time ----

def _relabelled(survivors, arcs) -> Instance:
    index = {v: i for i, v in enumerate(survivors)}
    out = sorted((index[t], index[h], w) for t, h, w in arcs if t in index and h in index)
    return Instance(max(1, len(survivors)), out)


def rule2_normalize(instance: Instance):
    """Subtract each vertex's minimum outgoing weight from all its outgoing arcs.

    Returns ``(instance', records)``; ``d`` grows by the sum of the deltas.
    """
    mins = instance.min_out_weight
    shift = np.maximum(mins, 0)
    weights = instance.weights - shift[instance.tails]
    records = [R2(v, int(shift[v])) for v in np.flatnonzero(shift > 0).tolist()]
    return Instance.from_arrays(instance.n, instance.tails, instance.heads, weights), records


def rule3_degree1(instance: Instance, v=None):
    """Delete pendant vertices.

    With ``v`` given, remove just that vertex (it must have exactly one
    neighbour); otherwise repeatedly remove the smallest-id pendant vertex
    until none is left or a single vertex remains.  Surviving vertices are
    renumbered in ascending order; records use the input ids.
    """
    arcs = {(t, h): w for t, h, w in instance.arcs}
    nb = {x: set(ns) for x, ns in enumerate(instance.neighbors)}
    records = []

    def remove(x):
        (u,) = nb[x]
        if (x, u) not in arcs or (u, x) not in arcs:
            raise NotStronglyConnected(f"pendant vertex {x} lacks an arc to or from {u}")
        wvu, wuv = arcs.pop((x, u)), arcs.pop((u, x))
        for (t, h) in list(arcs):
            if t == u:
                arcs[(t, h)] = max(0, arcs[(t, h)] - wuv)
        nb[u].discard(x)
        del nb[x]
        records.append(R3(x, u, wvu, wuv))

    if v is not None:
        if len(nb.get(v, ())) != 1:
            raise ValueError(f"vertex {v} does not have exactly one neighbour")
        remove(v)
    else:
        while len(nb) > 1:
            pendant = [x for x in sorted(nb) if len(nb[x]) == 1]
            if not pendant:
                break
            remove(pendant[0])
    survivors = sorted(nb)
    return _relabelled(survivors, [(t, h, w) for (t, h), w in arcs.items()]), records


# -- linear-time combination -------------------------------------------------

_ROUND_MIN = 256


def _edge_arrays(instance: Instance):
    """Undirected edges ``(lo, hi)`` with the arc ids ``lo->hi`` and ``hi->lo`` (-1 if absent)."""
    n = instance.n
    tails, heads = instance.tails, instance.heads
    lo = np.minimum(tails, heads)
    hi = np.maximum(tails, heads)
    keys, inv = np.unique(lo * np.int64(n) + hi, return_inverse=True)
    up = np.full(keys.size, -1, dtype=np.int64)
    down = np.full(keys.size, -1, dtype=np.int64)
    ids = np.arange(instance.m, dtype=np.int64)
    fwd = tails < heads
    up[inv[fwd]] = ids[fwd]
    down[inv[~fwd]] = ids[~fwd]
    return keys // n, keys % n, up, down


def preprocess_linear(instance: Instance):
    """Normalize weights and strip pendant vertices in ``O(n + m)``.

    Weight updates are deferred: ``ell[v]`` collects what ``v`` has already
    paid (its cheapest arc, then the heaviest arc into a removed pendant
    neighbour) and is subtracted only from the arcs that survive.  A final
    normalization pass restores a zero-weight outgoing arc at every
    survivor.  Returns ``(instance', journal)``; the kernel numbers the
    survivors in ascending order.

    Pendants are stripped in rounds: all current leaves at once (ordered by
    neighbour, then by the weight of the arc into them, then by id), which
    is one valid sequential order of single removals.  Once rounds get
    small the rest is done one vertex at a time.  The lone neighbour of a
    leaf is read off a running XOR of its alive neighbours.
    """
    if not is_strongly_connected(instance):
        raise NotStronglyConnected("kernelization needs a strongly connected instance")
    n = instance.n
    journal = KernelJournal("fes", original=instance)
    if n == 1:
        journal.kernel = instance
        return instance, journal

    mins = instance.min_out_weight
    nz = np.flatnonzero(mins > 0)
    journal.add_block(R2, nz, mins[nz])
    d = int(mins.sum(dtype=object))

    e_lo, e_hi, up, down = _edge_arrays(instance)
    W = instance.weights
    deg = np.bincount(e_lo, minlength=n) + np.bincount(e_hi, minlength=n)
    eid = np.arange(e_lo.size, dtype=np.int64)
    xnb = np.zeros(n, dtype=np.int64)
    xe = np.zeros(n, dtype=np.int64)
    np.bitwise_xor.at(xnb, e_lo, e_hi)
    np.bitwise_xor.at(xnb, e_hi, e_lo)
    np.bitwise_xor.at(xe, e_lo, eid)
    np.bitwise_xor.at(xe, e_hi, eid)
    ell = mins.copy()
    alive = np.ones(n, dtype=bool)
    left = n

    def arcs_of(v, u, e):
        low = v < u
        return np.where(low, up[e], down[e]), np.where(low, down[e], up[e])

    leaves = np.flatnonzero(deg == 1)
    while leaves.size >= _ROUND_MIN and left > 2:
        u = xnb[leaves]
        e = xe[leaves]
        a_vu, a_uv = arcs_of(leaves, u, e)
        w_uv = W[a_uv]
        order = np.lexsort((leaves, w_uv, u))
        v, u, e, a_vu, w_uv = leaves[order], u[order], e[order], a_vu[order], w_uv[order]
        wvu = np.maximum(W[a_vu] - ell[v], 0)
        paid = ell[u]
        same = np.flatnonzero(u[1:] == u[:-1]) + 1
        paid[same] = np.maximum(paid[same], w_uv[same - 1])
        wuv = np.maximum(w_uv - paid, 0)
        np.maximum.at(ell, u, w_uv)
        journal.add_block(R3, v, u, wvu, wuv)
        d += int(wvu.sum(dtype=object)) + int(wuv.sum(dtype=object))
        alive[v] = False
        left -= v.size
        deg[v] = 0
        np.subtract.at(deg, u, 1)
        np.bitwise_xor.at(xnb, u, v)
        np.bitwise_xor.at(xe, u, e)
        touched = np.unique(u)
        leaves = touched[deg[touched] == 1]

    if left > 1 and leaves.size:
        deg_l, xnb_l, xe_l, ell_l = deg.tolist(), xnb.tolist(), xe.tolist(), ell.tolist()
        up_l, down_l, w_l = up.tolist(), down.tolist(), W.tolist()
        cols = ([], [], [], [])
        stack = leaves[::-1].tolist()
        while stack and left > 1:
            v = stack.pop()
            if deg_l[v] != 1:
                continue
            u, e = xnb_l[v], xe_l[v]
            a_vu, a_uv = (up_l[e], down_l[e]) if v < u else (down_l[e], up_l[e])
            wvu = max(0, w_l[a_vu] - ell_l[v])
            wuv = w_l[a_uv] - ell_l[u]
            if wuv > 0:
                ell_l[u] = w_l[a_uv]
            else:
                wuv = 0
            for col, x in zip(cols, (v, u, wvu, wuv)):
                col.append(x)
            d += wvu + wuv
            alive[v] = False
            left -= 1
            deg_l[v] = 0
            deg_l[u] -= 1
            xnb_l[u] ^= v
            xe_l[u] ^= e
            if deg_l[u] == 1:
                stack.append(u)
        journal.add_block(R3, *cols)
        ell = np.asarray(ell_l, dtype=np.int64)

    survivors = np.flatnonzero(alive)
    arc_keep = alive[instance.tails] & alive[instance.heads]
    tails = instance.tails[arc_keep]
    heads = instance.heads[arc_keep]
    cur = np.maximum(W[arc_keep] - ell[tails], 0)
    if survivors.size > 1:
        low = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(low, tails, cur)
        low[~alive] = 0
        extra = np.flatnonzero(low > 0)
        journal.add_block(R2, extra, low[extra])
        d += int(low[extra].sum(dtype=object))
        cur = cur - low[tails]

    relabel = np.full(n, -1, dtype=np.int64)
    relabel[survivors] = np.arange(survivors.size)
    kt, kh = relabel[tails], relabel[heads]
    order = np.lexsort((kh, kt))
    kernel = Instance.from_arrays(max(1, survivors.size), kt[order], kh[order], cur[order])
    journal.d = check_u64(d, "offset d")
    journal.kernel = kernel
    return kernel, journal


# -- path gadget ------------------------------------------------------------

@dataclass(frozen=True)
class PathGadget:
    """Costs of a long induced path and the weights of its replacement gadget.

    ``k`` is 1-based.  Weights equal to ``math.inf`` mark gadget arcs that
    are left out of the kernel.
    """

    c_r: object
    c_l: object
    c_n: object
    k: int
    a1b1: object
    a2b2: object
    a1b2: object
    a2b1: object

    def arcs(self, v1, vh, a1, a2, b1, b2) -> list:
        """The finite gadget arcs as ``(tail, head, weight)``."""
        arcs = [
            (v1, a1, 0), (a1, v1, 0), (vh, a2, 0), (a2, vh, 0),
            (a1, b1, self.a1b1), (a2, b2, self.a2b2), (b1, a2, 0), (b2, a1, 0),
            (a1, b2, self.a1b2), (a2, b1, self.a2b1),
        ]
        out = [a for a in arcs if a[2] != inf]
        for a in out:
            if a[2] > MAX_WEIGHT:
                raise WeightOverflow(f"gadget weight {a[2]} exceeds 2**63 - 1")
        return out


def gadget_weights(forward, backward) -> PathGadget:
    """Path costs and gadget weights from the weights along a path.

    ``forward[i]`` and ``backward[i]`` are the weights of ``v_{i+1} v_{i+2}``
    and ``v_{i+2} v_{i+1}`` (0-based ``i``), ``math.inf`` for a missing arc.
    """
    forward = list(forward)
    backward = list(backward)
    if len(forward) != len(backward) or not forward:
        raise ValueError("need two aligned, nonempty weight lists")
    c_r = sum(forward)
    c_l = sum(backward)
    pairs = [f + b for f, b in zip(forward, backward)]
    k = max(range(len(pairs)), key=lambda i: (pairs[i], -i))
    c_n = sum(p for i, p in enumerate(pairs) if i != k)
    if c_r <= c_n or c_l <= c_n:
        a1b2, a2b1 = c_r, c_l
    else:
        a1b2, a2b1 = (c_n + 1) // 2, c_n // 2
    return PathGadget(c_r, c_l, c_n, k + 1, c_r, c_l, a1b2, a2b1)


def induced_paths(instance: Instance, min_inner: int = 0) -> list:
    """Maximal induced paths ``(v_0, ..., v_{h+1})`` with ``h >= min_inner``.

    Paths start at a vertex of undirected degree at least 3 (smallest id
    first) and follow neighbours in ascending order.  With ``min_inner=0``
    an edge between two such vertices counts as a path without inner
    vertices.  Vertices of degree other than 2 end a walk.
    """
    nb = instance.neighbors
    deg = [len(x) for x in nb]
    seen = set()
    paths = []
    for x in range(instance.n):
        if deg[x] < 3:
            continue
        for y in nb[x]:
            if deg[y] >= 3:
                if x < y and min_inner == 0:
                    paths.append((x, y))
                continue
            if deg[y] != 2 or y in seen:
                continue
            path = [x, y]
            seen.add(y)
            prev, cur = x, y
            while deg[cur] == 2:
                a, b = nb[cur]
                nxt = b if a == prev else a
                path.append(nxt)
                if deg[nxt] == 2:
                    if nxt in seen:
                        break
                    seen.add(nxt)
                prev, cur = cur, nxt
            if len(path) - 2 >= min_inner:
                paths.append(tuple(path))
    return paths


def _path_weights(instance: Instance, path):
    h = len(path) - 2
    forward, backward = [], []
    for i in range(1, h):
        f = instance.weight(path[i], path[i + 1])
        b = instance.weight(path[i + 1], path[i])
        forward.append(inf if f is None else f)
        backward.append(inf if b is None else b)
    return forward, backward


def rule4_replace_paths(instance: Instance):
    """Replace every maximal induced path with at least 7 inner vertices.

    Returns ``(instance', records)``.  Surviving vertices keep their relative
    order and come first; gadget vertices ``(a1, a2, b1, b2)`` follow path
    by path.
    """
    paths = induced_paths(instance, MIN_PATH_INNER)
    removed = set()
    for p in paths:
        removed.update(p[2:len(p) - 2])
    survivors = [v for v in range(instance.n) if v not in removed]
    index = {v: i for i, v in enumerate(survivors)}
    arcs = [(index[t], index[h], w) for t, h, w in instance.arcs if t in index and h in index]
    records = []
    nxt = len(survivors)
    for p in paths:
        h = len(p) - 2
        forward, backward = _path_weights(instance, p)
        gadget = gadget_weights(forward, backward)
        ids = (nxt, nxt + 1, nxt + 2, nxt + 3)
        nxt += 4
        arcs.extend(gadget.arcs(index[p[1]], index[p[h]], *ids))
        records.append(R4(h, tuple(p), tuple(forward), tuple(backward), gadget.k, ids))
    arcs.sort()
    return Instance(nxt, arcs), records


# -- cycles -----------------------------------------------------------------

def cycle_order(instance: Instance):
    """Vertices around the cycle starting ``0 -> smaller neighbour``, or ``None``."""
    n = instance.n
    nb = instance.neighbors
    if n < 3 or any(len(x) != 2 for x in nb):
        return None
    order = [0]
    prev, cur = 0, nb[0][0]
    while cur != 0:
        order.append(cur)
        a, b = nb[cur]
        prev, cur = cur, (b if a == prev else a)
    return order if len(order) == n else None


def solve_cycle(instance: Instance) -> Solution:
    """Optimal solution when the underlying undirected graph is a cycle.

    Candidates: every arc one way round, every arc the other way round, and
    all arcs except the antiparallel pair with the largest normalized weight
    sum.  The cheapest candidate by exact cost wins; ties go to that order.
    """
    order = cycle_order(instance)
    if order is None:
        raise ValueError("the underlying undirected graph is not a cycle")
    n = len(order)
    mins = instance.min_out_weight.tolist()

    def norm(u, v):
        x = instance.weight(u, v)
        return inf if x is None else x - mins[u]

    steps = [(order[i], order[(i + 1) % n]) for i in range(n)]
    pair = [norm(u, v) + norm(v, u) for u, v in steps]
    k = max(range(n), key=lambda i: (pair[i], -i))
    candidates = [
        steps,
        [(v, u) for u, v in steps],
        [a for i, (u, v) in enumerate(steps) if i != k for a in ((u, v), (v, u))],
    ]
    best = None
    for arcs in candidates:
        if any(not instance.has_arc(u, v) for u, v in arcs):
            continue
        c = cost(None, arcs, instance)
        if best is None or c < best.cost:
            best = Solution(arcs, c)
    if best is None:
        raise Infeasible("cycle instance is not strongly connected")
    return best


# -- full pipeline ----------------------------------------------------------

def kernelize_fes(instance: Instance):
    """Kernel with at most ``20g - 20`` vertices and ``42g - 42`` arcs for ``g >= 2``.

    Returns ``(kernel, journal)`` with ``opt(instance) = opt(kernel) + journal.d``.
    A tree shrinks to one vertex; a cycle is solved on the spot and also
    leaves a single vertex, with the journal in cycle mode.
    """
    core, journal = preprocess_linear(instance)
    if core.n == 1:
        return core, journal
    survivors = np.flatnonzero(~journal.removed_mask(instance.n)).tolist()
    if cycle_order(core) is not None:
        journal.d = check_u64(journal.d + solve_cycle(core).cost, "offset d")
        journal.append(Cycle())
        journal.kernel = Instance(1)
        return journal.kernel, journal
    kernel, records = rule4_replace_paths(core)
    for rec in records:
        path = tuple(survivors[v] for v in rec.path)
        journal.append(rec._replace(path=path))
    journal.kernel = kernel
    return kernel, journal


def _core_before_gadgets(original: Instance, journal: KernelJournal):
    """Instance left after normalization and pendant removal, plus its vertex list."""
    n = original.n
    mask = journal.removed_mask(n)
    for rec in journal.gadget_records():
        mask[list(rec.path[2:rec.h])] = False
    gone = set(np.flatnonzero(mask).tolist())
    survivors = [v for v in range(n) if v not in gone]
    shift = journal.shifts(n)
    arcs = [(t, h, max(0, w - shift[t])) for t, h, w in original.arcs if t not in gone and h not in gone]
    return _relabelled(survivors, arcs), survivors


def replay_fes(original: Instance, journal: KernelJournal) -> Instance:
    """Rebuild the kernel described by ``journal`` from the original instance.

    Raises ``ValueError`` if a record disagrees with the instance.
    """
    core, survivors = _core_before_gadgets(original, journal)
    if journal.cycle_mode:
        return Instance(1)
    index = {v: i for i, v in enumerate(survivors)}
    removed = set()
    gadgets = []
    for rec in journal.gadget_records():
        local = tuple(index[v] for v in rec.path)
        forward, backward = _path_weights(core, local)
        if tuple(forward) != rec.forward or tuple(backward) != rec.backward:
            raise ValueError(f"path record at {rec.path[:2]} does not match the instance weights")
        gadget = gadget_weights(forward, backward)
        if gadget.k != rec.k:
            raise ValueError("recorded argmax index disagrees with the path weights")
        removed.update(local[2:rec.h])
        gadgets.append((local, rec, gadget))
    keep = [v for v in range(core.n) if v not in removed]
    pos = {v: i for i, v in enumerate(keep)}
    arcs = [(pos[t], pos[h], w) for t, h, w in core.arcs if t in pos and h in pos]
    size = len(keep)
    for local, rec, gadget in gadgets:
        if min(rec.gadget) < size:
            raise ValueError("gadget ids overlap surviving vertices")
        size = max(size, max(rec.gadget) + 1)
        arcs.extend(gadget.arcs(pos[local[1]], pos[local[rec.h]], *rec.gadget))
    arcs.sort()
    return Instance(size, arcs)


def lift_solution_fes(journal: KernelJournal, kernel_solution: Solution, original: Instance = None) -> Solution:
    """Turn a kernel solution into a solution of the original instance.

    The result is feasible and costs at most ``kernel_solution.cost + d``,
    with equality for an optimal kernel solution.  ``original`` is required
    when the journal was loaded from a file.
    """
    original = original if original is not None else journal.original
    if original is None:
        raise ValueError("lifting needs the original instance")
    kernel = journal.kernel if journal.kernel is not None else replay_fes(original, journal)
    verdict = verify_solution(kernel, kernel_solution)
    if not verdict.ok:
        raise InvalidKernelSolution("; ".join(verdict.violations))

    n = original.n
    survivors = journal.survivors(n)
    s = len(survivors)

    def label(x):
        return survivors[x] if x < s else n + x - s

    arcs = {(label(t), label(h)) for t, h in kernel_solution.arcs}
    for rec in reversed(journal.records):
        if isinstance(rec, R4):
            a1, a2, b1, b2 = (label(x) for x in rec.gadget)
            gadget = {a1, a2, b1, b2}
            right = (a1, b1) in arcs
            left = (a2, b2) in arcs
            arcs = {a for a in arcs if a[0] not in gadget and a[1] not in gadget}
            p, h = rec.path, rec.h
            for i in range(1, h):
                if not right and not left and i == rec.k:
                    continue
                if right or not left:
                    arcs.add((p[i], p[i + 1]))
                if left or not right:
                    arcs.add((p[i + 1], p[i]))
        elif isinstance(rec, Cycle):
            core, verts = _core_before_gadgets(original, journal)
            arcs.update((verts[t], verts[h]) for t, h in solve_cycle(core).arcs)
        elif isinstance(rec, R3):
            arcs.add((rec.v, rec.u))
            arcs.add((rec.u, rec.v))
    return solution_from_arcs(original, arcs)


__all__ = [
    "MIN_PATH_INNER",
    "PathGadget",
    "cycle_order",
    "gadget_weights",
    "induced_paths",
    "kernelize_fes",
    "lift_solution_fes",
    "preprocess_linear",
    "replay_fes",
    "rule2_normalize",
    "rule3_degree1",
    "rule4_replace_paths",
    "solve_cycle",
]
