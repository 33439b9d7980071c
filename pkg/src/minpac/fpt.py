"""Exact MinPAC solver parameterized by the SCC count of the obligatory subgraph.

Three phases:

1. :func:`reduce_relevant` keeps one cheapest arc per (vertex, foreign SCC).
2. :func:`connector_dp` computes, for every SCC ``S`` and every subset ``T``
   of the SCCs reachable from ``S`` by one arc, a cheapest arc set leaving
   ``S`` that hits every member of ``T``.
3. :func:`search_optimal` enumerates how the SCCs are wired together.

Phases 2 and 3 price arcs by their *residual* weight
``max(0, w(vu) - obl_max(v))``: what ``v`` pays on top of its obligatory
arcs.  The solution cost is then ``sum(obl_max) + sum(connector costs)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import inf

from .bounds import ObligatorySubgraph, lower_bound, obligatory_subgraph
from .exceptions import CapExceeded, Infeasible, NotStronglyConnected
from .graph import Instance, Solution, cost, is_strongly_connected

DEFAULT_CAP_C = 20


@dataclass(frozen=True)
class RelevantSubgraph:
    """Arc-reduced instance plus the data phases 2 and 3 need."""

    original: Instance
    instance: Instance
    obligatory: ObligatorySubgraph
    residual: tuple

    @property
    def c(self) -> int:
        return self.obligatory.c


def reduce_relevant(instance: Instance, obligatory: ObligatorySubgraph) -> RelevantSubgraph:
    """Drop every inter-SCC arc that is not the first cheapest from its tail into its head's SCC."""
    comp = obligatory.scc.component_of
    arcs = instance.arcs
    best = {}
    for a, (v, u, w) in enumerate(arcs):
        key = (v, comp[u])
        b = best.get(key)
        if b is None or w < arcs[b][2]:
            best[key] = a
    keep = [a for a, (v, u, _) in enumerate(arcs) if comp[v] == comp[u] or best[(v, comp[u])] == a]
    reduced = instance if len(keep) == instance.m else instance.subgraph(keep)
    obl = obligatory.obl_max
    residual = tuple(max(0, w - obl[v]) for v, _, w in reduced.arcs)
    return RelevantSubgraph(instance, reduced, obligatory, residual)


@dataclass
class ConnectorEntry:
    """Minimum-cost connectors of one SCC.

    ``sdom`` lists the reachable foreign SCC ids ascending; bit ``j`` of a
    local mask stands for ``sdom[j]``.  ``cost[mask]`` and ``arcs[mask]``
    describe ``mcc(S, T)``.
    """

    scc: int
    sdom: tuple
    cost: list
    arcs: list

    def local_mask(self, targets) -> int:
        pos = {s: j for j, s in enumerate(self.sdom)}
        mask = 0
        for t in targets:
            if t not in pos:
                raise KeyError(f"SCC {t} is not reachable from SCC {self.scc} by one arc")
            mask |= 1 << pos[t]
        return mask

    def lookup(self, targets) -> tuple:
        """``(residual cost, arcs)`` of the connector hitting ``targets``."""
        mask = self.local_mask(targets)
        return self.cost[mask], self.arcs[mask]


@dataclass
class ConnectorTable:
    entries: list = field(default_factory=list)

    def sdom(self, s: int) -> tuple:
        return self.entries[s].sdom

    def mcc(self, s: int, targets) -> tuple:
        return self.entries[s].lookup(targets)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _connectors_of(s: int, vertices, rel: RelevantSubgraph) -> ConnectorEntry:
    comp = rel.obligatory.scc.component_of
    inst = rel.instance
    arcs = inst.arcs
    rw = rel.residual

    foreign = []
    reachable = set()
    for v in vertices:
        out = []
        for a in inst.out_arc_ids[v]:
            u = arcs[a][1]
            if comp[u] != s:
                out.append((comp[u], rw[a], (v, u)))
                reachable.add(comp[u])
        foreign.append(out)
    sdom = tuple(sorted(reachable))
    bit = {t: 1 << j for j, t in enumerate(sdom)}
    size = 1 << len(sdom)

    # Initialization sweep: T_{B_i} as masks, and for every foreign SCC the
    # arc B_i contributes to it (from the first vertex reaching it).
    tb = [0] * (len(foreign) + 1)
    first = {}
    for i, out in enumerate(foreign, 1):
        mask = tb[i - 1]
        for t, r, arc in out:
            b = bit[t]
            if not tb[i - 1] & b:
                first[b] = (i, r, arc)
            mask |= b
        tb[i] = mask

    def init_entry(T):
        pay = {}
        chosen = []
        for b in _bits(T):
            i, r, arc = first[b]
            pay[i] = max(pay.get(i, 0), r)
            chosen.append(arc)
        return sum(pay.values()), tuple(chosen)

    # Update sweep with two rolling tables (prev = D_{i-1}, cur = D_i).
    prev_cost = [inf] * size
    prev_arcs = [None] * size
    prev_cost[0], prev_arcs[0] = 0, ()
    for i, out in enumerate(foreign, 1):
        if not out:
            continue
        cur_cost = prev_cost[:]
        cur_arcs = prev_arcs[:]
        fresh = tb[i] & ~tb[i - 1]
        if fresh:
            for T in _submasks(tb[i]):
                if T & fresh:
                    cur_cost[T], cur_arcs[T] = init_entry(T)
        for _, r_u, _ in out:
            b_mask = 0
            b_arcs = {}
            for t, r, arc in out:
                if r <= r_u:
                    b_mask |= bit[t]
                    b_arcs[bit[t]] = (r, arc)
            for T in _submasks(tb[i - 1] | b_mask):
                rest = T & ~b_mask
                base = prev_cost[rest]
                if base + r_u < cur_cost[T]:
                    added = [b_arcs[b] for b in _bits(T & b_mask)]
                    cur_cost[T] = base + max((r for r, _ in added), default=0)
                    cur_arcs[T] = prev_arcs[rest] + tuple(arc for _, arc in added)
        prev_cost, prev_arcs = cur_cost, cur_arcs
    return ConnectorEntry(s, sdom, prev_cost, prev_arcs)


def connector_dp(rel: RelevantSubgraph, cap_c: int = DEFAULT_CAP_C) -> ConnectorTable:
    """Minimum-cost connectors for every SCC and every subset of its one-arc reach.

    Runs in ``O(2^c * c^2 * n)``.  Raises :class:`CapExceeded` when ``c``
    exceeds ``cap_c`` (the tables hold ``2^(c-1)`` entries per SCC).
    """
    c = rel.c
    if c > cap_c:
        raise CapExceeded(f"obligatory subgraph has c={c} SCCs, cap is {cap_c}", c, cap_c)
    table = ConnectorTable()
    for s, verts in enumerate(rel.obligatory.scc.components):
        table.entries.append(_connectors_of(s, verts, rel))
    return table


def compositions(k: int, parts: int, upper=None):
    """All ``(k_1, ..., k_parts)`` with ``k_i >= 1`` summing to ``k``, lexicographically.

    ``upper[i]``, when given, caps ``k_i``.
    """
    if parts == 0:
        if k == 0:
            yield ()
        return
    hi = k - (parts - 1)
    if upper is not None:
        hi = min(hi, upper[0])
    for first in range(1, hi + 1):
        for rest in compositions(k - first, parts - 1, None if upper is None else upper[1:]):
            yield (first,) + rest


def _strongly_connected_masks(out: list, c: int) -> bool:
    full = (1 << c) - 1

    def reach(adj):
        seen = frontier = 1
        while frontier:
            nxt = 0
            for b in _bits(frontier):
                nxt |= adj[b.bit_length() - 1]
            frontier = nxt & ~seen
            seen |= nxt
        return seen

    if reach(out) != full:
        return False
    inn = [0] * c
    for i, mask in enumerate(out):
        for b in _bits(mask):
            inn[b.bit_length() - 1] |= 1 << i
    return reach(inn) == full


def _search(rel: RelevantSubgraph, table: ConnectorTable):
    c = rel.c
    options = []
    for entry in table.entries:
        by_size = [[] for _ in range(len(entry.sdom) + 1)]
        for k in range(1, len(entry.sdom) + 1):
            for combo in combinations(range(len(entry.sdom)), k):
                local = 0
                glob = 0
                for j in combo:
                    local |= 1 << j
                    glob |= 1 << entry.sdom[j]
                by_size[k].append((entry.cost[local], glob, local))
        options.append(by_size)
    sizes = [len(e.sdom) for e in table.entries]

    best = inf
    best_pick = None
    pick = [0] * c
    out = [0] * c

    for k in range(c, 2 * c - 1):
        for ks in compositions(k, c, sizes):
            lists = [options[i][ks[i]] for i in range(c)]
            floor = [0] * (c + 1)
            for i in range(c - 1, -1, -1):
                floor[i] = floor[i + 1] + min(o[0] for o in lists[i])

            def dfs(i, partial):
                nonlocal best, best_pick
                if i == c:
                    if _strongly_connected_masks(out, c):
                        best = partial
                        best_pick = list(pick)
                    return
                for cst, glob, local in lists[i]:
                    if partial + cst + floor[i + 1] >= best:
                        continue
                    out[i] = glob
                    pick[i] = local
                    dfs(i + 1, partial + cst)

            if floor[0] < best:
                dfs(0, 0)
    return best, best_pick


def search_optimal(rel: RelevantSubgraph, table: ConnectorTable) -> Solution:
    """Cheapest strongly connected wiring of the SCCs, lifted to a full solution.

    Tries every number ``k`` of inter-SCC connections in ``[c, 2c-2]``, every
    split of ``k`` over the SCCs and every choice of target sets.  Candidates
    whose partial cost cannot beat the incumbent are skipped, which leaves the
    first-found optimum unchanged.
    """
    c = rel.c
    if c < 2:
        raise ValueError("search_optimal needs at least two SCCs")
    best, pick = _search(rel, table)
    if pick is None:
        raise Infeasible("no strongly connected wiring of the SCCs exists")
    arcs = set(rel.obligatory.arc_pairs(rel.original))
    for entry, local in zip(table.entries, pick):
        arcs.update(entry.arcs[local])
    total = cost(None, arcs, rel.original)
    assert total == rel.obligatory.baseline + best, "residual accounting out of sync"
    return Solution(arcs, total)


def solve_minpac(instance: Instance, ell=None, *, cap_c: int = DEFAULT_CAP_C) -> Solution:
    """Optimal MinPAC solution of a strongly connected instance.

    ``ell`` defaults to the pointwise maximum of both lower bounds.
    """
    return solve_minpac_report(instance, ell, cap_c=cap_c)[0]


def solve_minpac_report(instance: Instance, ell=None, *, cap_c: int = DEFAULT_CAP_C):
    """Like :func:`solve_minpac` but also returns ``{'c': ..., 'phase_times': ...}``."""
    if not is_strongly_connected(instance):
        raise NotStronglyConnected("MinPAC input must be strongly connected")
    info = {"c": 1, "phase_times": {}}
    if instance.n == 1:
        return Solution((), 0), info
    if ell is None:
        ell = lower_bound(instance, "both")
    clock = time.perf_counter()
    obligatory = obligatory_subgraph(instance, ell)
    info["c"] = obligatory.c
    if obligatory.c == 1:
        arcs = obligatory.arc_pairs(instance)
        info["phase_times"]["obligatory"] = time.perf_counter() - clock
        return Solution(arcs, cost(None, arcs, instance)), info
    if obligatory.c > cap_c:
        raise CapExceeded(f"obligatory subgraph has c={obligatory.c} SCCs, cap is {cap_c}", obligatory.c, cap_c)
    times = info["phase_times"]
    rel = reduce_relevant(instance, obligatory)
    times["relevant"] = time.perf_counter() - clock
    clock = time.perf_counter()
    table = connector_dp(rel, cap_c)
    times["connectors"] = time.perf_counter() - clock
    clock = time.perf_counter()
    solution = search_optimal(rel, table)
    times["search"] = time.perf_counter() - clock
    return solution, info

