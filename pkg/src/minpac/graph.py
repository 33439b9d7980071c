"""Arc-weighted digraphs, strong connectivity and solution checking.

Vertices are dense integers ``0..n-1``.  Arcs are stored column-wise in
read-only ``int64`` arrays so that large instances (millions of arcs) can be
handled with vectorised numpy code; small algorithms use the cached Python
list views instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import (
    InvalidArc,
    InvalidInstance,
    MissingOutArc,
    WeightOverflow,
)

MAX_WEIGHT = 2**63 - 1
U64_MAX = 2**64 - 1


def check_u64(value, what="value"):
    """Raise :class:`WeightOverflow` unless ``0 <= value <= 2**64 - 1``."""
    if value < 0 or value > U64_MAX:
        raise WeightOverflow(f"{what} {value} outside unsigned 64-bit range")
    return value


class Instance:
    """A MinPAC instance: ``n`` vertices and weighted arcs ``(tail, head, weight)``.

    Arcs keep their input order, which every tie-breaking rule in the package
    refers to.  Self-loops and repeated ordered pairs are rejected.
    """

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        arcs = list(arcs)
        if arcs:
            try:
                data = np.array([(int(a[0]), int(a[1]), int(a[2])) for a in arcs], dtype=np.int64)
            except OverflowError as exc:
                raise WeightOverflow("arc weight exceeds 2**63 - 1") from exc
            except (IndexError, TypeError, ValueError) as exc:
                raise InvalidInstance("arcs must be (tail, head, weight) triples") from exc
            tails, heads, weights = data[:, 0], data[:, 1], data[:, 2]
        else:
            tails = heads = weights = np.zeros(0, dtype=np.int64)
        self._init(n, tails, heads, weights)

    @classmethod
    def from_arrays(cls, n, tails, heads, weights) -> "Instance":
        """Build an instance from three equally long integer arrays."""
        obj = cls.__new__(cls)
        try:
            arrays = [np.asarray(a, dtype=np.int64) for a in (tails, heads, weights)]
        except OverflowError as exc:
            raise WeightOverflow("arc weight exceeds 2**63 - 1") from exc
        obj._init(n, *arrays)
        return obj

    def _init(self, n, tails, heads, weights):
        n = int(n)
        if n < 1:
            raise InvalidInstance("an instance needs at least one vertex")
        if not (tails.shape == heads.shape == weights.shape) or tails.ndim != 1:
            raise InvalidInstance("tail, head and weight arrays must be 1-d and aligned")
        if tails.size:
            if tails.min() < 0 or heads.min() < 0 or tails.max() >= n or heads.max() >= n:
                raise InvalidInstance(f"arc endpoint outside 0..{n - 1}")
            if np.any(tails == heads):
                v = int(tails[tails == heads][0])
                raise InvalidInstance(f"self-loop at vertex {v}")
            if weights.min() < 0:
                raise InvalidInstance("arc weights must be nonnegative")
        self._n = n
        self._tails = np.ascontiguousarray(tails)
        self._heads = np.ascontiguousarray(heads)
        self._weights = np.ascontiguousarray(weights)
        for a in (self._tails, self._heads, self._weights):
            a.setflags(write=False)
        keys = self._keys
        if keys.size and np.unique(keys).size != keys.size:
            order = np.argsort(keys, kind="stable")
            dup = np.flatnonzero(np.diff(keys[order]) == 0)[0]
            i = int(order[dup + 1])
            raise InvalidInstance(
                f"duplicate arc {int(self._tails[i])}->{int(self._heads[i])}"
            )

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return int(self._tails.size)

    @property
    def tails(self) -> np.ndarray:
        return self._tails

    @property
    def heads(self) -> np.ndarray:
        return self._heads

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @cached_property
    def arcs(self) -> tuple:
        """Arcs as a tuple of ``(tail, head, weight)`` Python ints."""
        return tuple(zip(self._tails.tolist(), self._heads.tolist(), self._weights.tolist()))

    @cached_property
    def _keys(self) -> np.ndarray:
        return self._tails * np.int64(self._n) + self._heads

    @cached_property
    def _sorted_keys(self):
        order = np.argsort(self._keys, kind="stable")
        return self._keys[order], order

    @cached_property
    def _index(self) -> dict:
        return {(t, h): i for i, (t, h, _) in enumerate(self.arcs)}

    def arc_id(self, u: int, v: int) -> int | None:
        """Position of arc ``u->v`` in the arc list, or ``None``."""
        return self._index.get((u, v))

    def weight(self, u: int, v: int) -> int | None:
        """Weight of ``u->v``; ``None`` stands for a missing (infinite) arc."""
        i = self._index.get((u, v))
        return None if i is None else self.arcs[i][2]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def find_arcs(self, tails, heads) -> np.ndarray:
        """Vectorised lookup: arc ids for the given endpoint arrays, ``-1`` if absent."""
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        if tails.size == 0:
            return np.zeros(0, dtype=np.int64)
        sk, order = self._sorted_keys
        inside = (tails >= 0) & (tails < self._n) & (heads >= 0) & (heads < self._n)
        keys = np.where(inside, tails * np.int64(self._n) + heads, -1)
        pos = np.searchsorted(sk, keys)
        pos = np.minimum(pos, max(sk.size - 1, 0))
        found = inside & (sk.size > 0) & (sk[pos] == keys) if sk.size else np.zeros(keys.shape, bool)
        out = np.full(keys.shape, -1, dtype=np.int64)
        out[found] = order[pos[found]]
        return out

    @cached_property
    def out_arc_ids(self) -> list:
        """``out_arc_ids[v]``: ids of arcs leaving ``v`` in input order."""
        return _group(self._tails, self._n)

    @cached_property
    def in_arc_ids(self) -> list:
        """``in_arc_ids[v]``: ids of arcs entering ``v`` in input order."""
        return _group(self._heads, self._n)

    def out_degree(self, v: int) -> int:
        return len(self.out_arc_ids[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_arc_ids[v])

    @cached_property
    def min_out_weight(self) -> np.ndarray:
        """Minimum outgoing weight per vertex; ``-1`` for vertices without out-arcs."""
        res = np.full(self._n, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(res, self._tails, self._weights)
        res[res == np.iinfo(np.int64).max] = -1
        return res

    @cached_property
    def neighbors(self) -> list:
        """Sorted neighbour lists of the underlying undirected graph."""
        nb = [set() for _ in range(self._n)]
        for t, h in zip(self._tails.tolist(), self._heads.tolist()):
            nb[t].add(h)
            nb[h].add(t)
        return [sorted(s) for s in nb]

    def subgraph(self, arc_ids) -> "Instance":
        """Instance on the same vertices restricted to ``arc_ids`` (order preserved)."""
        ids = np.sort(np.asarray(arc_ids, dtype=np.int64))
        return Instance.from_arrays(self._n, self._tails[ids], self._heads[ids], self._weights[ids])

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._tails, other._tails)
            and np.array_equal(self._heads, other._heads)
            and np.array_equal(self._weights, other._weights)
        )

    def __hash__(self):
        return hash((self._n, self._tails.tobytes(), self._heads.tobytes(), self._weights.tobytes()))

    def __repr__(self):
        return f"Instance(n={self._n}, m={self.m})"


def _group(keys: np.ndarray, n: int) -> list:
    order = np.argsort(keys, kind="stable")
    bounds = np.searchsorted(keys[order], np.arange(n + 1))
    order = order.tolist()
    bounds = bounds.tolist()
    return [order[bounds[v]:bounds[v + 1]] for v in range(n)]


@dataclass(frozen=True)
class Solution:
    """A spanning arc subset (pairs ``(tail, head)``) with its claimed cost."""

    arcs: frozenset
    cost: int

    def __init__(self, arcs: Iterable[Sequence[int]], cost: int):
        object.__setattr__(self, "arcs", frozenset((int(a[0]), int(a[1])) for a in arcs))
        object.__setattr__(self, "cost", int(cost))

    def sorted_arcs(self) -> list:
        return sorted(self.arcs)

    def __len__(self):
        return len(self.arcs)


@dataclass(frozen=True)
class SccIndex:
    """Strongly connected components, numbered by their smallest vertex."""

    component_of: tuple
    components: tuple

    @property
    def count(self) -> int:
        return len(self.components)


@dataclass
class Verdict:
    """Outcome of :func:`verify_solution`; truthy iff there is no violation."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _as_endpoints(instance: Instance, arcs) -> tuple:
    """Normalise an arc subset to (tails, heads) arrays.

    ``None`` means every arc; a 1-d integer numpy array is read as arc ids;
    anything else as an iterable of ``(tail, head[, weight])`` tuples.
    """
    if arcs is None:
        return instance.tails, instance.heads
    if isinstance(arcs, np.ndarray) and arcs.ndim == 1:
        return instance.tails[arcs], instance.heads[arcs]
    pairs = [(a[0], a[1]) for a in arcs]
    if not pairs:
        z = np.zeros(0, dtype=np.int64)
        return z, z
    arr = np.asarray(pairs, dtype=np.int64)
    return arr[:, 0], arr[:, 1]


def _component_labels(n: int, tails, heads, connection: str) -> tuple:
    if n == 1 or len(tails) == 0:
        return n, np.arange(n)
    mat = csr_matrix((np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(n, n))
    return connected_components(mat, directed=True, connection=connection)


def scc_decompose(instance: Instance, arcs=None) -> SccIndex:
    """Strongly connected components of ``(V, arcs)`` in linear time.

    Component ids are assigned in increasing order of each component's
    smallest vertex, and every component lists its vertices ascending.
    """
    tails, heads = _as_endpoints(instance, arcs)
    count, labels = _component_labels(instance.n, tails, heads, "strong")
    labels = np.asarray(labels)
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(count, dtype=np.int64)
    # raw labels ordered by the smallest vertex they contain
    ordered = labels[np.sort(first)]
    rank[ordered] = np.arange(count)
    comp = rank[labels]
    order = np.argsort(comp, kind="stable")
    bounds = np.searchsorted(comp[order], np.arange(count + 1)).tolist()
    order_l = order.tolist()
    components = tuple(tuple(order_l[bounds[i]:bounds[i + 1]]) for i in range(count))
    return SccIndex(tuple(comp.tolist()), components)


def is_strongly_connected(instance: Instance, arcs=None) -> bool:
    """True iff every ordered vertex pair is joined by a directed path in ``arcs``."""
    if instance.n == 1:
        return True
    tails, heads = _as_endpoints(instance, arcs)
    if len(tails) < instance.n:
        return False
    count, _ = _component_labels(instance.n, tails, heads, "strong")
    return count == 1


def undirected_edges(instance: Instance) -> np.ndarray:
    """Edges of the underlying undirected graph as sorted ``(lo, hi)`` rows."""
    lo = np.minimum(instance.tails, instance.heads)
    hi = np.maximum(instance.tails, instance.heads)
    if lo.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    keys = np.unique(lo * np.int64(instance.n) + hi)
    return np.stack([keys // instance.n, keys % instance.n], axis=1)


def feedback_edge_number(instance: Instance) -> int:
    """Edges to delete from the underlying undirected graph to leave a forest.

    Antiparallel arc pairs count as a single undirected edge.
    """
    edges = undirected_edges(instance)
    count, _ = _component_labels(instance.n, edges[:, 0], edges[:, 1], "weak")
    return int(len(edges) - instance.n + count)


def cost(vertices, arcs, instance: Instance) -> int:
    """Sum over ``vertices`` of the heaviest arc each one has in ``arcs``.

    ``vertices=None`` means all vertices.  A vertex without an outgoing arc
    contributes 0 only for the single-vertex instance; otherwise
    :class:`MissingOutArc` is raised.  Unknown arcs raise :class:`InvalidArc`.
    """
    tails, heads = _as_endpoints(instance, arcs)
    ids = instance.find_arcs(tails, heads)
    if np.any(ids < 0):
        j = int(np.flatnonzero(ids < 0)[0])
        raise InvalidArc(f"arc {int(tails[j])}->{int(heads[j])} not in instance")
    best = np.full(instance.n, -1, dtype=np.int64)
    np.maximum.at(best, tails, instance.weights[ids])
    if vertices is None:
        chosen = best
    else:
        vs = np.fromiter((int(v) for v in vertices), dtype=np.int64)
        chosen = best[vs] if vs.size else best[:0]
    if np.any(chosen < 0):
        if instance.n == 1:
            chosen = np.maximum(chosen, 0)
        else:
            if vertices is None:
                v = int(np.flatnonzero(chosen < 0)[0])
            else:
                v = int(vs[np.flatnonzero(chosen < 0)[0]])
            raise MissingOutArc(f"vertex {v} has no outgoing arc")
    return check_u64(sum(chosen.tolist()), "cost")


def solution_from_arcs(instance: Instance, arcs) -> Solution:
    """Wrap an arc set as a :class:`Solution`, computing its exact cost."""
    arcs = [(a[0], a[1]) for a in arcs]
    return Solution(arcs, cost(None, arcs, instance))


def verify_solution(instance: Instance, solution: Solution) -> Verdict:
    """Check membership, spanning strong connectivity and the exact cost.

    Every violated invariant is reported; the function never raises on a bad
    solution.
    """
    verdict = Verdict()
    pairs = sorted(solution.arcs)
    if pairs:
        arr = np.asarray(pairs, dtype=np.int64)
        ids = instance.find_arcs(arr[:, 0], arr[:, 1])
        for j in np.flatnonzero(ids < 0).tolist():
            verdict.violations.append(f"arc {pairs[j][0]}->{pairs[j][1]} is not in the instance")
        pairs = [p for p, i in zip(pairs, ids.tolist()) if i >= 0]
    if not isinstance(solution.cost, int) or not 0 <= solution.cost <= U64_MAX:
        verdict.violations.append(f"cost {solution.cost!r} is not an unsigned 64-bit integer")
    spanning = True
    if instance.n >= 2:
        tails = {p[0] for p in pairs}
        heads = {p[1] for p in pairs}
        lonely = [v for v in range(instance.n) if v not in tails or v not in heads]
        if lonely:
            spanning = False
            verdict.violations.append(
                f"not spanning: {len(lonely)} vertices lack an incoming or outgoing arc (first {lonely[0]})"
            )
    if not is_strongly_connected(instance, pairs):
        verdict.violations.append("arc set is not strongly connected")
    if spanning and len(pairs) == len(solution.arcs):
        actual = cost(None, pairs, instance)
        if actual != solution.cost:
            verdict.violations.append(f"cost mismatch: claimed {solution.cost}, actual {actual}")
    return verdict
