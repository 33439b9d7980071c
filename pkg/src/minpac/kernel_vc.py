"""Kernelization by vertex cover size ``x`` plus number of distinct weights ``q``.

Vertices outside a vertex cover ``X`` only touch ``X``.  Two such vertices
with the same weight to and from every cover vertex are interchangeable:
one of them can be deleted as long as ``d`` pays its cheapest outgoing
weight.  After deleting all but one vertex per signature at most
``(q + 1)^(2x) + x`` vertices remain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import InvalidCover, InvalidKernelSolution, NotStronglyConnected
from .graph import Instance, Solution, check_u64, is_strongly_connected, solution_from_arcs, verify_solution
from .journal import VC1, KernelJournal


def vertex_cover_2approx(instance: Instance) -> list:
    """Endpoints of a greedy maximal matching, taken over arcs in input order."""
    matched = set()
    for t, h, _ in instance.arcs:
        if t not in matched and h not in matched:
            matched.update((t, h))
    return sorted(matched)


@dataclass(frozen=True)
class CoverPartition:
    """Non-cover vertices grouped by their weight signature toward the cover.

    A signature lists, for each cover vertex in ``cover`` order, the 1-based
    index in ``levels`` of ``w(u -> v_i)``, followed by the same for
    ``w(v_i -> u)``; index ``q + 1`` means the arc is absent.
    """

    cover: tuple
    levels: tuple
    signatures: dict
    classes: dict

    @property
    def x(self) -> int:
        return len(self.cover)

    @property
    def q(self) -> int:
        return len(self.levels)

    def representatives(self) -> dict:
        return {sig: members[0] for sig, members in self.classes.items()}

    def size_bound(self, cap=None) -> int:
        """``(q + 1)^(2x) + x``; with ``cap`` given, stop early once it is exceeded."""
        base, exp = self.q + 1, 2 * self.x
        if cap is None:
            return base**exp + self.x
        value = 1
        for _ in range(exp):
            value *= base
            if value > cap:
                return cap + 1
        return value + self.x


def _check_cover(instance: Instance, cover) -> tuple:
    cover = tuple(dict.fromkeys(int(v) for v in cover))
    for v in cover:
        if not 0 <= v < instance.n:
            raise InvalidCover(f"cover vertex {v} is outside 0..{instance.n - 1}")
    inside = set(cover)
    for t, h, _ in instance.arcs:
        if t not in inside and h not in inside:
            raise InvalidCover(f"arc {t}->{h} has no endpoint in the cover")
    return cover


def build_partition(instance: Instance, cover) -> CoverPartition:
    """Signatures of all non-cover vertices, classes listed with ascending members."""
    cover = _check_cover(instance, cover)
    levels = tuple(sorted(set(instance.weights.tolist())))
    rank = {p: i + 1 for i, p in enumerate(levels)}
    missing = len(levels) + 1
    pos = {v: i for i, v in enumerate(cover)}
    x = len(cover)
    rows = {}
    for t, h, w in instance.arcs:
        if h in pos and t not in pos:
            rows.setdefault(t, [missing] * (2 * x))[pos[h]] = rank[w]
        elif t in pos and h not in pos:
            rows.setdefault(h, [missing] * (2 * x))[x + pos[t]] = rank[w]
    signatures = {}
    classes = {}
    for u in range(instance.n):
        if u in pos:
            continue
        sig = tuple(rows.get(u, [missing] * (2 * x)))
        signatures[u] = sig
        classes.setdefault(sig, []).append(u)
    return CoverPartition(cover, levels, signatures, {s: tuple(m) for s, m in classes.items()})


def kernelize_vc(instance: Instance, cover=None, *, size_guard: bool = False):
    """Delete all but the smallest-id vertex of every signature class.

    Returns ``(kernel, journal)`` with ``opt(instance) = opt(kernel) + d``.
    ``cover`` defaults to :func:`vertex_cover_2approx`.  With
    ``size_guard=True`` an instance that already has at most
    ``(q + 1)^(2x) + x`` vertices is returned untouched.
    """
    if not is_strongly_connected(instance):
        raise NotStronglyConnected("kernelization needs a strongly connected instance")
    if cover is None:
        cover = vertex_cover_2approx(instance)
    part = build_partition(instance, cover)
    journal = KernelJournal("vc", original=instance)
    if size_guard and instance.n <= part.size_bound(cap=instance.n):
        journal.kernel = instance
        return instance, journal

    incident = [[] for _ in range(instance.n)]
    for arc in instance.arcs:
        incident[arc[0]].append(arc)
        incident[arc[1]].append(arc)
    mins = instance.min_out_weight.tolist()
    gone = set()
    d = 0
    for members in part.classes.values():
        keep = members[0]
        for u in members[1:]:
            journal.append(VC1(u, keep, tuple(incident[u])))
            gone.add(u)
            d += mins[u]
    journal.d = check_u64(d, "offset d")
    journal.kernel = _induced(instance, gone)
    return journal.kernel, journal


def _induced(instance: Instance, gone) -> Instance:
    survivors = [v for v in range(instance.n) if v not in gone]
    index = {v: i for i, v in enumerate(survivors)}
    arcs = sorted((index[t], index[h], w) for t, h, w in instance.arcs if t in index and h in index)
    return Instance(len(survivors), arcs)


def replay_vc(original: Instance, journal: KernelJournal) -> Instance:
    """Rebuild the kernel of a vertex-cover journal from the original instance."""
    return _induced(original, journal.removed_vertices())


def lift_solution_vc(journal: KernelJournal, kernel_solution: Solution, original: Instance = None) -> Solution:
    """Re-insert deleted twins, newest first.

    Each deleted ``u`` gets its cheapest outgoing arc ``u -> v`` (smallest
    head on ties) and the arc ``v' -> u`` for the smallest ``v'`` that
    currently has an arc into ``u``'s twin.
    """
    original = original if original is not None else journal.original
    if original is None:
        raise ValueError("lifting needs the original instance")
    kernel = journal.kernel if journal.kernel is not None else replay_vc(original, journal)
    verdict = verify_solution(kernel, kernel_solution)
    if not verdict.ok:
        raise InvalidKernelSolution("; ".join(verdict.violations))
    survivors = journal.survivors(original.n)
    arcs = {(survivors[t], survivors[h]) for t, h in kernel_solution.arcs}
    into = {}
    for t, h in arcs:
        into.setdefault(h, set()).add(t)
    for rec in reversed(journal.records):
        if not isinstance(rec, VC1):
            continue
        out = [(w, h) for t, h, w in rec.arcs if t == rec.u]
        _, v = min(out)
        sources = into.get(rec.twin)
        if not sources:
            raise InvalidKernelSolution(f"twin {rec.twin} has no incoming arc in the solution")
        src = min(sources)
        for t, h in ((rec.u, v), (src, rec.u)):
            arcs.add((t, h))
            into.setdefault(h, set()).add(t)
    return solution_from_arcs(original, arcs)


__all__ = [
    "CoverPartition",
    "build_partition",
    "kernelize_vc",
    "lift_solution_vc",
    "replay_vc",
    "vertex_cover_2approx",
]
