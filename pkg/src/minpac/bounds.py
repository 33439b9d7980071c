"""Per-vertex lower bounds on optimal payments and the obligatory subgraph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Instance, SccIndex, scc_decompose

LOWER_BOUNDS = ("trivial", "unique-in", "both")


def lb_trivial(instance: Instance) -> tuple:
    """Every vertex pays at least its cheapest outgoing arc."""
    mins = instance.min_out_weight
    return tuple(max(0, w) for w in mins.tolist())


def lb_unique_in_arc(instance: Instance) -> tuple:
    """Strengthen :func:`lb_trivial` with arcs that every solution must contain.

    If ``v`` has the single incoming arc ``u->v``, any solution uses it and so
    ``u`` pays at least ``w(u->v)``.  One pass, no fixed-point iteration.
    """
    ell = list(lb_trivial(instance))
    arcs = instance.arcs
    for ids in instance.in_arc_ids:
        if len(ids) == 1:
            u, _, w = arcs[ids[0]]
            if w > ell[u]:
                ell[u] = w
    return tuple(ell)


def lower_bound(instance: Instance, kind: str = "both") -> tuple:
    """Dispatch on ``kind`` in ``{'trivial', 'unique-in', 'both'}``.

    ``'both'`` is the pointwise maximum of the two bounds.
    """
    if kind == "trivial":
        return lb_trivial(instance)
    if kind == "unique-in":
        return lb_unique_in_arc(instance)
    if kind == "both":
        return tuple(map(max, lb_trivial(instance), lb_unique_in_arc(instance)))
    raise ValueError(f"unknown lower bound {kind!r}; expected one of {LOWER_BOUNDS}")


@dataclass(frozen=True)
class ObligatorySubgraph:
    """Arcs no heavier than their tail's lower bound, with their SCCs.

    ``arc_ids`` index into the instance arc list; ``obl_max[v]`` is the
    heaviest obligatory arc leaving ``v`` (0 if none).
    """

    ell: tuple
    arc_ids: np.ndarray
    scc: SccIndex
    obl_max: tuple

    @property
    def c(self) -> int:
        return self.scc.count

    @property
    def baseline(self) -> int:
        return sum(self.obl_max)

    def arc_pairs(self, instance: Instance) -> list:
        return list(zip(instance.tails[self.arc_ids].tolist(), instance.heads[self.arc_ids].tolist()))


def obligatory_subgraph(instance: Instance, ell) -> ObligatorySubgraph:
    """Build ``A_ell = {vu : w(vu) <= ell(v)}`` together with its SCC index."""
    ell = tuple(int(x) for x in ell)
    if len(ell) != instance.n:
        raise ValueError("lower bound length differs from the vertex count")
    ell_arr = np.asarray(ell, dtype=np.int64)
    mask = instance.weights <= ell_arr[instance.tails]
    ids = np.flatnonzero(mask)
    ids.setflags(write=False)
    obl = np.zeros(instance.n, dtype=np.int64)
    np.maximum.at(obl, instance.tails[ids], instance.weights[ids])
    return ObligatorySubgraph(ell, ids, scc_decompose(instance, ids), tuple(obl.tolist()))
