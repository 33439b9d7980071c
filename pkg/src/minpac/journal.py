"""Reduction logs that let a kernel solution be lifted back to the input.

A :class:`KernelJournal` holds the offset ``d`` with
``opt(original) = opt(kernel) + d`` and the applied reductions in order.
Vertex ids inside records are ids of the *original* instance, except the
four gadget vertices of an :class:`R4` record, which are kernel ids.

Kernel vertex numbering: surviving original vertices in ascending order,
followed by gadget vertices in record order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


class R2(NamedTuple):
    """Shift every outgoing weight of ``v`` down by ``delta``."""

    v: int
    delta: int


class R3(NamedTuple):
    """Delete the degree-one vertex ``v`` hanging off ``u``.

    ``wvu`` and ``wuv`` are the weights current at deletion time.
    """

    v: int
    u: int
    wvu: int
    wuv: int


class R4(NamedTuple):
    """Replace the inner vertices of a long induced path with a gadget.

    ``path`` is ``(v_0, ..., v_{h+1})``; ``forward[i-1]`` and
    ``backward[i-1]`` are the current weights of ``v_i v_{i+1}`` and
    ``v_{i+1} v_i`` (``math.inf`` when absent).  ``k`` is 1-based and
    ``gadget`` holds the kernel ids of ``(a1, a2, b1, b2)``.
    """

    h: int
    path: tuple
    forward: tuple
    backward: tuple
    k: int
    gadget: tuple


class VC1(NamedTuple):
    """Delete ``u``, a twin of ``twin`` with respect to the vertex cover.

    ``arcs`` lists ``(tail, head, weight)`` of every arc incident to ``u``
    at deletion time.
    """

    u: int
    twin: int
    arcs: tuple


class Cycle(NamedTuple):
    """The remaining instance was a cycle and got solved directly."""


class RecordBlock:
    """Many records of one type stored column-wise as integer arrays."""

    def __init__(self, kind, *columns):
        self.kind = kind
        self.columns = tuple(np.asarray(c, dtype=np.int64) for c in columns)

    def __len__(self):
        return int(self.columns[0].size) if self.columns else 0

    def __iter__(self):
        make = self.kind._make
        return map(make, zip(*(c.tolist() for c in self.columns)))


@dataclass
class KernelJournal:
    """Offset ``d`` and reduction records of one kernelization run.

    ``original`` and ``kernel`` are kept when the journal was produced in
    this process; journals read from a file carry neither.  Bulk records
    may be held as :class:`RecordBlock` entries; :attr:`records` always
    presents the flat list.
    """

    kind: str
    d: int = 0
    entries: list = field(default_factory=list)
    original: object = None
    kernel: object = None

    @property
    def records(self) -> list:
        out = []
        for e in self.entries:
            if isinstance(e, RecordBlock):
                out.extend(e)
            else:
                out.append(e)
        return out

    def append(self, record) -> None:
        self.entries.append(record)

    def extend(self, records) -> None:
        self.entries.extend(records)

    def add_block(self, kind, *columns) -> None:
        block = RecordBlock(kind, *columns)
        if len(block):
            self.entries.append(block)

    def __len__(self):
        return sum(len(e) if isinstance(e, RecordBlock) else 1 for e in self.entries)

    def _single(self, kind):
        return [e for e in self.entries if isinstance(e, kind)]

    def _blocks(self, kind):
        return [e for e in self.entries if isinstance(e, RecordBlock) and e.kind is kind]

    def removed_mask(self, n: int) -> np.ndarray:
        gone = np.zeros(n, dtype=bool)
        for b in self._blocks(R3):
            gone[b.columns[0]] = True
        for rec in self._single(R3):
            gone[rec.v] = True
        for rec in self._single(R4):
            gone[list(rec.path[2:rec.h])] = True
        for rec in self._single(VC1):
            gone[rec.u] = True
        return gone

    def removed_vertices(self) -> set:
        gone = set()
        for rec in self.records:
            if isinstance(rec, R3):
                gone.add(rec.v)
            elif isinstance(rec, R4):
                gone.update(rec.path[2:rec.h])
            elif isinstance(rec, VC1):
                gone.add(rec.u)
        return gone

    @property
    def cycle_mode(self) -> bool:
        return bool(self._single(Cycle))

    def survivors(self, n: int) -> list:
        """Original vertices that appear in the kernel, ascending."""
        left = np.flatnonzero(~self.removed_mask(n)).tolist()
        return left[:1] if self.cycle_mode else left

    def shifts(self, n: int) -> list:
        """Total amount subtracted from each vertex's outgoing weights.

        Every surviving arc ``vu`` ends up with weight
        ``max(0, w(vu) - shifts[v])``.
        """
        shift = [0] * n
        for e in self.entries:
            if isinstance(e, RecordBlock):
                if e.kind is R2:
                    pairs = zip(e.columns[0].tolist(), e.columns[1].tolist())
                elif e.kind is R3:
                    pairs = zip(e.columns[1].tolist(), e.columns[3].tolist())
                else:
                    continue
                for v, x in pairs:
                    shift[v] += x
            elif isinstance(e, R2):
                shift[e.v] += e.delta
            elif isinstance(e, R3):
                shift[e.u] += e.wuv
        return shift

    def gadget_records(self) -> list:
        return self._single(R4)


__all__ = ["Cycle", "KernelJournal", "R2", "R3", "R4", "RecordBlock", "VC1"]
