"""Line-oriented text formats.

All files are 7-bit ASCII with LF line endings.  Vertex ids are 1-based on
disk and 0-based in memory.  Blank lines and ``c ...`` comment lines are
ignored everywhere.

* instance: ``p pac <n> <m>`` then ``m`` lines ``a <u> <v> <w>``
* solution: ``s pac <cost>`` then lines ``a <u> <v>``
* journal: ``j pac <d>`` then one record per line::

      R2 <v> <delta>
      R3 <v> <u> <w(vu)> <w(uv)>
      R4 <h> <v_0> ... <v_{h+1}> <h-1 forward weights> <h-1 backward weights> <k> <a1> <a2> <b1> <b2>
      VC1 <u> <twin> <t> <h> <w> [<t> <h> <w> ...]
      CYCLE

  R4 weights may be ``inf``; gadget ids are kernel vertex ids.
* set cover: ``p sc <nU> <nF> <ell>`` then ``nF`` lines ``s <e> ...``
* cover: one vertex id per line
"""

from __future__ import annotations

import os
from math import inf

from .exceptions import FormatError
from .graph import MAX_WEIGHT, U64_MAX, Instance, Solution
from .journal import R2, R3, R4, VC1, Cycle, KernelJournal

__all__ = [
    "parse_cover",
    "parse_instance",
    "parse_journal",
    "parse_setcover",
    "parse_solution",
    "read_cover",
    "read_instance",
    "read_journal",
    "read_setcover",
    "read_solution",
    "write_cover",
    "write_instance",
    "write_journal",
    "write_setcover",
    "write_solution",
]


# -- low level --------------------------------------------------------------

def _text(data) -> str:
    if isinstance(data, str):
        raw = data.encode("utf-8")
    else:
        raw = bytes(data)
    if not raw.isascii():
        i = next(i for i, byte in enumerate(raw) if byte > 127)
        raise FormatError(raw.count(b"\n", 0, i) + 1, "non-ASCII byte")
    if b"\r" in raw:
        raise FormatError(raw.count(b"\n", 0, raw.index(b"\r")) + 1, "CR character; use LF line endings")
    return raw.decode("ascii")


def _lines(data):
    """``(line number, tokens)`` for every non-blank, non-comment line."""
    for no, line in enumerate(_text(data).split("\n"), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        yield no, tokens


def _int(token: str, no: int, what: str, low: int = 0, high: int = U64_MAX) -> int:
    if not token.isdigit() or not token.isascii():
        raise FormatError(no, f"{what} {token!r} is not a nonnegative integer")
    value = int(token)
    if not low <= value <= high:
        raise FormatError(no, f"{what} {value} outside [{low}, {high}]")
    return value


def _vertex(token: str, no: int, n=None) -> int:
    high = U64_MAX if n is None else n
    return _int(token, no, "vertex", 1, high) - 1


def _expect(tokens, count: int, no: int, form: str):
    if len(tokens) != count:
        raise FormatError(no, f"expected '{form}'")


def _read(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _emit(text: str, dest):
    if dest is None:
        return text
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        dest.write(text)
    return text


# -- instances --------------------------------------------------------------

def parse_instance(data) -> Instance:
    """Parse an instance file; errors carry the offending line number."""
    header = None
    arcs = []
    seen = set()
    last = 0
    for no, tok in _lines(data):
        last = no
        if tok[0] == "p":
            if header is not None:
                raise FormatError(no, "second 'p' header")
            _expect(tok, 4, no, "p pac <n> <m>")
            if tok[1] != "pac":
                raise FormatError(no, f"unknown problem type {tok[1]!r}")
            n = _int(tok[2], no, "n", 1)
            m = _int(tok[3], no, "m")
            header = (n, m)
        elif tok[0] == "a":
            if header is None:
                raise FormatError(no, "arc line before the 'p' header")
            _expect(tok, 4, no, "a <u> <v> <w>")
            u = _vertex(tok[1], no, header[0])
            v = _vertex(tok[2], no, header[0])
            w = _int(tok[3], no, "weight", 0, MAX_WEIGHT)
            if u == v:
                raise FormatError(no, "self-loop")
            if (u, v) in seen:
                raise FormatError(no, f"duplicate arc {u + 1} {v + 1}")
            seen.add((u, v))
            arcs.append((u, v, w))
        else:
            raise FormatError(no, f"unknown line type {tok[0]!r}")
    if header is None:
        raise FormatError(last + 1, "missing 'p pac <n> <m>' header")
    if len(arcs) != header[1]:
        raise FormatError(last + 1, f"header announces {header[1]} arcs, found {len(arcs)}")
    return Instance(header[0], arcs)


def write_instance(instance: Instance, dest=None) -> str:
    """Serialise in arc order; returns the text and writes it to ``dest`` if given."""
    parts = [f"p pac {instance.n} {instance.m}\n"]
    parts.extend(f"a {t + 1} {h + 1} {w}\n" for t, h, w in instance.arcs)
    return _emit("".join(parts), dest)


def read_instance(path) -> Instance:
    return parse_instance(_read(path))


# -- solutions --------------------------------------------------------------

def parse_solution(data) -> Solution:
    cost = None
    arcs = {}
    last = 0
    for no, tok in _lines(data):
        last = no
        if tok[0] == "s":
            if cost is not None:
                raise FormatError(no, "second 's' header")
            _expect(tok, 3, no, "s pac <cost>")
            if tok[1] != "pac":
                raise FormatError(no, f"unknown problem type {tok[1]!r}")
            cost = _int(tok[2], no, "cost")
        elif tok[0] == "a":
            if cost is None:
                raise FormatError(no, "arc line before the 's' header")
            _expect(tok, 3, no, "a <u> <v>")
            arc = (_vertex(tok[1], no), _vertex(tok[2], no))
            if arc in arcs:
                raise FormatError(no, f"duplicate arc {tok[1]} {tok[2]}")
            arcs[arc] = None
        else:
            raise FormatError(no, f"unknown line type {tok[0]!r}")
    if cost is None:
        raise FormatError(last + 1, "missing 's pac <cost>' header")
    return Solution(arcs, cost)


def write_solution(solution: Solution, dest=None) -> str:
    parts = [f"s pac {solution.cost}\n"]
    parts.extend(f"a {t + 1} {h + 1}\n" for t, h in solution.sorted_arcs())
    return _emit("".join(parts), dest)


def read_solution(path) -> Solution:
    return parse_solution(_read(path))


# -- journals ---------------------------------------------------------------

def _weight_or_inf(token: str, no: int):
    return inf if token == "inf" else _int(token, no, "weight", 0, U64_MAX)


def _record(tok, no):
    kind = tok[0]
    if kind == "R2":
        _expect(tok, 3, no, "R2 <v> <delta>")
        return R2(_vertex(tok[1], no), _int(tok[2], no, "delta", 0, MAX_WEIGHT))
    if kind == "R3":
        _expect(tok, 5, no, "R3 <v> <u> <wvu> <wuv>")
        return R3(_vertex(tok[1], no), _vertex(tok[2], no),
                  _int(tok[3], no, "weight", 0, MAX_WEIGHT), _int(tok[4], no, "weight", 0, MAX_WEIGHT))
    if kind == "R4":
        if len(tok) < 2:
            raise FormatError(no, "R4 record without h")
        h = _int(tok[1], no, "h", 2)
        want = 2 + (h + 2) + 2 * (h - 1) + 1 + 4
        _expect(tok, want, no, f"R4 with h={h} needs {want} fields")
        at = 2
        path = tuple(_vertex(t, no) for t in tok[at:at + h + 2])
        at += h + 2
        forward = tuple(_weight_or_inf(t, no) for t in tok[at:at + h - 1])
        at += h - 1
        backward = tuple(_weight_or_inf(t, no) for t in tok[at:at + h - 1])
        at += h - 1
        k = _int(tok[at], no, "k", 1, h - 1)
        gadget = tuple(_vertex(t, no) for t in tok[at + 1:at + 5])
        return R4(h, path, forward, backward, k, gadget)
    if kind == "VC1":
        if len(tok) < 3 or (len(tok) - 3) % 3:
            raise FormatError(no, "expected 'VC1 <u> <twin>' followed by <t> <h> <w> triples")
        arcs = tuple(
            (_vertex(tok[i], no), _vertex(tok[i + 1], no), _int(tok[i + 2], no, "weight", 0, MAX_WEIGHT))
            for i in range(3, len(tok), 3)
        )
        return VC1(_vertex(tok[1], no), _vertex(tok[2], no), arcs)
    if kind == "CYCLE":
        _expect(tok, 1, no, "CYCLE")
        return Cycle()
    raise FormatError(no, f"unknown record type {kind!r}")


def parse_journal(data) -> KernelJournal:
    d = None
    records = []
    last = 0
    for no, tok in _lines(data):
        last = no
        if tok[0] == "j":
            if d is not None:
                raise FormatError(no, "second 'j' header")
            _expect(tok, 3, no, "j pac <d>")
            if tok[1] != "pac":
                raise FormatError(no, f"unknown problem type {tok[1]!r}")
            d = _int(tok[2], no, "d")
        elif d is None:
            raise FormatError(no, "record before the 'j' header")
        else:
            records.append(_record(tok, no))
    if d is None:
        raise FormatError(last + 1, "missing 'j pac <d>' header")
    kinds = {"vc" if isinstance(r, VC1) else "fes" for r in records}
    if len(kinds) > 1:
        raise FormatError(last, "journal mixes vertex-cover and feedback-edge records")
    return KernelJournal(kinds.pop() if kinds else "fes", d, records)


def _fmt_weight(w) -> str:
    return "inf" if w == inf else str(w)


def _format_record(rec) -> str:
    if isinstance(rec, R2):
        return f"R2 {rec.v + 1} {rec.delta}"
    if isinstance(rec, R3):
        return f"R3 {rec.v + 1} {rec.u + 1} {rec.wvu} {rec.wuv}"
    if isinstance(rec, R4):
        fields = [f"R4 {rec.h}"]
        fields += [str(v + 1) for v in rec.path]
        fields += [_fmt_weight(w) for w in rec.forward]
        fields += [_fmt_weight(w) for w in rec.backward]
        fields.append(str(rec.k))
        fields += [str(v + 1) for v in rec.gadget]
        return " ".join(fields)
    if isinstance(rec, VC1):
        arcs = " ".join(f"{t + 1} {h + 1} {w}" for t, h, w in rec.arcs)
        return f"VC1 {rec.u + 1} {rec.twin + 1} {arcs}".rstrip()
    if isinstance(rec, Cycle):
        return "CYCLE"
    raise TypeError(f"not a journal record: {rec!r}")


def write_journal(journal: KernelJournal, dest=None) -> str:
    lines = [f"j pac {journal.d}"]
    lines.extend(_format_record(rec) for rec in journal.records)
    return _emit("\n".join(lines) + "\n", dest)


def read_journal(path) -> KernelJournal:
    return parse_journal(_read(path))


# -- set cover and vertex cover files ----------------------------------------

def parse_setcover(data):
    """Return ``(universe_size, sets, ell)`` with 1-based elements."""
    header = None
    sets = []
    last = 0
    for no, tok in _lines(data):
        last = no
        if tok[0] == "p":
            if header is not None:
                raise FormatError(no, "second 'p' header")
            _expect(tok, 5, no, "p sc <nU> <nF> <ell>")
            if tok[1] != "sc":
                raise FormatError(no, f"unknown problem type {tok[1]!r}")
            header = (_int(tok[2], no, "nU", 1), _int(tok[3], no, "nF"), _int(tok[4], no, "ell"))
        elif tok[0] == "s":
            if header is None:
                raise FormatError(no, "set line before the 'p' header")
            sets.append([_int(t, no, "element", 1, header[0]) for t in tok[1:]])
        else:
            raise FormatError(no, f"unknown line type {tok[0]!r}")
    if header is None:
        raise FormatError(last + 1, "missing 'p sc <nU> <nF> <ell>' header")
    if len(sets) != header[1]:
        raise FormatError(last + 1, f"header announces {header[1]} sets, found {len(sets)}")
    return header[0], sets, header[2]


def write_setcover(universe_size: int, sets, ell: int, dest=None) -> str:
    lines = [f"p sc {universe_size} {len(sets)} {ell}"]
    lines.extend(" ".join(["s"] + [str(e) for e in s]) for s in sets)
    return _emit("\n".join(lines) + "\n", dest)


def read_setcover(path):
    return parse_setcover(_read(path))


def parse_cover(data) -> list:
    cover = []
    for no, tok in _lines(data):
        _expect(tok, 1, no, "<vertex>")
        cover.append(_vertex(tok[0], no))
    return cover


def write_cover(cover, dest=None) -> str:
    return _emit("".join(f"{v + 1}\n" for v in cover), dest)


def read_cover(path) -> list:
    return parse_cover(_read(path))
