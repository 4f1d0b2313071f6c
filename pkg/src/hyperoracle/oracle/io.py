"""Line-oriented, versioned oracle file format.

::

    #HYPED-ORACLE v1
    meta smax=<int> dmin=<int> seed=<int>
    avgd <size> <value>              one per size in [2, dmin]
    comp <s> <edge-id> <comp-id>     only |e| >= s
    csize <s> <comp-id> <size>
    label <s> <edge-id> <landmark>:<dist> ...
    end

Records appear in that section order, sorted by (s, id) inside a section,
so writing the same oracle twice yields identical bytes.  The trailing
``end`` record makes truncation at a line boundary detectable.
"""

from __future__ import annotations

import io
import re

from .core import Oracle

HEADER = "#HYPED-ORACLE v1"
_SECTIONS = ("meta", "avgd", "comp", "csize", "label", "end")
_META = re.compile(r"^meta smax=(\d+) dmin=(\d+) seed=(-?\d+)$")


class OracleFormatError(ValueError):
    def __init__(self, section: str, message: str):
        super().__init__(f"[{section}] {message}")
        self.section = section


def dumps(o: Oracle) -> str:
    out = io.StringIO()
    w = out.write
    w(HEADER + "\n")
    w(f"meta smax={o.s_max} dmin={o.d_min} seed={o.seed}\n")
    for size in sorted(o.avgd):
        w(f"avgd {size} {o.avgd[size]:.6f}\n")
    for s in range(1, o.s_max + 1):
        comp = o.comp_of[s]
        for e in sorted(comp):
            w(f"comp {s} {e} {comp[e]}\n")
    for s in range(1, o.s_max + 1):
        for cid, size in enumerate(o.comp_size[s]):
            w(f"csize {s} {cid} {size}\n")
    for s in range(1, o.s_max + 1):
        level = o.labels[s]
        for e in sorted(level):
            lab = level[e]
            items = " ".join(f"{l}:{lab[l]}" for l in sorted(lab))
            w(f"label {s} {e} {items}\n")
    w("end\n")
    return out.getvalue()


def save_oracle(o: Oracle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(o))


def _ints(section: str, parts: list[str], line_no: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise OracleFormatError(section, f"line {line_no}: expected integers, got {' '.join(parts)!r}") from None


def loads(text: str) -> Oracle:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise OracleFormatError("header", "empty file")
    if lines[0] != HEADER:
        raise OracleFormatError("header", f"expected {HEADER!r}, got {lines[0][:40]!r}")
    if len(lines) < 2:
        raise OracleFormatError("meta", "truncated before meta record")
    m = _META.match(lines[1])
    if not m:
        raise OracleFormatError("meta", f"malformed meta record {lines[1]!r}")
    s_max, d_min, seed = (int(g) for g in m.groups())
    if s_max < 1:
        raise OracleFormatError("meta", "smax must be >= 1")
    avgd: dict[int, float] = {}
    comp_of: dict[int, dict[int, int]] = {s: {} for s in range(1, s_max + 1)}
    comp_size: dict[int, list[int]] = {s: [] for s in range(1, s_max + 1)}
    labels: dict[int, dict[int, dict[int, int]]] = {s: {} for s in range(1, s_max + 1)}
    section = "meta"
    ended = False

    def level(sec: str, s: int, line_no: int) -> int:
        if not 1 <= s <= s_max:
            raise OracleFormatError(sec, f"line {line_no}: s={s} outside [1, {s_max}]")
        return s

    for line_no, line in enumerate(lines[2:], start=3):
        if ended:
            raise OracleFormatError("end", f"line {line_no}: data after end record")
        parts = line.split(" ")
        kind = parts[0]
        if kind not in _SECTIONS or kind == "meta":
            raise OracleFormatError(section, f"line {line_no}: unknown record {kind!r}")
        if _SECTIONS.index(kind) < _SECTIONS.index(section):
            raise OracleFormatError(kind, f"line {line_no}: record out of section order")
        section = kind
        if kind == "avgd":
            if len(parts) != 3:
                raise OracleFormatError(kind, f"line {line_no}: expected 'avgd <size> <value>'")
            try:
                avgd[int(parts[1])] = float(parts[2])
            except ValueError:
                raise OracleFormatError(kind, f"line {line_no}: bad number") from None
        elif kind == "comp":
            if len(parts) != 4:
                raise OracleFormatError(kind, f"line {line_no}: expected 'comp <s> <edge> <comp>'")
            s, e, c = _ints(kind, parts[1:], line_no)
            comp_of[level(kind, s, line_no)][e] = c
        elif kind == "csize":
            if len(parts) != 4:
                raise OracleFormatError(kind, f"line {line_no}: expected 'csize <s> <comp> <size>'")
            s, c, size = _ints(kind, parts[1:], line_no)
            sizes = comp_size[level(kind, s, line_no)]
            if c != len(sizes):
                raise OracleFormatError(kind, f"line {line_no}: component ids must be dense and ordered")
            sizes.append(size)
        elif kind == "label":
            if len(parts) < 4:
                raise OracleFormatError(kind, f"line {line_no}: label record without entries")
            s, e = _ints(kind, parts[1:3], line_no)
            lab = {}
            for item in parts[3:]:
                l, _, d = item.partition(":")
                l, d = _ints(kind, [l, d], line_no)
                lab[l] = d
            labels[level(kind, s, line_no)][e] = lab
        else:
            if len(parts) != 1:
                raise OracleFormatError(kind, f"line {line_no}: malformed end record")
            ended = True
    if not ended:
        raise OracleFormatError(section, "file truncated: missing end record")
    if sorted(avgd) != list(range(2, d_min + 1)):
        raise OracleFormatError("avgd", f"expected sizes 2..{d_min}, got {sorted(avgd)}")
    n_edges = len(comp_of[1])
    if sorted(comp_of[1]) != list(range(n_edges)):
        raise OracleFormatError("comp", "level 1 must list every hyperedge id exactly once")
    for s in range(1, s_max + 1):
        counts = [0] * len(comp_size[s])
        for e, c in comp_of[s].items():
            if not 0 <= c < len(counts):
                raise OracleFormatError("csize", f"s={s}: component {c} has no size record")
            counts[c] += 1
        if counts != comp_size[s]:
            raise OracleFormatError("csize", f"s={s}: sizes disagree with comp records")
        for e, lab in labels[s].items():
            if e not in comp_of[s] or any(l not in comp_of[s] for l in lab):
                raise OracleFormatError("label", f"s={s}: label references a hyperedge absent at this level")
    return Oracle(s_max, d_min, seed, avgd, comp_of, comp_size, labels)


def load_oracle(path) -> Oracle:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
