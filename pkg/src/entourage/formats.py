"""Line-oriented text formats for spaces, maps, weights, graphs and magmas.

One file may hold any number of blocks; a block starts with a header line
(``space``, ``map``, ``weight``, ``graph`` or ``magma``) and runs until the
next header.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import MagmaTable
from .errors import EntourageError, ParseError, UnknownLabel
from .graphs import DiGraph
from .morphisms import SpaceMap
from .rel_core import Carrier, Entourage, bits
from .spaces import FiniteEntourageSpace
from .weights import INF, WeightTable, format_value

HEADERS = ("space", "map", "weight", "graph", "magma")
_LABEL = re.compile(r"[^\s(){},=#]+")
_PAIR = re.compile(r"\(\s*([^\s(){},=#]+)\s+([^\s(){},=#]+)\s*\)")


@dataclass
class _Line:
    no: int
    text: str

    def col(self, fragment: str) -> int:
        pos = self.text.find(fragment)
        return pos + 1 if pos >= 0 else 1


@dataclass
class _Block:
    kind: str
    header: _Line
    body: list = field(default_factory=list)


@dataclass
class Workspace:
    spaces: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    graphs: dict = field(default_factory=dict)
    magmas: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)  # magma name -> {ideal name: labels}
    pending: list = field(default_factory=list, repr=False)  # map blocks awaiting their spaces

    def merge(self, other: "Workspace") -> None:
        for kind in ("spaces", "maps", "weights", "graphs", "magmas"):
            mine, theirs = getattr(self, kind), getattr(other, kind)
            for name, value in theirs.items():
                if name in mine:
                    raise EntourageError(f"duplicate {kind[:-1]} name {name!r}")
                mine[name] = value
        for mag, table in other.ideals.items():
            self.ideals.setdefault(mag, {}).update(table)

    def only(self, kind: str):
        items = getattr(self, kind)
        if len(items) != 1:
            raise EntourageError(f"expected exactly one {kind[:-1]}, found {len(items)}")
        return next(iter(items.values()))


class _Parser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = []
        for no, raw in enumerate(text.splitlines(), 1):
            cut = raw.split("#", 1)[0].rstrip()
            if cut.strip():
                self.lines.append(_Line(no, cut))

    def error(self, msg: str, line: Optional[_Line] = None, col: int = 1):
        return ParseError(msg, line.no if line else 0, col, self.source)

    def blocks(self) -> list:
        out = []
        for ln in self.lines:
            word = ln.text.split()[0]
            if word in HEADERS:
                out.append(_Block(word, ln))
            elif not out:
                raise self.error(f"expected a block header ({', '.join(HEADERS)}), got {word!r}", ln, ln.col(word))
            else:
                out[-1].body.append(ln)
        return out

    def labels(self, ln: _Line, keyword: str) -> list:
        rest = ln.text.strip()[len(keyword):]
        toks = rest.split()
        for t in toks:
            if not _LABEL.fullmatch(t):
                raise self.error(f"bad label {t!r}", ln, ln.col(t))
        if not toks:
            raise self.error(f"'{keyword}' needs at least one label", ln, len(ln.text) + 1)
        if len(set(toks)) != len(toks):
            k = next(k for k, t in enumerate(toks) if t in toks[:k])
            spans = [m.start() for m in re.finditer(r"\S+", ln.text)]
            offset = len(ln.text.split()) - len(toks)
            raise self.error(f"duplicate label {toks[k]!r}", ln, spans[offset + k] + 1)
        return toks

    def name(self, block: _Block) -> str:
        toks = block.header.text.split()
        if len(toks) < 2:
            raise self.error(f"{block.kind} needs a name", block.header, len(block.header.text) + 1)
        if block.kind != "map" and len(toks) != 2:
            raise self.error("unexpected text after the name", block.header, block.header.col(toks[2]))
        return toks[1]

    def carrier_line(self, block: _Block, keyword: str) -> tuple:
        for i, ln in enumerate(block.body):
            if ln.text.split()[0] == keyword:
                return Carrier(tuple(self.labels(ln, keyword))), i
        raise self.error(f"{block.kind} {self.name(block)!r} has no '{keyword}' line", block.header, 1)

    def index(self, carrier: Carrier, label: str, ln: _Line) -> int:
        if label not in carrier:
            raise UnknownLabel(f"{self.source}:{ln.no}:{ln.col(label)}: unknown point {label!r}")
        return carrier.index(label)

    def space(self, block: _Block) -> FiniteEntourageSpace:
        name = self.name(block)
        carrier, at = self.carrier_line(block, "points")
        rows = [1 << i for i in range(carrier.size)]
        for i, ln in enumerate(block.body):
            if i == at:
                continue
            word = ln.text.split()[0]
            if word != "gen":
                raise self.error(f"unexpected {word!r} in space block", ln, ln.col(word))
            rest = ln.text.strip()[3:]
            leftover = _PAIR.sub("", rest).strip()
            if leftover:
                raise self.error(f"expected '(a b)' pairs, got {leftover.split()[0]!r}", ln, ln.col(leftover.split()[0]))
            for a, b in _PAIR.findall(rest):
                rows[self.index(carrier, a, ln)] |= 1 << self.index(carrier, b, ln)
        return FiniteEntourageSpace(carrier, Entourage(carrier, tuple(rows)), name)

    def map_header(self, block: _Block) -> tuple:
        m = re.fullmatch(r"\s*map\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", block.header.text)
        if not m:
            raise self.error("expected 'map NAME : SRC -> DST'", block.header, 1)
        return m.groups()

    def map_body(self, block: _Block) -> list:
        pairs = []
        for ln in block.body:
            m = re.fullmatch(r"\s*(\S+)\s*->\s*(\S+)\s*", ln.text)
            if not m:
                raise self.error("expected 'a -> b'", ln, 1)
            pairs.append((m.group(1), m.group(2), ln))
        return pairs

    def weight(self, block: _Block) -> WeightTable:
        name = self.name(block)
        carrier, at = self.carrier_line(block, "points")
        n = carrier.size
        d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
        seen = set()
        for i, ln in enumerate(block.body):
            if i == at:
                continue
            m = re.fullmatch(r"\s*d\s+(\S+)\s+(\S+)\s*=\s*(\S+)\s*", ln.text)
            if not m:
                raise self.error("expected 'd a b = value'", ln, 1)
            a, b, v = m.groups()
            ia, ib = self.index(carrier, a, ln), self.index(carrier, b, ln)
            if (ia, ib) in seen:
                raise self.error(f"d {a} {b} given twice", ln, 1)
            seen.add((ia, ib))
            d[ia][ib] = self.value(v, ln)
        try:
            return WeightTable(carrier, tuple(map(tuple, d)), name)
        except EntourageError as exc:
            raise self.error(str(exc), block.header, 1) from None

    def value(self, text: str, ln: _Line):
        if text == "inf":
            return INF
        try:
            v = Fraction(text)
        except ValueError:
            raise self.error(f"bad value {text!r}", ln, ln.col(text)) from None
        if v < 0:
            raise self.error(f"negative value {text!r}", ln, ln.col(text))
        return v

    def graph(self, block: _Block) -> DiGraph:
        name = self.name(block)
        carrier, at = self.carrier_line(block, "vertices")
        rows = [0] * carrier.size
        for i, ln in enumerate(block.body):
            if i == at:
                continue
            toks = ln.text.split()
            if toks[0] != "edge" or len(toks) != 3:
                raise self.error("expected 'edge a b'", ln, 1)
            rows[self.index(carrier, toks[1], ln)] |= 1 << self.index(carrier, toks[2], ln)
        return DiGraph(carrier, tuple(rows), name)

    def magma(self, block: _Block) -> tuple:
        name = self.name(block)
        carrier, at = self.carrier_line(block, "elems")
        n = carrier.size
        body = block.body
        rows, ideals = None, {}
        i = 0
        while i < len(body):
            ln = body[i]
            word = ln.text.split()[0]
            if i == at:
                i += 1
                continue
            if word == "table":
                if rows is not None:
                    raise self.error("second 'table' in magma block", ln, 1)
                chunk = body[i + 1:i + 1 + n]
                if len(chunk) < n:
                    raise self.error(f"table needs {n} rows", ln, 1)
                rows = []
                for row_ln in chunk:
                    toks = row_ln.text.split()
                    if len(toks) != n:
                        raise self.error(f"table row needs {n} entries", row_ln, 1)
                    rows.append(tuple(self.index(carrier, t, row_ln) for t in toks))
                i += n + 1
                continue
            if word == "ideal":
                m = re.fullmatch(r"\s*ideal\s+(\S+)\s*=\s*\{([^}]*)\}\s*", ln.text)
                if not m:
                    raise self.error("expected 'ideal NAME = {e,a}'", ln, 1)
                members = [t.strip() for t in m.group(2).split(",") if t.strip()]
                for t in members:
                    self.index(carrier, t, ln)
                ideals[m.group(1)] = members
                i += 1
                continue
            raise self.error(f"unexpected {word!r} in magma block", ln, ln.col(word))
        if rows is None:
            raise self.error(f"magma {name!r} has no table", block.header, 1)
        return MagmaTable(carrier, tuple(rows), name), ideals


def parse_text(text: str, source: str = "<input>") -> Workspace:
    p = _Parser(text, source)
    ws = Workspace()
    pending_maps = []
    blocks = p.blocks()
    if not blocks:
        raise ParseError("empty input", 0, 0, source)
    for block in blocks:
        name = p.name(block) if block.kind != "map" else p.map_header(block)[0]
        kind = {"space": "spaces", "map": "maps", "weight": "weights", "graph": "graphs", "magma": "magmas"}[block.kind]
        if name in getattr(ws, kind):
            raise p.error(f"duplicate {block.kind} name {name!r}", block.header, block.header.col(name))
        if block.kind == "space":
            ws.spaces[name] = p.space(block)
        elif block.kind == "weight":
            ws.weights[name] = p.weight(block)
        elif block.kind == "graph":
            ws.graphs[name] = p.graph(block)
        elif block.kind == "magma":
            table, ideals = p.magma(block)
            ws.magmas[name] = table
            ws.ideals[name] = ideals
        else:
            pending_maps.append(block)
            ws.maps[name] = None
    ws.pending = [(p, b) for b in pending_maps]
    return ws


def resolve_maps(ws: Workspace) -> None:
    """Bind map blocks to their source and target spaces."""
    for p, block in ws.pending:
        name, src, dst = p.map_header(block)
        for ref in (src, dst):
            if ref not in ws.spaces:
                raise EntourageError(f"map {name!r} refers to unknown space {ref!r}")
        s, t = ws.spaces[src], ws.spaces[dst]
        mapping = {}
        for a, b, ln in p.map_body(block):
            if a in mapping:
                raise p.error(f"point {a!r} mapped twice", ln, ln.col(a))
            if a not in s.carrier:
                raise EntourageError(f"map {name!r}: unknown source point {a!r} (line {ln.no})")
            if b not in t.carrier:
                raise EntourageError(f"map {name!r}: unknown target point {b!r} (line {ln.no})")
            mapping[a] = b
        ws.maps[name] = SpaceMap.from_dict(s, t, mapping, name)
    ws.pending = []


def load(paths, resolve: bool = True) -> Workspace:
    ws = Workspace()
    pending = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            part = parse_text(fh.read(), str(path))
        pending += part.pending
        ws.merge(part)
    ws.pending = pending
    if resolve:
        resolve_maps(ws)
    return ws


def loads(text: str, source: str = "<input>") -> Workspace:
    ws = parse_text(text, source)
    resolve_maps(ws)
    return ws


# -- writers ---------------------------------------------------------------------------


def _labels(c: Carrier) -> str:
    return " ".join(str(x) for x in c.labels)


def dump_space(space: FiniteEntourageSpace, name: Optional[str] = None) -> str:
    labs = space.carrier.labels
    out = [f"space {name or space.name or 'X'}", f"points {_labels(space.carrier)}"]
    for i, r in enumerate(space.max_ent.rows):
        off = [j for j in bits(r) if j != i]
        if off:
            out.append("gen " + " ".join(f"({labs[i]} {labs[j]})" for j in off))
    return "\n".join(out) + "\n"


def dump_map(f: SpaceMap, name: Optional[str] = None) -> str:
    out = [f"map {name or f.name or 'f'} : {f.src.name or 'X'} -> {f.dst.name or 'Y'}"]
    out += [f"{a} -> {b}" for a, b in f.as_dict().items()]
    return "\n".join(out) + "\n"


def dump_weight(w: WeightTable, name: Optional[str] = None) -> str:
    labs = w.carrier.labels
    out = [f"weight {name or w.name or 'd'}", f"points {_labels(w.carrier)}"]
    for i, row in enumerate(w.d):
        for j, v in enumerate(row):
            if i != j and v != INF:
                out.append(f"d {labs[i]} {labs[j]} = {format_value(v)}")
    return "\n".join(out) + "\n"


def dump_graph(g: DiGraph, name: Optional[str] = None) -> str:
    out = [f"graph {name or g.name or 'G'}", f"vertices {_labels(g.vertices)}"]
    out += [f"edge {a} {b}" for a, b in g.edges()]
    return "\n".join(out) + "\n"


def dump_magma(t: MagmaTable, ideals: Optional[dict] = None, name: Optional[str] = None) -> str:
    labs = t.elements.labels
    out = [f"magma {name or t.name or 'M'}", f"elems {_labels(t.elements)}", "table"]
    out += [" ".join(str(labs[v]) for v in row) for row in t.op]
    for iname, members in (ideals or {}).items():
        out.append(f"ideal {iname} = {{{','.join(members)}}}")
    return "\n".join(out) + "\n"
