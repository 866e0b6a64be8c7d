"""Line-based text formats for graphs, certificates, free sets, drawings
and point sets.

Serialization is canonical, parsing tolerates comments and blank lines, and
parse(serialize(x)) reproduces x bit-exactly (rationals included).
"""

from __future__ import annotations

from fractions import Fraction

from .curves import AlongItem, CrossItem, CurveCertificate, VertexItem
from .embedding import EmbeddedGraph, build_embedded
from .errors import GraphFormatError
from .extractors import OrderedFreeSet
from .realize import PolyDrawing, checked_drawing


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _fail(no: int, msg: str):
    raise GraphFormatError(f"line {no}: {msg}")


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------

def serialize_graph(g: EmbeddedGraph) -> str:
    out = [f"V {g.n}"]
    for v in range(g.n):
        nbrs = " ".join(str(u) for u in g.rot[v])
        out.append(f"R {v}: {nbrs}".rstrip())
    walk = [u for u, _ in g.faces[g.outer_face].walk]
    if walk:
        k = walk.index(min(walk))
        walk = walk[k:] + walk[:k]
        out.append("OUTER: " + " ".join(str(v) for v in walk))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> EmbeddedGraph:
    n = None
    rot: dict[int, list[int]] = {}
    outer = None
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "V":
            if n is not None:
                _fail(no, "duplicate V line")
            try:
                n = int(parts[1])
            except (IndexError, ValueError):
                _fail(no, "V expects a vertex count")
        elif parts[0] == "R":
            if len(parts) < 2 or not parts[1].endswith(":"):
                _fail(no, "rotation line must look like 'R <v>: ...'")
            try:
                v = int(parts[1][:-1])
                nbrs = [int(x) for x in parts[2:]]
            except ValueError:
                _fail(no, "rotation entries must be integers")
            if v in rot:
                _fail(no, f"duplicate rotation for vertex {v}")
            rot[v] = nbrs
        elif parts[0] == "OUTER:":
            try:
                outer = [int(x) for x in parts[1:]]
            except ValueError:
                _fail(no, "outer hint entries must be integers")
        else:
            _fail(no, f"unknown directive {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing V line")
    if set(rot) != set(range(n)):
        raise GraphFormatError("rotation lines must cover vertices 0..n-1")
    return build_embedded(n, [rot[v] for v in range(n)],
                          outer_face_hint=outer)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def serialize_certificate(cert: CurveCertificate) -> str:
    out = []
    for it, p in zip(cert.items, cert.passages):
        out.append(str(it))
        if p is not None:
            out.append(f"CF {p}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> CurveCertificate:
    items: list = []
    passages: list[int | None] = []
    for no, line in _lines(text):
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "CV":
                items.append(VertexItem(int(parts[1])))
                passages.append(None)
            elif kind == "CX":
                items.append(CrossItem((int(parts[1]), int(parts[2]))))
                passages.append(None)
            elif kind == "CA":
                items.append(AlongItem((int(parts[1]), int(parts[2]))))
                passages.append(None)
            elif kind == "CF":
                if not items:
                    _fail(no, "face passage before any item")
                if passages[len(items) - 1] is not None:
                    _fail(no, "two passages between the same items")
                passages[len(items) - 1] = int(parts[1])
            else:
                _fail(no, f"unknown certificate directive {kind!r}")
        except (IndexError, ValueError):
            _fail(no, f"malformed {kind} line")
    if not items:
        raise GraphFormatError("certificate has no items")
    return CurveCertificate(tuple(items), tuple(passages))


# ---------------------------------------------------------------------------
# Free sets
# ---------------------------------------------------------------------------

def serialize_freeset(fs: OrderedFreeSet) -> str:
    head = "S: " + " ".join(str(v) for v in fs.order)
    meta = (f"# provenance: {fs.provenance}\n"
            f"# bound-met: {fs.bound_met}\n")
    return meta + head + "\n" + serialize_certificate(fs.certificate)


def parse_freeset(text: str, g: EmbeddedGraph) -> OrderedFreeSet:
    order = None
    cert_lines = []
    for no, line in _lines(text):
        if line.startswith("S:"):
            if order is not None:
                _fail(no, "duplicate S line")
            try:
                order = tuple(int(x) for x in line[2:].split())
            except ValueError:
                _fail(no, "S entries must be integers")
        else:
            cert_lines.append(line)
    if order is None:
        raise GraphFormatError("missing S line")
    cert = parse_certificate("\n".join(cert_lines))
    return OrderedFreeSet(graph=g, order=order, certificate=cert,
                          provenance="parsed", bound_met="parsed")


# ---------------------------------------------------------------------------
# Drawings and point sets
# ---------------------------------------------------------------------------

def _frac(s: str, no: int) -> Fraction:
    if "/" in s:
        a, b = s.split("/", 1)
        try:
            return Fraction(int(a), int(b))
        except (ValueError, ZeroDivisionError):
            _fail(no, f"bad rational {s!r}")
    try:
        return Fraction(int(s))
    except ValueError:
        _fail(no, f"bad rational {s!r}")


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def serialize_drawing(d: PolyDrawing) -> str:
    out = []
    for v in sorted(d.pos):
        x, y = d.pos[v]
        out.append(f"P {v} {_fmt(x)} {_fmt(y)}")
    for e in sorted(d.bends):
        for (x, y) in d.bends[e]:
            out.append(f"B {e[0]} {e[1]} {_fmt(x)} {_fmt(y)}")
    return "\n".join(out) + "\n"


def parse_drawing(text: str, g: EmbeddedGraph, verify: bool = True,
                  ) -> PolyDrawing:
    pos = {}
    bends: dict = {}
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "P" and len(parts) == 4:
            pos[int(parts[1])] = (_frac(parts[2], no), _frac(parts[3], no))
        elif parts[0] == "B" and len(parts) == 5:
            e = (int(parts[1]), int(parts[2]))
            bends.setdefault(e, []).append((_frac(parts[3], no),
                                            _frac(parts[4], no)))
        else:
            _fail(no, f"unknown drawing directive {parts[0]!r}")
    d = PolyDrawing(graph=g, pos=pos,
                    bends={e: tuple(b) for e, b in bends.items()},
                    provenance="parsed")
    if verify:
        return checked_drawing(g, d)
    return d


def serialize_points(points) -> str:
    return "\n".join(f"{_fmt(Fraction(x))} {_fmt(Fraction(y))}"
                     for x, y in points) + "\n"


def parse_points(text: str) -> list:
    out = []
    for no, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            _fail(no, "point lines carry exactly two rationals")
        out.append((_frac(parts[0], no), _frac(parts[1], no)))
    return out
