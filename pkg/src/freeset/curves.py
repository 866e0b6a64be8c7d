"""Combinatorial certificates for closed proper-good curves.

A certificate is a cyclic sequence of items (vertices the curve passes
through, edges it crosses once, edges it runs along entirely) together with
the face traversed between consecutive items.  Validation checks that the
data describes a simple closed curve meeting every edge at most once:
besides the local properness rules this requires, for every face, a
non-crossing placement of the passage chords on the face's boundary circle,
and a globally consistent two-sided partition of the graph.

Boundary circle coordinates: a face of size L gets 2L cyclic positions;
position 2t is the interior of the walk edge at index t, position 2t+1 the
corner at its head.  The walk order runs counter-clockwise around the face
interior, so the region to the left of a directed passage chord (a -> b) is
the one bordering the arc that starts just after b.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .embedding import EmbeddedGraph, Edge, norm_edge
from .errors import (
    InconsistentSides,
    InvalidCurve,
    NotACycle,
    NotCaressed,
    NotIndependent,
    NotOnBoundary,
    NotTriangulation,
    OuterEdge,
    TooFew,
)

_SEARCH_CAP = 2_000_000


@dataclass(frozen=True)
class VertexItem:
    v: int

    def __str__(self):
        return f"CV {self.v}"


@dataclass(frozen=True)
class CrossItem:
    edge: Edge

    def __str__(self):
        return f"CX {self.edge[0]} {self.edge[1]}"


@dataclass(frozen=True)
class AlongItem:
    edge: Edge

    def __str__(self):
        return f"CA {self.edge[0]} {self.edge[1]}"


Item = VertexItem | CrossItem | AlongItem


@dataclass(frozen=True)
class CurveCertificate:
    """Cyclic item list; passages[i] is the face crossed between items i and
    i+1 (None exactly when that pair is joined by an along-edge)."""

    items: tuple[Item, ...]
    passages: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.items) != len(self.passages):
            raise InvalidCurve("need one passage slot per item")

    def vertex_order(self) -> tuple[int, ...]:
        return tuple(it.v for it in self.items if isinstance(it, VertexItem))

    def crossed_edges(self) -> tuple[Edge, ...]:
        return tuple(it.edge for it in self.items if isinstance(it, CrossItem))

    def along_edges(self) -> tuple[Edge, ...]:
        return tuple(it.edge for it in self.items if isinstance(it, AlongItem))

    def rotated(self, k: int) -> "CurveCertificate":
        m = len(self.items)
        k %= m
        return CurveCertificate(self.items[k:] + self.items[:k],
                                self.passages[k:] + self.passages[:k])

    def reversed(self) -> "CurveCertificate":
        m = len(self.items)
        items = tuple(reversed(self.items))
        passages = tuple(self.passages[(m - 2 - i) % m] for i in range(m))
        return CurveCertificate(items, passages)


@dataclass(frozen=True)
class SidePartition:
    """Vertices strictly inside the curve (X), on it in curve order (Y),
    strictly outside (Z), and a per-edge classification."""

    X: frozenset[int]
    Y: tuple[int, ...]
    Z: frozenset[int]
    edge_class: dict  # Edge -> "along" | "crossed" | "inside" | "outside"


@dataclass(frozen=True)
class CurveViolation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


# ---------------------------------------------------------------------------
# Analysis: structure, corner assignment, chord placement
# ---------------------------------------------------------------------------

class _Bad(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.violation = CurveViolation(kind, detail)


class _FaceGeometry:
    """Lazy boundary-circle indexing for one face."""

    def __init__(self, g: EmbeddedGraph, fid: int):
        self.fid = fid
        walk = g.faces[fid].walk
        self.size = 2 * len(walk)
        self.edge_pos = {d: 2 * t for t, d in enumerate(walk)}
        corner_pos: dict[tuple[int, int], int] = {}
        for t, (u, v) in enumerate(walk):
            # corner at v between the walk edges t and t+1; in rotation terms
            # this is the corner whose ccw-later edge is u
            corner_pos[(v, u)] = 2 * t + 1
        self.corner_pos = corner_pos  # (vertex, ccw-later neighbor) -> pos

    def vertex_corners(self, g: EmbeddedGraph, v: int) -> list[int]:
        out = []
        for u in g.rot[v]:
            p = self.corner_pos.get((v, u))
            if p is not None:
                out.append(p)
        return sorted(out)


def _chords_cross(a1: int, b1: int, a2: int, b2: int, size: int) -> bool:
    if len({a1, b1} & {a2, b2}) > 0:
        return False
    if a1 == b1 or a2 == b2:
        return False

    def inside(x, lo, hi):
        return (x - lo) % size < (hi - lo) % size and x != lo

    i2 = inside(a2, a1, b1)
    j2 = inside(b2, a1, b1)
    return i2 != j2


class _Analysis:
    """Successful validation result, reused by side_partition and realize."""

    def __init__(self, g: EmbeddedGraph, cert: CurveCertificate):
        self.g = g
        self.cert = cert
        self.geom: dict[int, _FaceGeometry] = {}
        # per item index: (entry_pos, exit_pos) on the faces of the adjacent
        # passages (None when the neighbor is an along item), plus the entry
        # and exit corner slot for vertex items (rotation index, or None)
        self.entry_pos: list[int | None] = []
        self.exit_pos: list[int | None] = []
        self.entry_corner: list[int | None] = []
        self.exit_corner: list[int | None] = []
        self.face_chords: dict[int, list[tuple[int, int]]] = {}
        self.arc_side: dict[int, list[tuple[int, int, str]]] = {}

    def geometry(self, fid: int) -> _FaceGeometry:
        geo = self.geom.get(fid)
        if geo is None:
            geo = _FaceGeometry(self.g, fid)
            self.geom[fid] = geo
        return geo

    def position_side(self, fid: int, pos: int) -> str | None:
        """Side of a boundary position; None when unlabeled or on the curve."""
        arcs = self.arc_side.get(fid)
        if not arcs:
            return None
        size = self.geometry(fid).size
        for lo, _, _ in arcs:
            if pos == lo:
                return None
        for lo, hi, side in arcs:
            span = (hi - lo) % size or size
            if 0 < (pos - lo) % size < span:
                return side
        return None


def _structural_check(g: EmbeddedGraph, cert: CurveCertificate) -> None:
    items, passages = cert.items, cert.passages
    m = len(items)
    if m == 0:
        raise _Bad("empty", "certificate has no items")

    seen_edges: set[Edge] = set()
    seen_vertices: set[int] = set()
    for i, it in enumerate(items):
        if isinstance(it, VertexItem):
            if not 0 <= it.v < g.n:
                raise _Bad("unknown-element", f"vertex {it.v} not in graph")
            if it.v in seen_vertices:
                raise _Bad("vertex-twice", f"vertex {it.v} appears twice")
            seen_vertices.add(it.v)
        else:
            e = norm_edge(*it.edge)
            if e not in g.edges:
                raise _Bad("unknown-element", f"edge {e} not in graph")
            if e in seen_edges:
                raise _Bad("edge-twice", f"edge {e} used twice")
            seen_edges.add(e)

    y = {it.v for it in items if isinstance(it, VertexItem)}
    for it in items:
        if isinstance(it, CrossItem):
            u, v = it.edge
            if u in y or v in y:
                raise _Bad("not-proper",
                           f"crossed edge {it.edge} touches a curve vertex")

    # every edge joining two curve vertices must be run along
    along = {norm_edge(*it.edge) for it in items if isinstance(it, AlongItem)}
    for u in y:
        for v in g.rot[u]:
            if v in y and norm_edge(u, v) not in along:
                raise _Bad("not-proper",
                           f"edge {norm_edge(u, v)} joins two curve vertices "
                           "but is not an along item")

    # along items sit between their endpoint vertex items, without passages
    for i, it in enumerate(items):
        if not isinstance(it, AlongItem):
            continue
        if m < 3:
            raise _Bad("bad-along", "along item needs flanking vertex items")
        prev_it, next_it = items[i - 1], items[(i + 1) % m]
        u, v = it.edge
        ok = (isinstance(prev_it, VertexItem) and isinstance(next_it, VertexItem)
              and {prev_it.v, next_it.v} == {u, v})
        if not ok:
            raise _Bad("bad-along",
                       f"along edge {it.edge} not flanked by its endpoints")
        if passages[i - 1] is not None or passages[i] is not None:
            raise _Bad("bad-along",
                       f"along edge {it.edge} must not carry face passages")

    for i in range(m):
        joined = isinstance(items[i], AlongItem) or \
            isinstance(items[(i + 1) % m], AlongItem)
        if passages[i] is None and not joined:
            raise _Bad("missing-passage",
                       f"items {i} and {(i + 1) % m} need a shared face")
        if passages[i] is not None:
            if not 0 <= passages[i] < len(g.faces):
                raise _Bad("unknown-element", f"face {passages[i]} not in graph")
            if joined:
                raise _Bad("bad-along", "passage across an along item")

    if all(p is None for p in passages):
        raise _Bad("no-passage", "certificate needs at least one face passage")


def _parity_check(g: EmbeddedGraph, cert: CurveCertificate) -> None:
    """A closed curve crosses every cycle an even number of times: the
    same-side/opposite-side constraints must be 2-colorable."""
    y = set(cert.vertex_order())
    crossed = set(cert.crossed_edges())
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in y or s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.rot[u]:
                if v in y:
                    continue
                want = color[u] ^ (1 if norm_edge(u, v) in crossed else 0)
                if v in color:
                    if color[v] != want:
                        raise _Bad("parity",
                                   f"edge {norm_edge(u, v)} closes a cycle "
                                   "crossed an odd number of times")
                else:
                    color[v] = want
                    stack.append(v)


def _item_slots(an: _Analysis, i: int, side: str) -> list[tuple[int, int | None]]:
    """Candidate (position, corner_slot) choices for one end of an item.

    side "entry" uses the passage before the item, "exit" the one after.
    """
    g, cert = an.g, an.cert
    m = len(cert.items)
    it = cert.items[i]
    fid = cert.passages[i - 1] if side == "entry" else cert.passages[i]
    if fid is None:
        return [(-1, None)]
    geo = an.geometry(fid)
    if isinstance(it, AlongItem):
        raise _Bad("bad-along", "along item adjacent to a passage")
    if isinstance(it, CrossItem):
        u, v = it.edge
        out = []
        for d in ((u, v), (v, u)):
            if g.face_of(*d) == fid:
                out.append((geo.edge_pos[d], None))
        if not out:
            raise _Bad("off-face",
                       f"edge {it.edge} is not on face {fid} (item {i})")
        return out
    # vertex item: one candidate per corner of the face at v
    v = it.v
    out = []
    for slot, u in enumerate(g.rot[v]):
        pos = geo.corner_pos.get((v, u))
        if pos is not None:
            out.append((pos, slot))
    if not out:
        raise _Bad("off-face", f"vertex {v} is not on face {fid} (item {i})")
    return out


def _assign_chords(an: _Analysis) -> None:
    """Choose corners/occurrences so all passage chords are non-crossing.

    Backtracking over the (usually singleton) choice sets, bounded by a
    global step cap.
    """
    cert = an.cert
    m = len(cert.items)
    entry_choices = [_item_slots(an, i, "entry") for i in range(m)]
    exit_choices = [_item_slots(an, i, "exit") for i in range(m)]

    # cross items with two distinct side faces have forced, linked ends
    for i, it in enumerate(cert.items):
        if isinstance(it, CrossItem):
            u, v = it.edge
            f1, f2 = an.g.face_of(u, v), an.g.face_of(v, u)
            f_in = cert.passages[i - 1]
            f_out = cert.passages[i]
            if f_in not in (f1, f2) or f_out not in (f1, f2):
                raise _Bad("off-face",
                           f"crossing {it.edge} is not between faces "
                           f"{f_in} and {f_out}")
            if f1 != f2 and f_in == f_out:
                raise _Bad("inconsistent-sides",
                           f"crossing {it.edge} re-enters face {f_in}")

    chords_by_face: dict[int, list[tuple[int, int]]] = {}
    steps = 0
    an.entry_pos = [None] * m
    an.exit_pos = [None] * m
    an.entry_corner = [None] * m
    an.exit_corner = [None] * m

    def ok_to_place(fid: int, a: int, b: int) -> bool:
        size = an.geometry(fid).size
        return all(not _chords_cross(a, b, a2, b2, size)
                   for a2, b2 in chords_by_face.get(fid, ()))

    def bridge_conflict(idx: int, pos: int, side: str) -> bool:
        # a cross item whose two passages run through the same (bridge) face
        # must use its two distinct edge occurrences
        if not isinstance(cert.items[idx], CrossItem):
            return False
        if cert.passages[idx - 1] != cert.passages[idx]:
            return False
        other = an.entry_pos[idx] if side == "exit" else an.exit_pos[idx]
        return other is not None and other == pos

    def solve(i: int) -> bool:
        nonlocal steps
        if i == m:
            return True
        fid = cert.passages[i]
        if fid is None:
            return solve(i + 1)
        j = (i + 1) % m
        for a, slot_a in exit_choices[i]:
            if bridge_conflict(i, a, "exit"):
                continue
            for b, slot_b in entry_choices[j]:
                steps += 1
                if steps > _SEARCH_CAP:
                    raise _Bad("search-cap",
                               "chord placement search exceeded bounds")
                if bridge_conflict(j, b, "entry"):
                    continue
                if not ok_to_place(fid, a, b):
                    continue
                chords_by_face.setdefault(fid, []).append((a, b))
                an.exit_pos[i], an.entry_pos[j] = a, b
                an.exit_corner[i], an.entry_corner[j] = slot_a, slot_b
                if solve(i + 1):
                    return True
                chords_by_face[fid].pop()
                an.exit_pos[i] = an.entry_pos[j] = None
                an.exit_corner[i] = an.entry_corner[j] = None
        return False

    if not solve(0):
        raise _Bad("self-crossing",
                   "no corner assignment avoids curve self-crossings")
    an.face_chords = chords_by_face


def _label_arcs(an: _Analysis) -> None:
    """Per face: label boundary arcs inside/outside by toggling at chord arms.

    Anchored by every directed chord (the arc just after the head is inside);
    disagreement between anchors means the traversal is inconsistent.
    """
    for fid, chords in an.face_chords.items():
        size = an.geometry(fid).size
        arms: dict[int, int] = {}
        real = [(a, b) for a, b in chords if a != b]  # spikes don't separate
        for a, b in real:
            arms[a] = arms.get(a, 0) + 1
            arms[b] = arms.get(b, 0) + 1
        if not arms:
            continue
        pts = sorted(arms)
        at = {p: k for k, p in enumerate(pts)}
        r = len(pts)

        # absolute anchors exist only where the curve passes through the
        # boundary (single-arm endpoints): the arc after a head and the arc
        # before a tail lie to the curve's left
        anchor_arcs: list[int] = []
        for a, b in real:
            if arms[b] == 1:
                anchor_arcs.append(at[b])
            if arms[a] == 1:
                anchor_arcs.append((at[a] - 1) % r)

        # chords joined head-to-tail at two-arm points form chains; a closed
        # chain is an inscribed polygon whose winding fixes the orientation:
        # boundary arcs lie right of a ccw polygon, left of a cw one
        tail_at: dict[int, int] = {}
        for ci, (a, b) in enumerate(real):
            if arms[a] == 2:
                tail_at[a] = ci
        chain_checks: list[tuple[int, str]] = []  # (arc index, wanted side)
        seen_chord = [False] * len(real)
        for ci, (a, b) in enumerate(real):
            if seen_chord[ci] or arms[a] != 2:
                continue
            # walk forward while the joints are two-armed
            walk = [ci]
            seen_chord[ci] = True
            cur = ci
            closed = False
            while True:
                head = real[cur][1]
                if arms[head] != 2 or head not in tail_at:
                    break
                nxt = tail_at[head]
                if nxt == walk[0]:
                    closed = True
                    break
                if seen_chord[nxt]:
                    break
                seen_chord[nxt] = True
                walk.append(nxt)
                cur = nxt
            if closed:
                winding = sum((real[c][1] - real[c][0]) % size for c in walk)
                if winding % size != 0:
                    raise _Bad("inconsistent-sides",
                               f"face {fid}: chord polygon does not close")
                side = "Z" if winding == size else "X"
                chain_checks.append((at[real[walk[0]][1]], side))

        sides: list[str | None] = [None] * r
        if anchor_arcs:
            k0, s0 = anchor_arcs[0], "X"
        elif chain_checks:
            k0, s0 = chain_checks[0]
        else:  # pragma: no cover - every real chord yields one or the other
            continue
        sides[k0] = s0
        cur_side = s0
        for step in range(1, r + 1):
            k = (k0 + step) % r
            if arms[pts[k]] % 2 == 1:
                cur_side = "Z" if cur_side == "X" else "X"
            if sides[k] is None:
                sides[k] = cur_side
            elif sides[k] != cur_side:
                raise _Bad("inconsistent-sides",
                           f"face {fid}: arc labeling does not close up")
        for k in anchor_arcs:
            if sides[k] != "X":
                raise _Bad("inconsistent-sides",
                           f"face {fid}: passage orientations disagree")
        for k, want in chain_checks:
            if sides[k] != want:
                raise _Bad("inconsistent-sides",
                           f"face {fid}: chord polygon orientation disagrees")
        an.arc_side[fid] = [
            (pts[k], pts[(k + 1) % r], sides[k]) for k in range(r)
        ]


def analyze_curve(g: EmbeddedGraph, cert: CurveCertificate) -> _Analysis:
    """Full validation; raises InvalidCurve with the first violated invariant."""
    try:
        _structural_check(g, cert)
        an = _Analysis(g, cert)
        _assign_chords(an)
        _parity_check(g, cert)
        _label_arcs(an)
        return an
    except _Bad as exc:
        raise InvalidCurve(str(exc)) from None


def validate_curve(g: EmbeddedGraph, cert: CurveCertificate,
                   ) -> CurveViolation | None:
    """Check all certificate invariants; None when the curve is valid."""
    try:
        _structural_check(g, cert)
        an = _Analysis(g, cert)
        _assign_chords(an)
        _parity_check(g, cert)
        _label_arcs(an)
    except _Bad as exc:
        return exc.violation
    return None


# ---------------------------------------------------------------------------
# Side partition
# ---------------------------------------------------------------------------

def side_partition(g: EmbeddedGraph, cert: CurveCertificate) -> SidePartition:
    """Split the graph into inside / on-curve / outside of the curve.

    Inside is the region to the left of the traversal.  Raises InvalidCurve
    for structural defects and InconsistentSides when no consistent
    two-sided assignment exists.
    """
    try:
        an = analyze_curve(g, cert)
    except InvalidCurve as exc:
        if "parity" in str(exc) or "inconsistent-sides" in str(exc):
            raise InconsistentSides(str(exc)) from None
        raise

    y_order = cert.vertex_order()
    y = set(y_order)
    crossed = set(cert.crossed_edges())
    along = set(norm_edge(*e) for e in cert.along_edges())

    side: dict[int, str] = {}
    conflicts: list[str] = []

    def seed(v: int, s: str) -> None:
        if v in y:
            return
        if v in side and side[v] != s:
            conflicts.append(f"vertex {v} seeded on both sides")
            return
        side[v] = s

    edge_label: dict[Edge, str] = {}
    for fid in an.arc_side:
        geo = an.geometry(fid)
        for d, pos in geo.edge_pos.items():
            e = norm_edge(*d)
            if e in along:
                continue
            if e in crossed:
                # the two halves of a crossed edge lie on opposite sides
                s_before = an.position_side(fid, (pos - 1) % geo.size)
                s_after = an.position_side(fid, (pos + 1) % geo.size)
                u, v = d
                if s_before is not None:
                    seed(u, s_before)
                if s_after is not None:
                    seed(v, s_after)
                continue
            s = an.position_side(fid, pos)
            if s is None:
                continue
            if e in edge_label and edge_label[e] != s:
                conflicts.append(f"edge {e} labeled on both sides")
            edge_label[e] = s
            for w in d:
                seed(w, s)

    if conflicts:
        raise InconsistentSides("; ".join(conflicts))

    # propagate through uncrossed edges avoiding curve vertices
    pending = [v for v in side]
    while pending:
        u = pending.pop()
        for v in g.rot[u]:
            if v in y:
                continue
            e = norm_edge(u, v)
            want = side[u]
            if e in crossed:
                want = "Z" if want == "X" else "X"
            if v in side:
                if side[v] != want:
                    raise InconsistentSides(
                        f"edge {e} connects both sides without a crossing")
            else:
                side[v] = want
                pending.append(v)

    # components the labeling never reached default to the outside
    for v in range(g.n):
        if v not in y and v not in side:
            side[v] = "Z"
            for u in g.rot[v]:
                if u not in y and u not in side:
                    side[u] = "Z"

    edge_class: dict[Edge, str] = {}
    for e in g.edges:
        u, v = e
        if e in along:
            edge_class[e] = "along"
        elif e in crossed:
            edge_class[e] = "crossed"
        elif u not in y:
            edge_class[e] = "inside" if side[u] == "X" else "outside"
        elif v not in y:
            edge_class[e] = "inside" if side[v] == "X" else "outside"
        else:  # pragma: no cover - forbidden by properness
            raise InvalidCurve(f"edge {e} joins curve vertices")

    return SidePartition(
        X=frozenset(v for v, s in side.items() if s == "X"),
        Y=y_order,
        Z=frozenset(v for v, s in side.items() if s == "Z"),
        edge_class=edge_class,
    )


# ---------------------------------------------------------------------------
# Open curves through face interiors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OpenCurve:
    """Curve fragment between two anchors (not included as items).

    passages has one more entry than items: passages[0] leads from the first
    anchor to items[0], passages[-1] from items[-1] to the second anchor.
    A pure along-edge fragment has items == (AlongItem,) and (None, None).
    """

    items: tuple[Item, ...]
    passages: tuple[int | None, ...]


Anchor = int | Edge  # vertex id, or an edge whose midpoint is the endpoint


def _anchor_faces(g: EmbeddedGraph, anchor: Anchor, allowed: set[int],
                  ) -> list[int]:
    if isinstance(anchor, tuple):
        u, v = anchor
        out = {g.face_of(u, v), g.face_of(v, u)}
    else:
        out = set(g.faces_at(anchor))
    return sorted(out & allowed)


def route_open_curve(g: EmbeddedGraph, a: Anchor, b: Anchor,
                     allowed_faces: Iterable[int],
                     crossable: Iterable[Edge]) -> OpenCurve:
    """Shortest proper open curve from anchor a to anchor b.

    BFS over the allowed faces, stepping only through crossable edges; the
    result crosses each edge at most once and no edge incident to a vertex
    anchor (those are excluded from crossable by the caller or here).
    """
    allowed = set(allowed_faces)
    ok_edges = set(crossable)
    for anchor in (a, b):
        if isinstance(anchor, int):
            for u in g.rot[anchor]:
                ok_edges.discard(norm_edge(anchor, u))
        else:
            ok_edges.discard(norm_edge(*anchor))

    sources = _anchor_faces(g, a, allowed)
    targets = set(_anchor_faces(g, b, allowed))
    if not sources or not targets:
        raise NotOnBoundary(f"anchors {a}, {b} do not reach the allowed faces")

    prev: dict[int, tuple[int, Edge] | None] = {f: None for f in sources}
    queue = list(sources)
    goal = None
    for f in sources:
        if f in targets:
            goal = f
            break
    qi = 0
    while goal is None and qi < len(queue):
        f = queue[qi]
        qi += 1
        for (u, v) in g.faces[f].walk:
            e = norm_edge(u, v)
            if e not in ok_edges:
                continue
            nf = g.face_of(v, u)
            if nf not in allowed or nf in prev:
                continue
            prev[nf] = (f, e)
            if nf in targets:
                goal = nf
                break
            queue.append(nf)

    if goal is None:
        raise NotOnBoundary(f"no proper route from {a} to {b}")

    faces = [goal]
    crossings: list[Edge] = []
    while prev[faces[-1]] is not None:
        f, e = prev[faces[-1]]
        crossings.append(e)
        faces.append(f)
    faces.reverse()
    crossings.reverse()
    return OpenCurve(items=tuple(CrossItem(e) for e in crossings),
                     passages=tuple(faces))


def interior_curve_between(nt: EmbeddedGraph, a: Anchor, b: Anchor,
                           ) -> OpenCurve:
    """Open proper curve between two outer-boundary points of a
    near-triangulation, running through its interior faces.

    If both anchors are vertices joined by an inner edge the curve is that
    edge itself.
    """
    outer = nt.faces[nt.outer_face]
    boundary_vertices = outer.vertex_set()
    boundary_edges = outer.edge_set()
    for f in nt.faces:
        if not f.is_outer and f.size != 3:
            raise NotTriangulation(f"inner face {f.id} has size {f.size}")

    if isinstance(a, int) and isinstance(b, int):
        e = norm_edge(a, b)
        if e in boundary_edges:
            raise OuterEdge(f"{e} is an outer edge")
        if nt.has_edge(a, b):
            # an inner edge is itself a proper curve between its endpoints,
            # whether or not they lie on the boundary
            return OpenCurve(items=(AlongItem(e),), passages=(None, None))

    for anchor in (a, b):
        if isinstance(anchor, int):
            if anchor not in boundary_vertices:
                raise NotOnBoundary(f"vertex {anchor} not on the outer face")
        else:
            if norm_edge(*anchor) not in boundary_edges:
                raise NotOnBoundary(f"edge {anchor} not on the outer face")

    allowed = {f.id for f in nt.faces if not f.is_outer}
    crossable = {e for e in nt.edges if e not in boundary_edges}
    return route_open_curve(nt, a, b, allowed, crossable)


# ---------------------------------------------------------------------------
# Caressed vertices and rerouting
# ---------------------------------------------------------------------------

def _cycle_crossings(g: EmbeddedGraph, dual_cycle: Sequence[int],
                     ) -> list[Edge]:
    """Primal edges crossed by a simple cycle of faces, in cycle order."""
    k = len(dual_cycle)
    if k < 3 or len(set(dual_cycle)) != k:
        raise NotACycle("dual cycle must be simple with at least 3 faces")
    out: list[Edge] = []
    for i, f in enumerate(dual_cycle):
        nf = dual_cycle[(i + 1) % k]
        if not 0 <= f < len(g.faces):
            raise NotACycle(f"face {f} not in graph")
        shared = sorted(g.faces[f].edge_set() & g.faces[nf].edge_set())
        if not shared:
            raise NotACycle(f"faces {f} and {nf} share no edge")
        out.append(shared[0])
    if len(set(out)) != len(out):
        raise NotACycle("cycle reuses a primal edge")
    return out


def dual_cycle_certificate(g: EmbeddedGraph, dual_cycle: Sequence[int],
                           ) -> CurveCertificate:
    """The proper-good curve tracing a simple cycle of faces."""
    crossings = _cycle_crossings(g, dual_cycle)
    k = len(dual_cycle)
    items = tuple(CrossItem(e) for e in crossings)
    passages = tuple(dual_cycle[(i + 1) % k] for i in range(k))
    return CurveCertificate(items, passages)


def caressed_vertices(g: EmbeddedGraph, dual_cycle: Sequence[int],
                      ) -> tuple[int, ...]:
    """Vertices whose crossed incident edges form one consecutive arc in
    their rotation (and at least one edge is crossed)."""
    crossed = set(_cycle_crossings(g, dual_cycle))
    out = []
    for v in range(g.n):
        nbrs = g.rot[v]
        d = len(nbrs)
        hits = [i for i, u in enumerate(nbrs) if norm_edge(v, u) in crossed]
        if not hits or len(hits) == d:
            if len(hits) == d and d > 0:
                out.append(v)
            continue
        # consecutive modulo d: exactly one gap in the sorted index list
        gaps = sum(1 for j in range(len(hits))
                   if (hits[(j + 1) % len(hits)] - hits[j]) % d != 1)
        if gaps <= 1:
            out.append(v)
    return tuple(out)


def reroute_caressed(g: EmbeddedGraph, dual_cycle: Sequence[int],
                     s: Iterable[int], ) -> CurveCertificate:
    """Pull the dual-cycle curve through each caressed vertex of S.

    S must be independent, caressed, and of size at least two; the result is
    a validated certificate whose vertex items are exactly S.
    """
    s = sorted(set(s))
    if len(s) < 2:
        raise TooFew("need at least two vertices to reroute through")
    sset = set(s)
    for u in s:
        for v in g.rot[u]:
            if v in sset:
                raise NotIndependent(f"{u} and {v} are adjacent")
    caressed = set(caressed_vertices(g, dual_cycle))
    for u in s:
        if u not in caressed:
            raise NotCaressed(f"vertex {u} is not caressed by the cycle")

    base = dual_cycle_certificate(g, dual_cycle)
    items = list(base.items)
    passages = list(base.passages)
    owner = []
    for it in items:
        u, v = it.edge
        owner.append(u if u in sset else (v if v in sset else None))

    # rotate so position 0 starts a run boundary
    m = len(items)
    start = next((i for i in range(m) if owner[i] != owner[i - 1]), 0)
    items = items[start:] + items[:start]
    passages = passages[start:] + passages[:start]
    owner = owner[start:] + owner[:start]

    new_items: list[Item] = []
    new_passages: list[int | None] = []
    i = 0
    while i < m:
        if owner[i] is None:
            new_items.append(items[i])
            new_passages.append(passages[i])
            i += 1
            continue
        v = owner[i]
        j = i
        while j < m and owner[j] == v:
            j += 1
        new_items.append(VertexItem(v))
        new_passages.append(passages[j - 1])
        i = j

    cert = CurveCertificate(tuple(new_items), tuple(new_passages))
    violation = validate_curve(g, cert)
    if violation is not None:  # pragma: no cover - construction is sound
        raise InvalidCurve(f"reroute produced an invalid curve: {violation}")
    return cert
