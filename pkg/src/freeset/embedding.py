"""Embedded planar graphs given as rotation systems.

A graph is described purely combinatorially: for every vertex a
counter-clockwise cyclic order of its neighbors.  Faces are traced with the
face-on-the-left rule (the successor of the directed edge (u, v) is
(v, w) where w precedes u in the rotation at v), and the Euler identity
V - E + F = 2 certifies that the rotation system describes a sphere
embedding.  All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DisconnectedResult,
    MultiEdgeOrLoop,
    NonPlanarRotation,
    NotACycle,
    TooSmall,
    UnknownElement,
)

Edge = tuple[int, int]          # normalized: (min, max)
DirectedEdge = tuple[int, int]  # (tail, head)


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """One face of an embedding: a closed walk of directed edges."""

    id: int
    walk: tuple[DirectedEdge, ...]
    is_outer: bool

    @property
    def size(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.walk)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(u for u, _ in self.walk)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(norm_edge(u, v) for u, v in self.walk)


@dataclass(frozen=True)
class GraphMapping:
    """Element correspondences between a graph and a derived graph.

    The exact meaning of the keys depends on the operation that produced the
    mapping (documented there); forward o backward is the identity on
    surviving elements.
    """

    vertex_forward: dict
    vertex_backward: dict
    edge_forward: dict
    edge_backward: dict
    new_edges: tuple = ()


def _cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = list(a) + list(a)
    bl = list(b)
    return any(doubled[i:i + len(bl)] == bl for i in range(len(a)))


def _trace_faces(rot: Sequence[Sequence[int]]) -> list[list[DirectedEdge]]:
    """Return the face walks of a rotation system (face-on-the-left rule)."""
    index = [{u: i for i, u in enumerate(nbrs)} for nbrs in rot]
    seen: set[DirectedEdge] = set()
    walks: list[list[DirectedEdge]] = []
    for v0 in range(len(rot)):
        for u0 in rot[v0]:
            if (v0, u0) in seen:
                continue
            walk = []
            u, v = v0, u0
            while (u, v) not in seen:
                seen.add((u, v))
                walk.append((u, v))
                nbrs = rot[v]
                w = nbrs[index[v][u] - 1]
                u, v = v, w
            walks.append(walk)
    return walks


class EmbeddedGraph:
    """A simple connected planar graph with a fixed combinatorial embedding.

    Construct through :func:`build_embedded`, which validates the rotation
    system; the constructor itself trusts its inputs.
    """

    __slots__ = ("n", "rot", "faces", "outer_face", "_edges", "_face_of",
                 "_rot_index", "_hash")

    def __init__(self, rot: tuple[tuple[int, ...], ...],
                 faces: tuple[Face, ...], outer_face: int):
        self.n = len(rot)
        self.rot = rot
        self.faces = faces
        self.outer_face = outer_face
        self._edges = frozenset(
            norm_edge(u, v) for v in range(self.n) for u in rot[v])
        self._rot_index = tuple(
            {u: i for i, u in enumerate(nbrs)} for nbrs in rot)
        face_of: dict[DirectedEdge, int] = {}
        for f in faces:
            for d in f.walk:
                face_of[d] = f.id
        self._face_of = face_of
        self._hash = None

    # -- basic accessors ----------------------------------------------------

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rot[v]

    def rot_index(self, v: int, u: int) -> int:
        return self._rot_index[v][u]

    def face_of(self, u: int, v: int) -> int:
        """Id of the face on the left of the directed edge (u, v)."""
        return self._face_of[(u, v)]

    def face(self, fid: int) -> Face:
        return self.faces[fid]

    def corner_face(self, v: int, j: int) -> int:
        """Face in the angular sector from rot[v][j-1] ccw to rot[v][j]."""
        return self._face_of[(self.rot[v][j], v)]

    def faces_at(self, v: int) -> tuple[int, ...]:
        """Faces around v, one per corner, in rotation order."""
        return tuple(self.corner_face(v, j) for j in range(len(self.rot[v])))

    def is_triangulation(self) -> bool:
        return self.n >= 3 and all(f.size == 3 for f in self.faces)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, EmbeddedGraph)
                and self.rot == other.rot
                and self.outer_face == other.outer_face)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rot, self.outer_face))
        return self._hash

    def __repr__(self) -> str:
        return (f"EmbeddedGraph(n={self.n}, m={len(self._edges)}, "
                f"f={len(self.faces)})")


def build_embedded(vertex_count: int,
                   rotations: Sequence[Sequence[int]],
                   outer_face_hint: Iterable[int] | None = None,
                   ) -> EmbeddedGraph:
    """Validate a rotation system and derive its faces.

    The outer face is the face whose vertex set equals the hint; without a
    hint the largest face is chosen, ties broken by smallest face id.

    Raises MultiEdgeOrLoop, Disconnected or NonPlanarRotation when the input
    is not a simple connected genus-0 rotation system.
    """
    n = vertex_count
    if n <= 0:
        raise TooSmall("graph must have at least one vertex")
    if len(rotations) != n:
        raise UnknownElement(f"expected {n} rotation lines, got {len(rotations)}")
    rot = tuple(tuple(r) for r in rotations)
    for v, nbrs in enumerate(rot):
        for u in nbrs:
            if not 0 <= u < n:
                raise UnknownElement(f"vertex {u} out of range in rotation of {v}")
            if u == v:
                raise MultiEdgeOrLoop(f"loop at vertex {v}")
        if len(set(nbrs)) != len(nbrs):
            raise MultiEdgeOrLoop(f"repeated neighbor in rotation of {v}")
    for v, nbrs in enumerate(rot):
        for u in nbrs:
            if v not in rot[u]:
                raise UnknownElement(f"edge {v}-{u} missing from rotation of {u}")

    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in rot[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != n:
        raise Disconnected(f"{n - len(seen)} vertices unreachable from 0")

    walks = _trace_faces(rot)
    m = sum(len(r) for r in rot) // 2
    f = len(walks) if m > 0 else 1
    if n - m + f != 2:
        raise NonPlanarRotation(
            f"V-E+F = {n}-{m}+{f} = {n - m + f}, expected 2")

    if m == 0:
        faces = (Face(0, (), True),)
        return EmbeddedGraph(rot, faces, 0)

    outer = None
    if outer_face_hint is not None:
        hint = list(outer_face_hint)
        # prefer an exact cyclic match of the boundary walk, fall back to a
        # vertex-set match (the text format only records the walk)
        for i, w in enumerate(walks):
            tails = [u for u, _ in w]
            if len(tails) == len(hint) and _cyclic_equal(tails, hint):
                outer = i
                break
        if outer is None:
            hset = frozenset(hint)
            for i, w in enumerate(walks):
                if frozenset(u for u, _ in w) == hset:
                    outer = i
                    break
        if outer is None:
            raise UnknownElement(f"no face matches outer hint {hint}")
    else:
        outer = max(range(len(walks)), key=lambda i: (len(walks[i]), -i))

    faces = tuple(Face(i, tuple(w), i == outer) for i, w in enumerate(walks))
    return EmbeddedGraph(rot, faces, outer)


def _rebuild(rot: Sequence[Sequence[int]], outer_marker: DirectedEdge,
             ) -> EmbeddedGraph:
    """Build a graph whose outer face is the one containing a marker edge."""
    walks = _trace_faces(rot)
    outer = next(i for i, w in enumerate(walks) if outer_marker in w)
    g = build_embedded(len(rot), rot,
                       outer_face_hint=(u for u, _ in walks[outer]))
    # vertex-set hints can be ambiguous; re-pin by the marker edge
    if outer_marker not in g.faces[g.outer_face].walk:
        faces = tuple(Face(f.id, f.walk, f.id == outer) for f in g.faces)
        return EmbeddedGraph(g.rot, faces, outer)
    return g


def embed_from_faces(vertex_count: int,
                     oriented_faces: Sequence[Sequence[int]],
                     outer: Sequence[int] | None = None) -> EmbeddedGraph:
    """Build an embedding from a consistently oriented face list.

    Every directed edge must appear exactly once across all face walks; the
    rotation at each vertex is recovered by chaining the face corners.
    """
    succ: list[dict[int, int]] = [dict() for _ in range(vertex_count)]
    for face in oriented_faces:
        k = len(face)
        for i, v in enumerate(face):
            x, y = face[i - 1], face[(i + 1) % k]
            # walk fragment x -> v -> y puts y immediately before x at v,
            # so x is the ccw successor of y
            if y in succ[v]:
                raise MultiEdgeOrLoop(
                    f"directed edge ({v},{y}) appears on two faces")
            succ[v][y] = x
    rot = []
    for v in range(vertex_count):
        if not succ[v]:
            raise Disconnected(f"vertex {v} on no face")
        start = next(iter(succ[v]))
        order = [start]
        while True:
            nxt = succ[v][order[-1]]
            if nxt == start:
                break
            order.append(nxt)
            if len(order) > len(succ[v]):
                raise NonPlanarRotation(f"corners at vertex {v} do not chain")
        if len(order) != len(succ[v]):
            raise NonPlanarRotation(f"corners at vertex {v} do not chain")
        rot.append(order)
    return build_embedded(vertex_count, rot, outer_face_hint=outer)


# ---------------------------------------------------------------------------
# Dual graphs
# ---------------------------------------------------------------------------

def dual_graph(g: EmbeddedGraph, weak: bool = False,
               ) -> tuple[EmbeddedGraph, GraphMapping]:
    """Dual (or weak dual) of an embedding: one vertex per face, one edge per
    pair of faces sharing a primal edge.

    The construction requires the dual to be simple once the outer face is
    dropped in weak mode: a bridge (same face on both sides) or two faces
    sharing more than one edge raise MultiEdgeOrLoop.  Mapping semantics:
    vertex_forward maps primal face ids to dual vertex ids, edge_forward maps
    primal edges to dual edges.
    """
    keep = [f.id for f in g.faces if not (weak and f.is_outer)]
    if not keep:
        raise TooSmall("weak dual of a graph with a single face is empty")
    relabel = {fid: i for i, fid in enumerate(keep)}
    kept = set(keep)

    rot_dual: list[list[int]] = [[] for _ in keep]
    edge_fwd: dict[Edge, Edge] = {}
    for fid in keep:
        for (u, v) in g.faces[fid].walk:
            other = g.face_of(v, u)
            if other == fid:
                raise MultiEdgeOrLoop(
                    f"edge {norm_edge(u, v)} has face {fid} on both sides")
            if other not in kept:
                continue
            rot_dual[relabel[fid]].append(relabel[other])
            e = norm_edge(u, v)
            d = norm_edge(relabel[fid], relabel[other])
            if e in edge_fwd and edge_fwd[e] != d:
                raise MultiEdgeOrLoop("inconsistent dual adjacency")
            edge_fwd[e] = d
    for fid in keep:
        nbrs = rot_dual[relabel[fid]]
        if len(set(nbrs)) != len(nbrs):
            raise MultiEdgeOrLoop(
                f"faces adjacent to face {fid} share more than one edge")

    dual = build_embedded(len(keep), rot_dual)
    mapping = GraphMapping(
        vertex_forward={fid: relabel[fid] for fid in keep},
        vertex_backward={relabel[fid]: fid for fid in keep},
        edge_forward=edge_fwd,
        edge_backward={d: e for e, d in edge_fwd.items()},
    )
    return dual, mapping


# ---------------------------------------------------------------------------
# Triangulation
# ---------------------------------------------------------------------------

def _chord_positions(walk_vertices: list[int], edges: frozenset[Edge],
                     pending: set[Edge]) -> tuple[int, int] | None:
    """Pick two walk positions to join by a new edge inside the face.

    Ear positions (distance two along the walk) are preferred; any valid
    pair is accepted otherwise.  A pair is valid when the vertices differ,
    are not consecutive on the walk, and the edge does not exist yet.
    """
    k = len(walk_vertices)

    def valid(i: int, j: int) -> bool:
        a, b = walk_vertices[i], walk_vertices[j]
        if a == b:
            return False
        e = norm_edge(a, b)
        return e not in edges and e not in pending

    for i in range(k):
        j = (i + 2) % k
        if k > 3 and valid(i, j):
            return (i, j) if i < j else (j, i)
    for i in range(k):
        for j in range(i + 2, k):
            if (i, j) == (0, k - 1):
                continue
            if valid(i, j):
                return (i, j)
    return None


def triangulate(g: EmbeddedGraph, skip_vertices: Iterable[int] = (),
                ) -> tuple[EmbeddedGraph, GraphMapping]:
    """Add edges until every face (the outer one included) is a triangle.

    Output has exactly 3V-6 edges and stays simple.  The mapping is the
    identity on vertices and original edges; added edges are listed in
    ``new_edges`` in insertion order.  Faces touching a skip vertex are
    left alone (used to triangulate everything except designated regions).
    """
    if g.n < 3:
        raise TooSmall("triangulation needs at least 3 vertices")
    skip = set(skip_vertices)
    rot = [list(r) for r in g.rot]
    outer_marker = g.faces[g.outer_face].walk[0]
    added: list[Edge] = []
    edges = set(g.edges)

    while True:
        walks = _trace_faces(rot)
        target = None
        for w in walks:
            if len(w) > 3 and not (skip and skip & {u for u, _ in w}):
                target = w
                break
        if target is None:
            break
        verts = [u for u, _ in target]
        pos = _chord_positions(verts, frozenset(edges), set())
        if pos is None:
            raise MultiEdgeOrLoop("face cannot be split without a parallel edge")
        i, j = pos
        a, b = verts[i], verts[j]
        # insert each endpoint into the other's rotation inside this face:
        # at position i the face corner lies between verts[i+1] and
        # verts[i-1], so the chord goes right before verts[i-1].
        rot[a].insert(rot[a].index(verts[i - 1]), b)
        rot[b].insert(rot[b].index(verts[j - 1]), a)
        edges.add(norm_edge(a, b))
        added.append(norm_edge(a, b))

    result = _rebuild(rot, outer_marker)
    mapping = GraphMapping(
        vertex_forward={v: v for v in range(g.n)},
        vertex_backward={v: v for v in range(g.n)},
        edge_forward={e: e for e in g.edges},
        edge_backward={e: e for e in g.edges},
        new_edges=tuple(added),
    )
    return result, mapping


# ---------------------------------------------------------------------------
# Subdivision and induced subgraphs
# ---------------------------------------------------------------------------

def subdivide(g: EmbeddedGraph, edge_list: Sequence[Edge],
              ) -> tuple[EmbeddedGraph, GraphMapping]:
    """Insert one degree-2 vertex in each listed edge, preserving rotations.

    New vertices get ids n, n+1, ... in the order of ``edge_list``.  The
    mapping sends each subdivided edge to its two halves (edge_forward) and
    each half back to the original edge.
    """
    todo = []
    seen: set[Edge] = set()
    for u, v in edge_list:
        e = norm_edge(u, v)
        if e not in g.edges:
            raise UnknownElement(f"edge {e} not in graph")
        if e in seen:
            raise UnknownElement(f"edge {e} listed twice")
        seen.add(e)
        todo.append(e)

    rot = [list(r) for r in g.rot]
    edge_fwd: dict[Edge, tuple[Edge, Edge] | Edge] = {
        e: e for e in g.edges if e not in seen}
    edge_bwd: dict[Edge, Edge] = {e: e for e in g.edges if e not in seen}
    mid = g.n
    for (u, v) in todo:
        rot[u][rot[u].index(v)] = mid
        rot[v][rot[v].index(u)] = mid
        rot.append([u, v])
        h1, h2 = norm_edge(u, mid), norm_edge(v, mid)
        edge_fwd[(u, v)] = (h1, h2)
        edge_bwd[h1] = (u, v)
        edge_bwd[h2] = (u, v)
        mid += 1

    outer_walk = g.faces[g.outer_face].walk
    u0, v0 = outer_walk[0]
    marker = (u0, v0)
    if norm_edge(u0, v0) in seen:
        marker = (u0, g.n + todo.index(norm_edge(u0, v0)))
    result = _rebuild(rot, marker)
    mapping = GraphMapping(
        vertex_forward={v: v for v in range(g.n)},
        vertex_backward={v: v for v in range(g.n)},
        edge_forward=edge_fwd,
        edge_backward=edge_bwd,
    )
    return result, mapping


def midpoint_of(mapping: GraphMapping, e: Edge) -> int:
    """Subdivision vertex of an edge split by :func:`subdivide`."""
    halves = mapping.edge_forward[e]
    if not (isinstance(halves, tuple) and isinstance(halves[0], tuple)):
        raise UnknownElement(f"edge {e} was not subdivided")
    return halves[0][1]


def induce(g: EmbeddedGraph, vertices: Iterable[int],
           outer_face_hint: Iterable[int] | None = None,
           ) -> tuple[EmbeddedGraph, GraphMapping]:
    """Induced subgraph on a vertex set, inheriting the cyclic orders.

    Vertices are relabelled densely in increasing order of their original
    ids.  The result must be connected.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise UnknownElement(f"vertex {v} not in graph")
    relabel = {v: i for i, v in enumerate(keep)}
    kept = set(keep)
    rot = [[relabel[u] for u in g.rot[v] if u in kept] for v in keep]
    hint = None
    if outer_face_hint is not None:
        hint = [relabel[v] for v in outer_face_hint]
    try:
        result = build_embedded(len(keep), rot, outer_face_hint=hint)
    except Disconnected as exc:
        raise DisconnectedResult(str(exc)) from exc
    mapping = GraphMapping(
        vertex_forward=dict(relabel),
        vertex_backward={i: v for v, i in relabel.items()},
        edge_forward={norm_edge(u, v): norm_edge(relabel[u], relabel[v])
                      for (u, v) in g.edges if u in kept and v in kept},
        edge_backward={norm_edge(relabel[u], relabel[v]): norm_edge(u, v)
                       for (u, v) in g.edges if u in kept and v in kept},
    )
    return result, mapping


# ---------------------------------------------------------------------------
# Sides of an embedded cycle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleSides:
    """Partition of a graph relative to a directed embedded cycle.

    ``left``/``right`` hold the non-cycle vertices on each side of the
    traversal; ``edge_side`` maps every non-cycle edge to "left" or "right";
    ``faces_left``/``faces_right`` partition the face ids.
    """

    cycle: tuple[int, ...]
    left: frozenset[int]
    right: frozenset[int]
    edge_side: dict
    faces_left: frozenset[int]
    faces_right: frozenset[int]


def cycle_sides(g: EmbeddedGraph, cycle: Sequence[int]) -> CycleSides:
    """Classify vertices, edges and faces as left or right of a cycle.

    The cycle is given as a vertex sequence (closed implicitly); consecutive
    vertices must be adjacent and all cycle vertices distinct.
    """
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise NotACycle(f"{cycle} is not a simple cycle")
    on_cycle = {v: i for i, v in enumerate(cycle)}
    cyc_edges = set()
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % k]
        if not g.has_edge(v, w):
            raise NotACycle(f"{v}-{w} is not an edge")
        cyc_edges.add(norm_edge(v, w))

    # stub sides: at x_i, neighbors strictly ccw between next and prev are left
    stub_side: dict[DirectedEdge, str] = {}
    for i, v in enumerate(cycle):
        prev, nxt = cycle[i - 1], cycle[(i + 1) % k]
        nbrs = g.rot[v]
        d = len(nbrs)
        j = g.rot_index(v, nxt)
        side = "left"
        for step in range(1, d):
            u = nbrs[(j + step) % d]
            if u == prev:
                side = "right"
                continue
            stub_side[(v, u)] = side

    # flood vertex sides through non-cycle edges
    vert_side: dict[int, str] = {}
    for (v, u), side in stub_side.items():
        if u in on_cycle:
            continue
        if u in vert_side:
            if vert_side[u] != side:
                raise NotACycle(f"vertex {u} lies on both sides of the cycle")
            continue
        vert_side[u] = side
        stack = [u]
        while stack:
            w = stack.pop()
            for z in g.rot[w]:
                if z in on_cycle or z in vert_side:
                    if z in vert_side and vert_side[z] != side:
                        raise NotACycle(
                            f"vertex {z} lies on both sides of the cycle")
                    continue
                vert_side[z] = side
                stack.append(z)

    edge_side: dict[Edge, str] = {}
    for (u, v) in g.edges:
        e = norm_edge(u, v)
        if e in cyc_edges:
            continue
        if u in on_cycle and v in on_cycle:
            s1, s2 = stub_side[(u, v)], stub_side[(v, u)]
            if s1 != s2:
                raise NotACycle(f"chord {e} crosses the cycle")
            edge_side[e] = s1
        elif u in on_cycle:
            edge_side[e] = vert_side[v]
        elif v in on_cycle:
            edge_side[e] = vert_side[u]
        else:
            edge_side[e] = vert_side[u]

    # flood face sides in the dual, blocked at cycle edges
    face_side: dict[int, str] = {}
    stack2: list[tuple[int, str]] = []
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % k]
        stack2.append((g.face_of(v, w), "left"))
        stack2.append((g.face_of(w, v), "right"))
    while stack2:
        fid, side = stack2.pop()
        if fid in face_side:
            if face_side[fid] != side:
                raise NotACycle("face reachable from both sides of the cycle")
            continue
        face_side[fid] = side
        for (u, v) in g.faces[fid].walk:
            if norm_edge(u, v) in cyc_edges:
                continue
            stack2.append((g.face_of(v, u), side))

    return CycleSides(
        cycle=tuple(cycle),
        left=frozenset(v for v, s in vert_side.items() if s == "left"),
        right=frozenset(v for v, s in vert_side.items() if s == "right"),
        edge_side=edge_side,
        faces_left=frozenset(f for f, s in face_side.items() if s == "left"),
        faces_right=frozenset(f for f, s in face_side.items() if s == "right"),
    )
