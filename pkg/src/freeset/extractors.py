"""Free-set extractors.

Each extractor returns an OrderedFreeSet: an ordered vertex list together
with a validated curve certificate witnessing it, the extractor name, and
the size bound actually met.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .canonical import (
    CanonicalStructure,
    antichain_bound,
    canonical_order,
    chain_or_antichain,
)
from .curves import (
    AlongItem,
    CrossItem,
    CurveCertificate,
    OpenCurve,
    VertexItem,
    caressed_vertices,
    reroute_caressed,
    route_open_curve,
    validate_curve,
)
from .embedding import (
    EmbeddedGraph,
    GraphMapping,
    build_embedded,
    cycle_sides,
    norm_edge,
    subdivide,
    triangulate,
)
from .errors import (
    AntichainTooShort,
    BadLevelAssignment,
    ChainTooShort,
    InvalidCurve,
    NoIndependentPair,
    NotMaximalOuterplane,
    NotSpanningTree,
    TooSmall,
)


@dataclass(frozen=True)
class OrderedFreeSet:
    """An ordered free set with its witnessing certificate.

    The certificate may pass through more vertices than the set itself; the
    set is always a subsequence of the certificate's vertex items.
    """

    graph: EmbeddedGraph
    order: tuple[int, ...]
    certificate: CurveCertificate
    provenance: str
    bound_met: str

    def __post_init__(self):
        items = self.certificate.vertex_order()
        it = iter(items)
        if not all(v in it for v in self.order):
            raise InvalidCurve(
                "free set is not a subsequence of the curve's vertex items")

    def size(self) -> int:
        return len(self.order)

    def restricted(self, keep) -> "OrderedFreeSet":
        """Subsequence of the set (any subsequence stays free)."""
        keep = set(keep)
        return OrderedFreeSet(
            graph=self.graph,
            order=tuple(v for v in self.order if v in keep),
            certificate=self.certificate,
            provenance=self.provenance,
            bound_met="restriction: no bound asserted",
        )

    def reversed(self) -> "OrderedFreeSet":
        return OrderedFreeSet(
            graph=self.graph,
            order=tuple(reversed(self.order)),
            certificate=self.certificate.reversed(),
            provenance=self.provenance,
            bound_met=self.bound_met,
        )


def _checked(g: EmbeddedGraph, cert: CurveCertificate) -> CurveCertificate:
    violation = validate_curve(g, cert)
    if violation is not None:  # pragma: no cover - constructions are sound
        raise InvalidCurve(f"extractor produced an invalid curve: {violation}")
    return cert


def _rotate_to_vertex_start(cert: CurveCertificate) -> CurveCertificate:
    """Start the item list at a vertex item that follows a face passage,
    preferring the smallest vertex id (deterministic base point)."""
    m = len(cert.items)
    best = None
    for i, it in enumerate(cert.items):
        if isinstance(it, VertexItem) and cert.passages[i - 1] is not None:
            if best is None or it.v < cert.items[best].v:
                best = i
    if best is None or best == 0:
        return cert
    return cert.rotated(best)


# ---------------------------------------------------------------------------
# Collar curves around an embedded cycle
# ---------------------------------------------------------------------------

def _collar_certificate(g: EmbeddedGraph, cycle: list[int], s: set[int],
                        ) -> CurveCertificate:
    """Closed curve tracing a cycle from its outer side.

    The curve passes through the cycle vertices in S, runs along cycle edges
    joining consecutive S-members, and crosses the outward edges of the
    other cycle vertices.  The outer side is the one containing the graph's
    outer face; all chords of the cycle must lie on the inner side.
    """
    cs = cycle_sides(g, cycle)
    if g.outer_face in cs.faces_left:
        out_faces, out_label = cs.faces_left, "left"
    else:
        out_faces, out_label = cs.faces_right, "right"
    k = len(cycle)
    in_s = [cycle[i] in s for i in range(k)]

    def vertex_plan(i: int):
        """(crossed stub midpoints-in-order, passage faces) at position i."""
        u = cycle[i]
        prev_v, next_v = cycle[i - 1], cycle[(i + 1) % k]
        rot = g.rot[u]
        d = len(rot)
        ip, inx = g.rot_index(u, prev_v), g.rot_index(u, next_v)
        for sign in (1, -1):
            stubs = []
            idx = ip
            ok = True
            while True:
                idx = (idx + sign) % d
                if idx == inx:
                    break
                w = rot[idx]
                e = norm_edge(u, w)
                if cs.edge_side.get(e) != out_label:
                    ok = False
                    break
                stubs.append((idx, w))
            if not ok:
                continue
            faces = []
            for idx, _ in stubs:
                faces.append(g.corner_face(u, idx if sign == 1 else
                                           (idx + 1) % d))
            exit_face = g.corner_face(u, inx if sign == 1 else (inx + 1) % d)
            if all(f in out_faces for f in faces) and exit_face in out_faces:
                return stubs, faces, exit_face
        raise InvalidCurve(  # pragma: no cover - cycle chords must be inner
            f"no outward corridor around cycle vertex {u}")

    # two sweeps: the first fills in the pending face, the second records
    items: list = []
    passages: list[int | None] = []
    pending: int | None = None
    for lap in range(2):
        for i in range(k):
            u = cycle[i]
            nxt_s = in_s[(i + 1) % k]
            stubs, faces, exit_face = vertex_plan(i)
            if in_s[i]:
                if lap == 1:
                    items.append(VertexItem(u))
                    passages.append(pending)
                if nxt_s:
                    if lap == 1:
                        items.append(AlongItem(norm_edge(u, cycle[(i + 1) % k])))
                        passages.append(None)
                    pending = None
                else:
                    pending = exit_face
            else:
                # each crossing enters through its own sector face, which is
                # also the face the previous step left the curve in
                for (idx, w), face_before in zip(stubs, faces):
                    if lap == 1:
                        items.append(CrossItem(norm_edge(u, w)))
                        passages.append(face_before)
                pending = exit_face
        if lap == 1:
            break

    # passages[j] currently holds the face before item j; shift to "after"
    shifted = tuple(passages[1:] + passages[:1])
    cert = CurveCertificate(tuple(items), shifted)
    return _rotate_to_vertex_start(cert)


# ---------------------------------------------------------------------------
# Outerplanar greedy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OuterplanarResult:
    free_set: OrderedFreeSet
    n0: int
    n1: int
    n2: int


def _independent_greedy_on_chords(n: int, chords: set[tuple[int, int]],
                                  ) -> tuple[list[int], dict]:
    """Greedy independent set in the chord graph: repeatedly take the
    minimum-degree vertex (ties by id) and delete it with its neighbors."""
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in chords:
        adj[u].add(v)
        adj[v].add(u)
    alive = set(range(n))
    counts = {0: 0, 1: 0, 2: 0}
    chosen = []
    while alive:
        v = min(alive, key=lambda u: (len(adj[u] & alive), u))
        deg = len(adj[v] & alive)
        counts[min(deg, 2)] += 1
        if deg > 2:  # pragma: no cover - impossible in outerplane chord graphs
            raise NotMaximalOuterplane("chord degree exceeded 2 in the greedy")
        chosen.append(v)
        alive -= {v} | adj[v]
    return chosen, counts


def _fill_polygon_chords(k: int, chords: set[tuple[int, int]],
                         ) -> set[tuple[int, int]]:
    """Complete a set of non-crossing polygon chords to a triangulation of
    the k-gon (ear insertion, deterministic)."""
    adj: list[set[int]] = [set() for _ in range(k)]
    for i in range(k):
        adj[i].add((i + 1) % k)
        adj[(i + 1) % k].add(i)
    for u, v in chords:
        adj[u].add(v)
        adj[v].add(u)
    rot = [sorted(adj[v], key=lambda u: (u - v) % k) for v in range(k)]
    g = build_embedded(k, rot, outer_face_hint=range(k))
    filled = set(chords)
    while True:
        target = None
        for f in g.faces:
            if not f.is_outer and f.size > 3:
                target = f
                break
        if target is None:
            break
        verts = [u for u, _ in target.walk]
        a, b = verts[0], verts[2]
        filled.add(norm_edge(a, b))
        adj[a].add(b)
        adj[b].add(a)
        rot = [sorted(adj[v], key=lambda u: (u - v) % k) for v in range(k)]
        g = build_embedded(k, rot, outer_face_hint=range(k))
    return filled


def outerplanar_greedy(og: EmbeddedGraph) -> OuterplanarResult:
    """Free set of size at least n/2 + 1 in an edge-maximal outerplane graph.

    The curve stays in the closed outer face: it passes through the chosen
    vertices and runs along the boundary edges between consecutive ones.
    """
    n = og.n
    if n < 4:
        raise TooSmall("outerplanar extraction needs n >= 4")
    outer = og.faces[og.outer_face]
    boundary = [u for u, _ in outer.walk]
    if len(set(boundary)) != n or outer.size != n:
        raise NotMaximalOuterplane("outer face must visit every vertex once")
    if len(og.edges) != 2 * n - 3 or \
            any(f.size != 3 for f in og.faces if not f.is_outer):
        raise NotMaximalOuterplane("inner faces must triangulate the polygon")

    pos = {v: i for i, v in enumerate(boundary)}
    boundary_edges = outer.edge_set()
    chords = {(pos[u], pos[v]) for (u, v) in og.edges
              if norm_edge(u, v) not in boundary_edges}
    chords = {norm_edge(a, b) for a, b in chords}
    chosen_pos, counts = _independent_greedy_on_chords(n, chords)
    s = {boundary[i] for i in chosen_pos}
    assert 2 * len(s) >= n + 2

    cert = _checked(og, _collar_certificate(og, boundary, s))
    order = tuple(v for v in cert.vertex_order() if v in s)
    ofs = OrderedFreeSet(
        graph=og,
        order=order,
        certificate=cert,
        provenance="outerplanar-greedy",
        bound_met=f"|S|={len(s)} >= n/2+1={n // 2 + 1}",
    )
    return OuterplanarResult(ofs, counts[0], counts[1], counts[2])


# ---------------------------------------------------------------------------
# Chain and antichain extraction in triangulations
# ---------------------------------------------------------------------------

def chain_freeset(t: EmbeddedGraph, cs: CanonicalStructure,
                  chain: tuple[int, ...]) -> OrderedFreeSet:
    """Free set from a source-to-sink frame path: the path plus the base
    edge is a cycle whose chords are all interior, so the outerplanar
    greedy applies to the cycle."""
    k = len(chain)
    if k < 3:
        raise ChainTooShort("frame path needs at least 3 vertices")
    if chain[0] != cs.v1 or chain[-1] != cs.v2:
        raise ChainTooShort("chain must run from the source to the sink")
    cycle = list(chain)

    if k == 3:
        s = {chain[0], chain[-1]}
        counts = None
    else:
        pos = {v: i for i, v in enumerate(cycle)}
        cyc_edges = {norm_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
        chords = set()
        for i, u in enumerate(cycle):
            for w in t.rot[u]:
                if w in pos and norm_edge(u, w) not in cyc_edges:
                    chords.add(norm_edge(pos[u], pos[w]))
        filled = _fill_polygon_chords(k, chords)
        chosen_pos, _ = _independent_greedy_on_chords(k, filled)
        s = {cycle[i] for i in chosen_pos}

    cert = _checked(t, _collar_certificate(t, cycle, s))
    order = tuple(v for v in cert.vertex_order() if v in s)
    return OrderedFreeSet(
        graph=t,
        order=order,
        certificate=cert,
        provenance="chain",
        bound_met=f"|S|={len(s)} >= k/2+1 over a {k}-cycle" if k > 3
        else "|S|=2 (short chain floor)",
    )


def antichain_freeset(t: EmbeddedGraph, cs: CanonicalStructure,
                      antichain: tuple[int, ...]) -> OrderedFreeSet:
    """Free set from a maximal frame antichain: the curve threads the
    nested prefix boundaries, entering through the base edge and returning
    through the outer face."""
    k = len(antichain)
    if k < 2:
        raise AntichainTooShort("antichain needs at least 2 vertices")
    pos = {v: i for i, v in enumerate(cs.order)}
    ys = sorted(antichain, key=lambda v: pos[v])
    if ys[-1] != cs.vn:
        raise AntichainTooShort("maximal antichains must end at the apex")

    outer_fid = t.outer_face
    base_edge = norm_edge(cs.v1, cs.v2)

    def inside(cycle: list[int]):
        sides = cycle_sides(t, cycle)
        if outer_fid in sides.faces_left:
            return (sides.right, sides.faces_right,
                    {e for e, sd in sides.edge_side.items() if sd == "right"})
        return (sides.left, sides.faces_left,
                {e for e, sd in sides.edge_side.items() if sd == "left"})

    items: list = []
    passages: list[int | None] = []

    def extend(fragment: OpenCurve, end_vertex: int | None) -> None:
        frag_items = list(fragment.items)
        frag_pass = list(fragment.passages)
        for it, p in zip(frag_items, frag_pass[:-1]):
            passages.append(p)
            items.append(it)
        passages.append(frag_pass[-1])
        if end_vertex is not None:
            items.append(VertexItem(end_vertex))

    # opening crossing of the base edge
    items.append(CrossItem(base_edge))

    prev_cycle = None
    prev_inside = None
    for j, y in enumerate(ys):
        cyc = list(cs.boundary_after[pos[y] + 1])
        _, faces_in, edges_in = inside(cyc)
        if j == 0:
            # route from the base-edge midpoint to y_1 inside the first cycle
            frag = route_open_curve(t, base_edge, y, faces_in, edges_in)
            extend(frag, y)
        else:
            # crescent between the previous cycle and this one
            crescent_faces = faces_in - prev_inside[0]
            crescent_edges = (edges_in - prev_inside[1]) - \
                {norm_edge(u, v) for u, v in zip(prev_cycle,
                                                 prev_cycle[1:] + prev_cycle[:1])}
            prev_y = ys[j - 1]
            e = norm_edge(prev_y, y)
            if t.has_edge(prev_y, y) and e in crescent_edges:
                passages.append(None)
                items.append(AlongItem(e))
                passages.append(None)
                items.append(VertexItem(y))
            else:
                frag = route_open_curve(t, prev_y, y, crescent_faces,
                                        crescent_edges)
                extend(frag, y)
        prev_cycle = cyc
        prev_inside = (faces_in, edges_in)

    # return from the apex to the base point through the outer face
    passages.append(outer_fid)
    cert = CurveCertificate(tuple(items), tuple(passages))
    cert = _checked(t, _rotate_to_vertex_start(cert))
    order = tuple(v for v in cert.vertex_order() if v in set(ys))
    return OrderedFreeSet(
        graph=t,
        order=order,
        certificate=cert,
        provenance="antichain",
        bound_met=f"|S|={k} (antichain size)",
    )


# ---------------------------------------------------------------------------
# General planar graphs
# ---------------------------------------------------------------------------

def _face_groups(g: EmbeddedGraph, t: EmbeddedGraph, added) -> dict[int, int]:
    """Map each face of the triangulated graph to the face of the original
    graph it lies in (faces merge across added edges)."""
    parent = list(range(len(t.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in added:
        a, b = find(t.face_of(u, v)), find(t.face_of(v, u))
        parent[a] = b
    group_face: dict[int, int] = {}
    for f in t.faces:
        root = find(f.id)
        if root in group_face:
            continue
        for (u, v) in f.walk:
            if norm_edge(u, v) not in added:
                group_face[root] = g.face_of(u, v)
                break
    return {f.id: group_face[find(f.id)] for f in t.faces}


def _restrict_certificate(g: EmbeddedGraph, t: EmbeddedGraph,
                          added, cert: CurveCertificate) -> CurveCertificate:
    """Pull a certificate on a triangulated supergraph back to the original
    graph: crossings of added edges dissolve into face passages, along items
    on added edges become passages through the containing face."""
    added = set(added)
    if not added:
        return cert
    fmap = _face_groups(g, t, added)
    items, passages = cert.items, cert.passages
    m = len(items)
    new_items: list = []
    new_pass: list[int | None] = []
    pending_override: int | None = None

    for i in range(m):
        it = items[i]
        if isinstance(it, CrossItem) and it.edge in added:
            continue  # both neighbor passages map into the same face
        if isinstance(it, AlongItem) and it.edge in added:
            u, v = it.edge
            pending_override = fmap[t.face_of(u, v)]
            continue
        new_items.append(it)
        p = passages[i]
        new_pass.append(fmap[p] if p is not None else None)
        if pending_override is not None and len(new_items) >= 2:
            new_pass[-2] = pending_override
            pending_override = None

    if pending_override is not None and new_items:
        new_pass[-1] = pending_override

    return CurveCertificate(tuple(new_items), tuple(new_pass))


def planar_freeset(g: EmbeddedGraph, xs=None) -> OrderedFreeSet:
    """Free set of size at least ceil(sqrt(n/2)) in any embedded planar
    graph; with a target set X the extraction is restricted to X (the bound
    is only asserted for the full vertex set).

    The graph is triangulated, a canonical frame poset built, and the
    Dilworth dichotomy dispatched to the chain or antichain construction;
    the certificate is then pulled back through the triangulation.
    """
    full = xs is None
    xs = sorted(set(range(g.n) if full else xs))
    if not xs:
        raise TooSmall("target set is empty")
    if g.n <= 2:
        # one or two vertices are trivially free (any drawing can be mapped
        # onto the targets by a similarity); emit the direct certificate
        if g.n == 1:
            cert = CurveCertificate((VertexItem(0),), (0,))
        else:
            cert = CurveCertificate(
                (VertexItem(0), AlongItem((0, 1)), VertexItem(1)),
                (None, None, g.face_of(0, 1)))
        return OrderedFreeSet(graph=g, order=tuple(range(g.n)),
                              certificate=_checked(g, cert),
                              provenance="trivial",
                              bound_met=f"|S|={g.n} (whole graph)")
    t, tmap = triangulate(g)
    cs = canonical_order(t)

    def run(kind: str, data: tuple[int, ...]) -> OrderedFreeSet:
        if kind == "chain":
            return chain_freeset(t, cs, data)
        return antichain_freeset(t, cs, data)

    kind, data = chain_or_antichain(cs, xs)
    result = run(kind, data)
    picked = [v for v in result.order if v in set(xs)]
    if len(picked) < 2 and not full:
        # the dispatched branch may waste X; try the other one
        other = "antichain" if kind == "chain" else "chain"
        alt = _forced_branch(cs, xs, other)
        if alt is not None:
            alt_result = run(other, alt)
            alt_picked = [v for v in alt_result.order if v in set(xs)]
            if len(alt_picked) > len(picked):
                result, picked = alt_result, alt_picked
    if len(picked) < 2 and not full:
        pair = _common_face_pair(g, xs)
        if pair is not None:
            return pair

    cert = _restrict_certificate(g, t, tmap.new_edges, result.certificate)
    cert = _checked(g, cert)
    order = tuple(v for v in cert.vertex_order() if v in set(picked))
    bound = antichain_bound(len(xs))
    return OrderedFreeSet(
        graph=g,
        order=order,
        certificate=cert,
        provenance=f"planar/{result.provenance}",
        bound_met=(f"|S|={len(order)} >= ceil(sqrt(n/2))={bound}" if full
                   else f"|S|={len(order)} within X of size {len(xs)}"),
    )


def _forced_branch(cs: CanonicalStructure, xs, which: str):
    """Best chain or antichain regardless of the dichotomy rule."""
    from .canonical import _frame_path, _mirsky_layers
    xs = sorted(set(xs))
    layer = _mirsky_layers(cs, xs)
    depth = max(layer.values())
    if which == "chain":
        by_layer: dict[int, list[int]] = {}
        for v in xs:
            by_layer.setdefault(layer[v], []).append(v)
        chain: list[int] = []
        cur = None
        for d in range(depth, 0, -1):
            v = min(u for u in by_layer[d] if cur is None or cs.precedes(u, cur))
            chain.append(v)
            cur = v
        chain.reverse()
        if len(chain) < 1:
            return None
        path: list[int] = []
        stops = [cs.v1] + [v for v in chain if v not in (cs.v1, cs.v2)] + [cs.v2]
        for i in range(len(stops) - 1):
            seg = _frame_path(cs, stops[i], stops[i + 1])
            path.extend(seg if i == 0 else seg[1:])
        return tuple(path) if len(path) >= 3 else None
    best = max(range(1, depth + 1),
               key=lambda d: (sum(1 for v in xs if layer[v] == d), -d))
    anti = {v for v in xs if layer[v] == best}
    for v in range(cs.graph.n):
        if v not in anti and all(not cs.comparable(v, u) for u in anti):
            anti.add(v)
    pos = {v: i for i, v in enumerate(cs.order)}
    ordered = tuple(sorted(anti, key=lambda v: pos[v]))
    return ordered if len(ordered) >= 2 else None


def _common_face_pair(g: EmbeddedGraph, xs) -> OrderedFreeSet | None:
    """Two target vertices on a common face form a free set: the curve dips
    through both and closes inside the face."""
    xs = sorted(set(xs))
    for f in g.faces:
        on_face = [v for v in xs if v in f.vertex_set()]
        if len(on_face) >= 2:
            a, b = on_face[0], on_face[1]
            if g.has_edge(a, b):
                items = (VertexItem(a), AlongItem(norm_edge(a, b)),
                         VertexItem(b))
                passages = (None, None, f.id)
            else:
                items = (VertexItem(a), VertexItem(b))
                passages = (f.id, f.id)
            cert = CurveCertificate(items, passages)
            if validate_curve(g, cert) is None:
                return OrderedFreeSet(
                    graph=g, order=(a, b), certificate=cert,
                    provenance="common-face-pair",
                    bound_met="|S|=2 (fallback)",
                )
    return None


# ---------------------------------------------------------------------------
# Level assignments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelAssignment:
    """Vertex levels with a left-to-right order inside each level."""

    levels: dict            # vertex -> level
    span: int
    order: dict             # level -> tuple of vertices, left to right

    def check(self, g: EmbeddedGraph) -> None:
        if set(self.levels) != set(range(g.n)):
            raise BadLevelAssignment("levels must cover every vertex")
        index = {}
        for lvl, row in self.order.items():
            for i, v in enumerate(row):
                if self.levels[v] != lvl:
                    raise BadLevelAssignment(f"vertex {v} listed on level {lvl}")
                index[v] = i
        if len(index) != g.n:
            raise BadLevelAssignment("level orders must cover every vertex")
        for (u, v) in g.edges:
            du = self.levels[u] - self.levels[v]
            if du == 0:
                if abs(index[u] - index[v]) != 1:
                    raise BadLevelAssignment(
                        f"horizontal edge {u}-{v} joins non-consecutive "
                        "vertices of its level")
            elif abs(du) > self.span:
                raise BadLevelAssignment(
                    f"edge {u}-{v} spans {abs(du) + 1} levels "
                    f"(span {self.span} allows {self.span + 1})")


def bfs_levels(g: EmbeddedGraph, root: int = 0) -> LevelAssignment:
    """Breadth-first leveling of a tree, rows ordered by the embedding."""
    if len(g.edges) != g.n - 1:
        raise BadLevelAssignment("automatic leveling is for trees only")
    levels = {root: 0}
    rows: dict[int, list[int]] = {0: [root]}
    # depth-first in rotation order keeps each row in planar order
    stack = [(root, None)]
    while stack:
        v, parent = stack.pop()
        children = [u for u in g.rot[v] if u != parent]
        if parent is not None:
            j = g.rot_index(v, parent)
            d = len(g.rot[v])
            children = [g.rot[v][(j + k) % d] for k in range(1, d)]
        for u in reversed(children):
            stack.append((u, v))
        if v not in levels:
            levels[v] = levels[parent] + 1
            rows.setdefault(levels[v], []).append(v)
    return LevelAssignment(levels=levels, span=1,
                           order={lvl: tuple(row) for lvl, row in rows.items()})


def level_freeset(g: EmbeddedGraph, la: LevelAssignment,
                  xs=None) -> OrderedFreeSet:
    """Free set from an s-span weakly level planar structure.

    Picks the residue class of levels richest in X, threads a curve through
    every vertex of those levels (boustrophedon), and crosses each edge
    spanning a chosen level exactly once.
    """
    la.check(g)
    xs = sorted(set(range(g.n) if xs is None else xs))
    mod = la.span + 1
    lvls = sorted(la.order)
    best_r = max(range(mod), key=lambda r: (
        sum(1 for v in xs if la.levels[v] % mod == r), -r))
    chosen = [l for l in lvls if l % mod == best_r]

    snake: list[int] = []
    for i, lvl in enumerate(chosen):
        row = list(la.order[lvl])
        if i % 2 == 1:
            row.reverse()
        snake.extend(row)
    if not snake:
        raise BadLevelAssignment("chosen levels contain no vertices")

    curve_set = set(snake)
    crossable = {e for e in g.edges
                 if e[0] not in curve_set and e[1] not in curve_set}
    allowed = {f.id for f in g.faces}
    used: set = set()

    items: list = []
    passages: list[int | None] = []
    m = len(snake)
    for i, v in enumerate(snake):
        items.append(VertexItem(v))
        w = snake[(i + 1) % m]
        if g.has_edge(v, w):
            passages.append(None)
            items.append(AlongItem(norm_edge(v, w)))
            passages.append(None)
            continue
        frag = route_open_curve(g, v, w, allowed, crossable - used)
        used.update(it.edge for it in frag.items)
        for it, p in zip(frag.items, frag.passages[:-1]):
            passages.append(p)
            items.append(it)
        passages.append(frag.passages[-1])

    cert = CurveCertificate(tuple(items), tuple(passages))
    violation = validate_curve(g, cert)
    if violation is not None:
        raise BadLevelAssignment(
            f"level structure does not yield a proper curve: {violation}")
    order = tuple(v for v in cert.vertex_order() if v in set(xs))
    need = -(-len(xs) // mod)  # ceil
    assert len(order) >= need
    return OrderedFreeSet(
        graph=g,
        order=order,
        certificate=cert,
        provenance="level",
        bound_met=f"|S|={len(order)} >= ceil(|X|/(s+1))={need}",
    )


# ---------------------------------------------------------------------------
# Spanning trees with many leaves, one-bend free sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset
    leaf_count: int

    def neighbors(self, g: EmbeddedGraph, v: int) -> list[int]:
        return [u for u in g.rot[v] if norm_edge(u, v) in self.edges]


def maxleaf_tree(g: EmbeddedGraph, seed: int | None = None) -> SpanningTree:
    """Greedy many-leaf spanning tree (no guarantee asserted).

    Grows from a maximum-degree vertex, always attaching the vertex whose
    attachment adds the most leaves, then improves by 1-swaps.
    """
    n = g.n
    rng = random.Random(seed) if seed is not None else None
    if rng is None:
        start = max(range(n), key=lambda v: (g.degree(v), -v))
    else:
        top = max(g.degree(v) for v in range(n))
        start = rng.choice([v for v in range(n) if g.degree(v) == top])
    parent: dict[int, int | None] = {start: None}
    deg_t = [0] * n

    def jitter(u: int, t: int) -> tuple:
        if rng is None:
            return (u, t)
        return (rng.random(), u, t)

    while len(parent) < n:
        best = None
        for t in parent:
            for u in g.rot[t]:
                if u in parent:
                    continue
                delta = 1
                if deg_t[t] == 1:
                    delta -= 1
                elif deg_t[t] == 0:
                    delta += 1
                key = (-delta, jitter(u, t))
                if best is None or key < best[0]:
                    best = (key, u, t)
        _, u, t = best
        parent[u] = t
        deg_t[u] += 1
        deg_t[t] += 1

    def in_subtree(x: int, root_of: int) -> bool:
        while x is not None:
            if x == root_of:
                return True
            x = parent[x]
        return False

    for _ in range(20):
        improved = False
        for u in range(n):
            if parent[u] is None:
                continue
            p = parent[u]
            for t in g.rot[u]:
                if t == p or in_subtree(t, u):
                    continue
                delta = (1 if deg_t[p] == 2 else 0) - (1 if deg_t[t] == 1 else 0)
                if delta > 0:
                    deg_t[p] -= 1
                    deg_t[t] += 1
                    parent[u] = t
                    improved = True
                    p = t
        if not improved:
            break

    edges = frozenset(norm_edge(u, p) for u, p in parent.items()
                      if p is not None)
    leaves = sum(1 for v in range(n) if deg_t[v] == 1)
    return SpanningTree(edges=edges, leaf_count=leaves)


def onebend_freeset(g: EmbeddedGraph, tree: SpanningTree,
                    ) -> tuple[OrderedFreeSet, GraphMapping]:
    """The leaves of a spanning tree as a free set of the fully subdivided
    graph (a one-bend collinear set of the original graph).

    The curve follows the tree contour, passing through each leaf and
    crossing the near half of every non-tree edge met between consecutive
    tree edges in a rotation.  Returns the free set on the subdivided graph
    together with the subdivision mapping.
    """
    n = g.n
    tset = set(tree.edges)
    if len(tset) != n - 1 or any(e not in g.edges for e in tset):
        raise NotSpanningTree("edge set is not a spanning tree of the graph")
    t_deg = [0] * n
    for u, v in tset:
        t_deg[u] += 1
        t_deg[v] += 1
    if 0 in t_deg and n > 1:
        raise NotSpanningTree("tree does not span every vertex")

    gp, mp = subdivide(g, sorted(g.edges))
    mid = {e: mp.edge_forward[e][0][1] for e in g.edges}

    leaves = [v for v in range(n) if t_deg[v] == 1]
    l0 = min(leaves)
    v0 = next(u for u in g.rot[l0] if norm_edge(l0, u) in tset)

    def rot_idx(y: int, other: int) -> int:
        return gp.rot_index(y, mid[norm_edge(y, other)])

    d0 = len(gp.rot[l0])
    pending = gp.corner_face(l0, (rot_idx(l0, v0) + 1) % d0)
    collected: list[tuple] = []  # (item, face before it)
    cur = (l0, v0)
    while True:
        x, y = cur
        rp = gp.rot[y]
        d = len(rp)
        i0 = rot_idx(y, x)
        if t_deg[y] == 1:
            collected.append((VertexItem(y), pending))
            pending = gp.corner_face(y, (i0 + 1) % d)
            nxt = (y, x)
        else:
            i = i0
            while True:
                i = (i - 1) % d
                w = g.rot[y][i]
                if norm_edge(y, w) in tset:
                    nxt = (y, w)
                    break
                collected.append(
                    (CrossItem(norm_edge(y, mid[norm_edge(y, w)])), pending))
                pending = gp.corner_face(y, i)
        if nxt == (l0, v0):
            break
        cur = nxt

    items = tuple(it for it, _ in collected)
    before = [p for _, p in collected]
    passages = tuple(before[1:] + before[:1])
    cert = _checked(gp, _rotate_to_vertex_start(
        CurveCertificate(items, passages)))
    order = cert.vertex_order()
    ofs = OrderedFreeSet(
        graph=gp,
        order=order,
        certificate=cert,
        provenance="onebend-tree-leaves",
        bound_met=f"|S|={len(order)} = leaf count (no ratio asserted)",
    )
    return ofs, mp


# ---------------------------------------------------------------------------
# Dual-cycle extraction
# ---------------------------------------------------------------------------

def dualcycle_freeset(t: EmbeddedGraph, dual_cycle) -> OrderedFreeSet:
    """Free set from a simple cycle of faces: greedy independent subset of
    the caressed vertices, rerouted through each of them.

    The four-coloring bound k/4 is not asserted; the achieved size is
    reported.
    """
    caressed = caressed_vertices(t, dual_cycle)
    alive = set(caressed)
    chosen: list[int] = []
    while alive:
        v = min(alive, key=lambda u: (sum(1 for w in t.rot[u] if w in alive), u))
        chosen.append(v)
        alive -= {v} | set(t.rot[v])
    if len(chosen) < 2:
        raise NoIndependentPair(
            f"only {len(chosen)} independent caressed vertices")
    cert = reroute_caressed(t, dual_cycle, chosen)
    cert = _rotate_to_vertex_start(cert)
    order = cert.vertex_order()
    return OrderedFreeSet(
        graph=t,
        order=order,
        certificate=cert,
        provenance="dual-cycle",
        bound_met=f"|S|={len(order)} of {len(caressed)} caressed "
                  "(k/4 not asserted)",
    )
