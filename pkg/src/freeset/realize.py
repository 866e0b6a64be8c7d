"""Exact-rational geometric realization of curve certificates.

The pipeline follows the constructive side of the proper-good/free
equivalence: subdivide the crossed edges, split the graph along the curve,
draw each side in a half-plane with the curve vertices on the x-axis
(Tutte systems on an augmented graph, certified by exact verification),
then perturb the free vertices off the axis and rescale to hit arbitrary
targets.  Every returned drawing has passed the exact crossing-free check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .curves import (
    CrossItem,
    CurveCertificate,
    VertexItem,
    analyze_curve,
    side_partition,
)
from .embedding import EmbeddedGraph, Edge, build_embedded, norm_edge, subdivide
from .errors import (
    DegenerateOutput,
    EpsilonExhausted,
    InvalidCurve,
    MergeConflict,
    SingularSystem,
    SizeMismatch,
    YNotOnOuterFace,
)
from .extractors import OrderedFreeSet
from .rational import (
    FractionFreeSolver,
    Point,
    integer_grid,
    segments_intersect,
)

F = Fraction


@dataclass(frozen=True)
class DrawingViolation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class PolyDrawing:
    """Vertex positions plus at most one bend per edge, all rational."""

    graph: EmbeddedGraph
    pos: dict
    bends: dict = field(default_factory=dict)
    provenance: str = ""
    verified: bool = False

    def segments(self) -> list[tuple[Point, Point, Edge]]:
        out = []
        for e in sorted(self.graph.edges):
            u, v = e
            chain = [self.pos[u], *self.bends.get(e, ()), self.pos[v]]
            for a, b in zip(chain, chain[1:]):
                out.append((a, b, e))
        return out

    def bend_count(self) -> int:
        return sum(len(b) for b in self.bends.values())


def verify_drawing(g: EmbeddedGraph, d: PolyDrawing) -> DrawingViolation | None:
    """Exact crossing-free check: distinct vertices, no vertex interior to
    any segment, no two segments meeting outside a shared graph vertex."""
    from .rational import on_segment

    if set(d.pos) != set(range(g.n)):
        return DrawingViolation("missing-vertex", "not every vertex is placed")

    # one integer grid point per distinct rational point
    rational_pts: list[Point] = [d.pos[v] for v in range(g.n)]
    index: dict[Point, int] = {}
    for v in range(g.n):
        index.setdefault(d.pos[v], v)
    extra: list[Point] = []
    for e in sorted(d.bends):
        for p in d.bends[e]:
            if p not in index:
                index[p] = g.n + len(extra)
                extra.append(p)
    grid = integer_grid(rational_pts + extra)

    if len(set(grid[:g.n])) != g.n:
        return DrawingViolation("coincident-vertices",
                                "two vertices share a position")
    vertex_at = {grid[v]: v for v in range(g.n)}

    segs = []  # (gp, gq, edge, endpoint grid pair)
    for a, b, e in d.segments():
        p, q = grid[index[a]], grid[index[b]]
        if p == q:
            return DrawingViolation("degenerate-segment",
                                    f"edge {e} has a zero-length piece")
        segs.append((p, q, e))

    # vertices in the interior (or on foreign endpoints) of segments,
    # windowed by x to keep the scan near-linear
    byx = sorted(range(g.n), key=lambda v: grid[v])
    xs_sorted = [grid[v][0] for v in byx]
    from bisect import bisect_left, bisect_right
    for p, q, e in segs:
        lo = bisect_left(xs_sorted, min(p[0], q[0]))
        hi = bisect_right(xs_sorted, max(p[0], q[0]))
        ylo, yhi = min(p[1], q[1]), max(p[1], q[1])
        for t in range(lo, hi):
            v = byx[t]
            gv = grid[v]
            if gv[1] < ylo or gv[1] > yhi:
                continue
            if on_segment(p[0], p[1], q[0], q[1], gv[0], gv[1]):
                if v in e and gv in (p, q):
                    continue
                return DrawingViolation(
                    "vertex-on-edge", f"vertex {v} lies on edge {e}")

    def allowed_touch(point, e1, e2) -> bool:
        w = vertex_at.get(point)
        return w is not None and w in e1 and w in e2

    # pairwise test, pruned by an x-interval sweep
    order = sorted(range(len(segs)), key=lambda i: min(segs[i][0][0],
                                                       segs[i][1][0]))
    active: list[int] = []
    for idx in order:
        p, q, e = segs[idx]
        lo = min(p[0], q[0])
        ylo, yhi = min(p[1], q[1]), max(p[1], q[1])
        still = []
        for j in active:
            pj, qj, ej = segs[j]
            if max(pj[0], qj[0]) < lo:
                continue
            still.append(j)
            if min(pj[1], qj[1]) > yhi or max(pj[1], qj[1]) < ylo:
                continue
            if not segments_intersect(p, q, pj, qj):
                continue
            shared = {p, q} & {pj, qj}
            if e == ej and shared:
                # the two halves of one bent edge meet at the bend; reject
                # only a collinear fold-back
                (other1,) = [x for x in (p, q) if x not in shared] or [p]
                (other2,) = [x for x in (pj, qj) if x not in shared] or [pj]
                if on_segment(pj[0], pj[1], qj[0], qj[1],
                              other1[0], other1[1]) or \
                        on_segment(p[0], p[1], q[0], q[1],
                                   other2[0], other2[1]):
                    return DrawingViolation(
                        "crossing", f"edge {e} folds back on itself")
                continue
            if len(shared) == 1 and allowed_touch(next(iter(shared)), e, ej):
                sp = next(iter(shared))
                other1 = q if p == sp else p
                other2 = qj if pj == sp else pj
                if on_segment(pj[0], pj[1], qj[0], qj[1],
                              other1[0], other1[1]) or \
                        on_segment(p[0], p[1], q[0], q[1],
                                   other2[0], other2[1]):
                    return DrawingViolation(
                        "crossing", f"edges {e} and {ej} overlap")
                continue
            return DrawingViolation("crossing",
                                    f"edges {e} and {ej} intersect")
        still.append(idx)
        active = still
    return None


def checked_drawing(g: EmbeddedGraph, d: PolyDrawing) -> PolyDrawing:
    violation = verify_drawing(g, d)
    if violation is not None:
        raise DegenerateOutput(str(violation))
    return replace(d, verified=True)


# ---------------------------------------------------------------------------
# Barycentric (Tutte) systems
# ---------------------------------------------------------------------------

_MAX_EXACT_DEFAULT = 300


def _barycentric_positions(g: EmbeddedGraph, fixed: dict,
                           weights: dict | None,
                           max_exact: int) -> dict:
    """Place every non-fixed vertex at the (weighted) barycenter of its
    neighbors, solving the linear system exactly below the size threshold."""
    interior = [v for v in range(g.n) if v not in fixed]
    pos = {v: (F(x), F(y)) for v, (x, y) in fixed.items()}
    if not interior:
        return pos
    index = {v: i for i, v in enumerate(interior)}

    def w(u, v):
        return 1 if weights is None else weights[norm_edge(u, v)]

    k = len(interior)
    if k <= max_exact:
        rows = [[0] * k for _ in range(k)]
        rhs_x = [F(0)] * k
        rhs_y = [F(0)] * k
        for v in interior:
            i = index[v]
            for u in g.rot[v]:
                wt = w(u, v)
                rows[i][i] += wt
                if u in fixed:
                    rhs_x[i] += wt * pos[u][0]
                    rhs_y[i] += wt * pos[u][1]
                else:
                    rows[i][index[u]] -= wt
        solver = FractionFreeSolver(rows)
        xs = solver.solve(rhs_x)
        ys = solver.solve(rhs_y)
        for v in interior:
            pos[v] = (xs[index[v]], ys[index[v]])
        return pos

    # float solve with rational snap; correctness rests on verification
    import numpy as np
    a = np.zeros((k, k))
    bx = np.zeros(k)
    by = np.zeros(k)
    for v in interior:
        i = index[v]
        for u in g.rot[v]:
            wt = float(w(u, v))
            a[i, i] += wt
            if u in fixed:
                bx[i] += wt * float(pos[u][0])
                by[i] += wt * float(pos[u][1])
            else:
                a[i, index[u]] -= wt
    try:
        sx = np.linalg.solve(a, bx)
        sy = np.linalg.solve(a, by)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from None
    for v in interior:
        pos[v] = (F(float(sx[index[v]])).limit_denominator(10 ** 9),
                  F(float(sy[index[v]])).limit_denominator(10 ** 9))
    return pos


def tutte_solve(h: EmbeddedGraph, boundary_cycle, boundary_positions,
                max_exact: int = _MAX_EXACT_DEFAULT) -> dict:
    """Barycentric drawing with a fixed boundary polygon.

    Exact rational solve up to ``max_exact`` interior vertices, float solve
    with rational snapping beyond; the output must pass the exact
    crossing-free verification, otherwise one randomized positive-weight
    retry is attempted before DegenerateOutput.
    """
    cycle = list(boundary_cycle)
    positions = [(F(x), F(y)) for x, y in boundary_positions]
    if len(cycle) != len(positions):
        raise SizeMismatch("one position per boundary vertex")
    if len(set(cycle)) != len(cycle):
        raise SizeMismatch("boundary cycle repeats a vertex")
    fixed = dict(zip(cycle, positions))

    rng = random.Random(0x5EED)
    for attempt in range(3):
        weights = None
        if attempt > 0:
            weights = {e: rng.randint(1, 16) for e in h.edges}
        pos = _barycentric_positions(h, fixed, weights, max_exact)
        d = PolyDrawing(graph=h, pos=pos, provenance="tutte")
        if verify_drawing(h, d) is None:
            return pos
    raise DegenerateOutput("barycentric drawing failed verification "
                           "with and without randomized weights")


# ---------------------------------------------------------------------------
# Half-plane drawings
# ---------------------------------------------------------------------------

def _insert_edge_at_corners(rot: list[list[int]], g: EmbeddedGraph,
                            fid: int, a: int, b: int) -> None:
    """Insert edge a-b into the face fid of g, mutating rotation lists."""
    walk = g.faces[fid].walk
    verts = [u for u, _ in walk]
    ia = verts.index(a)
    ib = verts.index(b)
    rot[a].insert(rot[a].index(verts[ia - 1]), b)
    rot[b].insert(rot[b].index(verts[ib - 1]), a)


class _HalfPlane:
    """Augmented barycentric system for one side of a collinear drawing.

    Holds the apex/helper augmentation and the factored interior system so
    repeated solves with different axis positions stay cheap.
    """

    def __init__(self, h: EmbeddedGraph, y_order: list[int],
                 max_exact: int = _MAX_EXACT_DEFAULT):
        self.h = h
        self.y = list(y_order)
        self.max_exact = max_exact
        outer = h.faces[h.outer_face]
        on_outer = outer.vertex_set()
        for v in self.y:
            if v not in on_outer:
                raise YNotOnOuterFace(f"axis vertex {v} not on the outer face")
        outer_edges = outer.edge_set()
        for a, b in zip(self.y, self.y[1:]):
            if norm_edge(a, b) not in outer_edges:
                raise YNotOnOuterFace(
                    f"axis edge {a}-{b} does not bound the outer face")

        # apex adjacent to the two axis extremes, then pull every
        # axis-locked interior vertex off the line with helper edges
        rot = [list(r) for r in h.rot] + [[]]
        apex = h.n
        _insert_apex = self._insert_apex(rot, h, apex)
        self.apex = apex
        aug, _ = _insert_apex
        helper_edges: list[Edge] = []
        yset = set(self.y)

        # fill the content faces (everything away from the apex) with
        # chords, preferring chords from fixed axis vertices: hanging
        # clusters then anchor to spread positions instead of collapsing
        # onto a line; the extra edges only shape the solve
        aug = self._fill_content_faces(aug, yset, helper_edges)

        def add_helper(picked) -> EmbeddedGraph:
            _, fid, w, v = picked
            rot2 = [list(r) for r in aug.rot]
            _insert_edge_at_corners(rot2, aug, fid, v, w)
            helper_edges.append(norm_edge(v, w))
            return build_embedded(len(rot2), rot2)

        # pull axis-locked interior vertices off the line
        while True:
            locked = self._locked(aug)
            if not locked:
                break
            found = None  # (prefer apex, face id, target, vertex)
            for v in locked:
                for fid in aug.faces_at(v):
                    for w in {u for u, _ in aug.faces[fid].walk}:
                        if w == v or w in yset or w in locked:
                            continue
                        if aug.has_edge(v, w):
                            continue
                        cand = (w != self.apex, fid, w, v)
                        if found is None or cand < found:
                            found = cand
                if found is not None and not found[0]:
                    break  # an apex link is as good as it gets
            if found is None:
                break  # solve anyway; verification has the last word
            aug = add_helper(found)

        # low-degree interior vertices sit on the segment between their
        # neighbors; raise them to degree three (non-apex targets first,
        # fixed axis vertices give guaranteed spread)
        while True:
            low = [v for v in range(aug.n)
                   if v not in yset and v != self.apex and aug.degree(v) < 3]
            found = None
            for v in low:
                for fid in aug.faces_at(v):
                    for w in {u for u, _ in aug.faces[fid].walk}:
                        if w == v or aug.has_edge(v, w):
                            continue
                        cand = (w == self.apex, w, fid, v)
                        if found is None or cand < found:
                            found = cand
            if found is None:
                break
            found = (found[0], found[2], found[1], found[3])
            aug = add_helper(found)
        self.aug = aug
        self.helper_edges = helper_edges
        # distinct helper weights keep symmetric twins (two pendants pulled
        # toward the apex from the same axis vertex) from coinciding
        self.base_weights = {e: 1 for e in aug.edges}
        for i, e in enumerate(helper_edges):
            self.base_weights[e] = 2 + i
        self._solvers: dict = {}

    def _fill_content_faces(self, aug: EmbeddedGraph, yset: set,
                            helpers: list) -> EmbeddedGraph:
        from .embedding import _rebuild, _trace_faces

        rot = [list(r) for r in aug.rot]
        marker = aug.faces[aug.outer_face].walk[0]
        edges = set(aug.edges)
        fixed = yset | {self.apex}
        skipped: set[frozenset] = set()
        while True:
            walks = _trace_faces(rot)
            target = None
            sig = None
            for w in walks:
                if len(w) > 3 and frozenset(w) not in skipped:
                    target = [u for u, _ in w]
                    sig = frozenset(w)
                    break
            if target is None:
                break
            k = len(target)

            def valid(i: int, j: int, want_fixed: bool) -> bool:
                a, b = target[i], target[j]
                if a == b or (j - i) % k in (0, 1, k - 1):
                    return False
                if a in fixed and b in fixed:
                    # a chord between two fixed vertices adds no pull, and
                    # on the axis it would seal a flat pocket
                    return False
                if want_fixed and a not in fixed and b not in fixed:
                    return False
                return norm_edge(a, b) not in edges

            pos = None
            for want_fixed in (True, False):
                for i in range(k):
                    for j in range(k):
                        if valid(i, j, want_fixed):
                            pos = (i, j)
                            break
                    if pos:
                        break
                if pos:
                    break
            if pos is None:
                skipped.add(sig)  # face already saturated for our purposes
                continue
            i, j = pos
            a, b = target[i], target[j]
            rot[a].insert(rot[a].index(target[i - 1]), b)
            rot[b].insert(rot[b].index(target[j - 1]), a)
            edges.add(norm_edge(a, b))
            helpers.append(norm_edge(a, b))
        return _rebuild(rot, marker)

    def _insert_apex(self, rot, h: EmbeddedGraph, apex: int):
        y0, ym = self.y[0], self.y[-1]
        fid = h.outer_face
        for end in (y0, ym):
            slots = [j for j in range(len(h.rot[end]))
                     if h.corner_face(end, j) == fid]
            rot[end].insert(slots[0], apex)
        for order in ((y0, ym), (ym, y0)):
            rot[apex] = list(order)
            try:
                marker = h.faces[fid].walk[0]
                aug = build_embedded(len(rot), rot)
                return aug, marker
            except Exception:
                continue
        raise DegenerateOutput("apex insertion failed on both orientations")

    def _locked(self, aug: EmbeddedGraph) -> list[int]:
        """Interior vertices forced onto the axis: no interior path to any
        vertex with an off-axis pull (the apex)."""
        yset = set(self.y)
        interior = [v for v in range(aug.n)
                    if v not in yset and v != self.apex]
        free = set()
        stack = [v for v in interior if self.apex in aug.rot[v]]
        free.update(stack)
        while stack:
            v = stack.pop()
            for u in aug.rot[v]:
                if u in yset or u == self.apex or u in free:
                    continue
                free.add(u)
                stack.append(u)
        return sorted(v for v in interior if v not in free)

    def _system(self, weights: dict | None):
        """Factored interior system (cached for the base-weight case)."""
        if weights is None and 0 in self._solvers:
            return self._solvers[0]
        aug = self.aug
        fixed_set = set(self.y) | {self.apex}
        interior = [v for v in range(aug.n) if v not in fixed_set]
        index = {v: i for i, v in enumerate(interior)}
        table = self.base_weights if weights is None else weights

        def w(u, v):
            return table[norm_edge(u, v)]

        rows = [[0] * len(interior) for _ in interior]
        nbr_fixed = []
        for v in interior:
            i = index[v]
            fx = []
            for u in aug.rot[v]:
                wt = w(u, v)
                rows[i][i] += wt
                if u in fixed_set:
                    fx.append((u, wt))
                else:
                    rows[i][index[u]] -= wt
            nbr_fixed.append(fx)
        solver = None
        if interior and len(interior) <= self.max_exact:
            solver = FractionFreeSolver(rows)
        system = (interior, index, solver, nbr_fixed)
        if weights is None:
            self._solvers[0] = system
        return system

    def solve(self, xs: list[Fraction], side: str) -> dict:
        """Positions for the original half graph, axis at the given x's."""
        if len(xs) != len(self.y):
            raise SizeMismatch("one x position per axis vertex")
        span = xs[-1] - xs[0]
        b = 4 * span if span > 0 else F(4)
        fixed = {v: (x, F(0)) for v, x in zip(self.y, xs)}
        fixed[self.apex] = ((xs[0] + xs[-1]) / 2, b)

        rng = random.Random(0xA11CE)
        for attempt in range(3):
            weights = None
            if attempt > 0:
                weights = {e: rng.randint(1, 16) for e in self.aug.edges}
            interior, index, solver, nbr_fixed = self._system(weights)
            pos = dict(fixed)
            if interior and len(interior) <= self.max_exact:
                rhs_x = [sum(wt * fixed[u][0] for u, wt in nbr_fixed[i])
                         for i in range(len(interior))]
                rhs_y = [sum(wt * fixed[u][1] for u, wt in nbr_fixed[i])
                         for i in range(len(interior))]
                sx = solver.solve([F(v) for v in rhs_x])
                sy = solver.solve([F(v) for v in rhs_y])
                for v in interior:
                    pos[v] = (sx[index[v]], sy[index[v]])
            elif interior:
                pos = _barycentric_positions(self.aug, fixed, weights,
                                             self.max_exact)
            out = {v: pos[v] for v in range(self.h.n)}
            if side == "below":
                out = {v: (x, -y) for v, (x, y) in out.items()}
            d = PolyDrawing(graph=self.h, pos=out, provenance="halfplane")
            if verify_drawing(self.h, d) is None:
                return out
        raise DegenerateOutput("half-plane drawing failed verification")


def halfplane_draw(h: EmbeddedGraph, y_order, xs, side: str = "below",
                   max_exact: int = _MAX_EXACT_DEFAULT) -> dict:
    """Draw h with the axis vertices at (x_i, 0) and everything else
    strictly on one side.  Consecutive axis vertices must be adjacent in h
    and the axis must lie on h's outer face in order."""
    xs = [F(x) for x in xs]
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise SizeMismatch("x positions must be strictly increasing")
    y_order = list(y_order)
    for a, b in zip(y_order, y_order[1:]):
        if not h.has_edge(a, b):
            raise YNotOnOuterFace(f"axis vertices {a},{b} are not adjacent")
    hp = _HalfPlane(h, y_order, max_exact=max_exact)
    return hp.solve(xs, side)


# ---------------------------------------------------------------------------
# Collinear realization of curve certificates
# ---------------------------------------------------------------------------

@dataclass
class _CollinearSystem:
    gp: EmbeddedGraph
    mids: dict                    # crossed original edge -> midpoint vertex
    y_order: tuple[int, ...]      # curve vertices of gp in traversal order
    halves: dict                  # "inside"/"outside" -> (_HalfPlane, to_rel)


def _lift_certificate(g0: EmbeddedGraph, cert: CurveCertificate):
    """Subdivide the crossed edges and rewrite crossings as vertex items."""
    crossed = sorted(cert.crossed_edges())
    gp, mp = subdivide(g0, crossed)
    from .embedding import midpoint_of
    mids = {e: midpoint_of(mp, e) for e in crossed}

    fmap = {}
    for f in g0.faces:
        u, v = f.walk[0]
        e = norm_edge(u, v)
        d = (u, mids[e]) if e in mids else (u, v)
        fmap[f.id] = gp.face_of(*d)
    items = tuple(VertexItem(mids[it.edge]) if isinstance(it, CrossItem)
                  else it for it in cert.items)
    passages = tuple(None if p is None else fmap[p] for p in cert.passages)
    return gp, mids, CurveCertificate(items, passages)


def _half_embedding(gp: EmbeddedGraph, an, sp, y_order, which: str):
    """Embedded half graph (side content, axis vertices, axis edges)."""
    keep_class = {"along", "inside" if which == "inside" else "outside"}
    side_vertices = sp.X if which == "inside" else sp.Z
    cert = an.cert
    m = len(y_order)
    yset = set(y_order)
    y_index = {v: i for i, v in enumerate(y_order)}

    def keep_edge(u, v):
        return sp.edge_class[norm_edge(u, v)] in keep_class

    item_of = {}
    for i, it in enumerate(cert.items):
        if isinstance(it, VertexItem):
            item_of[it.v] = i

    rot_map: dict[int, list[int]] = {}
    for v in sorted(side_vertices):
        rot_map[v] = [u for u in gp.rot[v] if keep_edge(v, u)]
    for y in y_order:
        i = item_of[y]
        base = list(gp.rot[y])
        inserts = []  # (slot, neighbor, tiebreak)
        yi = y_index[y]
        if yi + 1 < m and an.exit_corner[i] is not None:
            inserts.append((an.exit_corner[i], y_order[yi + 1], 0))
        if yi > 0 and an.entry_corner[i] is not None:
            inserts.append((an.entry_corner[i], y_order[yi - 1], 1))
        # when entry and exit share a corner the curve spikes through it and
        # this half's stubs all lie on one side of the axis; the two axis
        # neighbors then sit together in that corner, ordered oppositely in
        # the two halves (they are mirror images of each other)
        flip = 1 if which == "inside" else -1
        for slot, nbr, tie in sorted(inserts,
                                     key=lambda t: (-t[0], flip * t[2])):
            base.insert(slot, nbr)
        axis = {y_order[yi + 1]} if yi + 1 < m else set()
        if yi > 0:
            axis.add(y_order[yi - 1])
        rot_map[y] = [u for u in base
                      if u in axis or (gp.has_edge(y, u) and keep_edge(y, u))]

    keep = sorted(rot_map)
    rel = {v: i for i, v in enumerate(keep)}
    rot = [[rel[u] for u in rot_map[v]] for v in keep]
    h = build_embedded(len(keep), rot)
    # pin the outer face to the complement side of the curve
    y0r, y1r = rel[y_order[0]], rel[y_order[1]]
    outer = h.face_of(y1r, y0r) if which == "inside" else h.face_of(y0r, y1r)
    if outer != h.outer_face:
        from .embedding import Face
        faces = tuple(Face(f.id, f.walk, f.id == outer) for f in h.faces)
        h = EmbeddedGraph(h.rot, faces, outer)
    return h, rel


@lru_cache(maxsize=24)
def _collinear_system(g0: EmbeddedGraph, cert: CurveCertificate,
                      max_exact: int) -> _CollinearSystem:
    gp, mids, lifted = _lift_certificate(g0, cert)
    an = analyze_curve(gp, lifted)
    sp = side_partition(gp, lifted)
    y_order = lifted.vertex_order()
    if len(y_order) < 2:
        raise InvalidCurve("collinear realization needs at least two "
                           "curve vertices")
    halves = {}
    for which in ("inside", "outside"):
        h, rel = _half_embedding(gp, an, sp, y_order, which)
        hp = _HalfPlane(h, [rel[y] for y in y_order], max_exact=max_exact)
        halves[which] = (hp, rel)
    return _CollinearSystem(gp=gp, mids=mids, y_order=y_order, halves=halves)


def _axis_positions(y_order, s_order, xs) -> list[Fraction]:
    """x positions for every curve vertex: the free set gets the given
    values, the rest are interpolated uniformly (ends padded by one)."""
    xs = [F(x) for x in xs]
    spos = {v: xs[i] for i, v in enumerate(s_order)}
    anchors = [i for i, v in enumerate(y_order) if v in spos]
    out: list[Fraction | None] = [None] * len(y_order)
    for i in anchors:
        out[i] = spos[y_order[i]]
    first, last = anchors[0], anchors[-1]
    for j in range(first):
        out[j] = out[first] - 1 + F(j + 1, first + 1)
    tail = len(y_order) - last - 1
    for k, j in enumerate(range(last + 1, len(y_order))):
        out[j] = out[last] + F(k + 1, tail + 1)
    for a, b in zip(anchors, anchors[1:]):
        gap = b - a
        for k, j in enumerate(range(a + 1, b)):
            out[j] = out[a] + (out[b] - out[a]) * F(k + 1, gap)
    return out


def realize_collinear(g: EmbeddedGraph, fs: OrderedFreeSet, xs,
                      max_exact: int = _MAX_EXACT_DEFAULT) -> PolyDrawing:
    """Straight-line drawing (bends only on curve-crossed edges) with the
    free set exactly at (x_i, 0) in order, everything inside the curve
    strictly below the axis and everything outside strictly above."""
    if g != fs.graph:
        raise SizeMismatch("free set does not belong to this graph")
    xs = [F(x) for x in xs]
    if len(xs) != len(fs.order):
        raise SizeMismatch(f"need {len(fs.order)} x positions")
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise SizeMismatch("x positions must be strictly increasing")

    sysm = _collinear_system(g, fs.certificate, max_exact)
    axis_x = _axis_positions(sysm.y_order, fs.order, xs)

    hp_in, rel_in = sysm.halves["inside"]
    hp_out, rel_out = sysm.halves["outside"]
    pos_in = hp_in.solve(axis_x, side="below")
    pos_out = hp_out.solve(axis_x, side="above")

    merged: dict[int, Point] = {}
    for v, i in rel_in.items():
        merged[v] = pos_in[i]
    for v, i in rel_out.items():
        p = pos_out[i]
        if v in merged and merged[v] != p:
            raise MergeConflict(f"vertex {v} differs between the halves")
        merged[v] = p

    pos = {v: merged[v] for v in range(g.n)}
    bends = {e: (merged[mid],) for e, mid in sysm.mids.items()}
    d = PolyDrawing(graph=g, pos=pos, bends=bends,
                    provenance=f"collinear[{fs.provenance}]")
    return checked_drawing(g, d)


# ---------------------------------------------------------------------------
# Perturb and scale
# ---------------------------------------------------------------------------

def _clearance_estimate(d: PolyDrawing, moving: list[int]) -> Fraction:
    """Float lower-ballpark for how far the moving vertices may travel."""
    segs = [(float(a[0]), float(a[1]), float(b[0]), float(b[1]), e)
            for a, b, e in d.segments()]
    best = None
    for v in moving:
        px, py = float(d.pos[v][0]), float(d.pos[v][1])
        for ax, ay, bx, by, e in segs:
            if v in e:
                continue
            dx, dy = bx - ax, by - ay
            den = dx * dx + dy * dy
            t = 0.0 if den == 0 else max(0.0, min(1.0, ((px - ax) * dx +
                                                        (py - ay) * dy) / den))
            qx, qy = ax + t * dx, ay + t * dy
            dist = ((px - qx) ** 2 + (py - qy) ** 2) ** 0.5
            if best is None or dist < best:
                best = dist
    if best is None or best <= 0:
        return F(1)
    est = F(best).limit_denominator(1 << 48) / 4
    if est <= 0:
        est = F(1, 1 << 48)
    return min(F(1), est)


def perturb_scale(d: PolyDrawing, s_order, targets) -> PolyDrawing:
    """Move the axis free set to arbitrary target heights.

    First each member is lifted to epsilon * y_i / ymax (epsilon found by
    verified halving from a clearance estimate), then every y-coordinate is
    scaled by ymax / epsilon, which is affine and exact.
    """
    s_order = list(s_order)
    ys = [F(y) for y in targets]
    if len(ys) != len(s_order):
        raise SizeMismatch("one target height per free-set member")
    if all(y == 0 for y in ys):
        return d
    ymax = max(abs(y) for y in ys)
    g = d.graph

    eps = _clearance_estimate(d, s_order)
    for _ in range(64):
        pos = dict(d.pos)
        for v, y in zip(s_order, ys):
            pos[v] = (pos[v][0], eps * y / ymax)
        cand = replace(d, pos=pos, verified=False)
        if verify_drawing(g, cand) is None:
            # scaling y by a positive rational is exactness-preserving:
            # orientation signs and collinear box tests are invariant, so
            # the verified flag carries over
            factor = ymax / eps
            pos2 = {v: (x, y * factor) for v, (x, y) in pos.items()}
            bends2 = {e: tuple((x, y * factor) for x, y in pts)
                      for e, pts in d.bends.items()}
            return PolyDrawing(graph=g, pos=pos2, bends=bends2,
                               provenance=d.provenance + "+perturbed",
                               verified=True)
        eps /= 2
    raise EpsilonExhausted("no verified perturbation after 64 halvings")


# ---------------------------------------------------------------------------
# Free realization
# ---------------------------------------------------------------------------

_ROT_C = F(4, 5)
_ROT_S = F(3, 5)


def _rotate_point(p: Point, k: int) -> Point:
    x, y = F(p[0]), F(p[1])
    if k >= 0:
        c, s = _ROT_C, _ROT_S
    else:
        c, s = _ROT_C, -_ROT_S
    for _ in range(abs(k)):
        x, y = c * x - s * y, s * x + c * y
    return (x, y)


def free_realize(g: EmbeddedGraph, fs: OrderedFreeSet, points,
                 max_exact: int = _MAX_EXACT_DEFAULT) -> PolyDrawing:
    """Drawing with the free set exactly at the given points.

    Point sets with repeated x-coordinates are handled by an exact rational
    rotation (powers of the 3-4-5 angle) before realization and the inverse
    rotation afterwards.
    """
    pts = [(F(x), F(y)) for x, y in points]
    if len(pts) != len(fs.order):
        raise SizeMismatch(f"need {len(fs.order)} points")
    if len(set(pts)) != len(pts):
        raise SizeMismatch("points must be distinct")

    k = 0
    rotated = pts
    while len({p[0] for p in rotated}) != len(rotated):
        k += 1
        rotated = [_rotate_point(p, k) for p in pts]

    order = sorted(range(len(rotated)), key=lambda i: rotated[i][0])
    xs = [rotated[i][0] for i in order]
    ys = [rotated[i][1] for i in order]

    d = realize_collinear(g, fs, xs, max_exact=max_exact)
    d = perturb_scale(d, fs.order, ys)
    if k:
        # a rational rotation is an orientation-preserving isometry; the
        # exact predicates are invariant, so the verified flag carries over
        pos = {v: _rotate_point(p, -k) for v, p in d.pos.items()}
        bends = {e: tuple(_rotate_point(p, -k) for p in b)
                 for e, b in d.bends.items()}
        d = replace(d, pos=pos, bends=bends)

    placed = {fs.order[j]: pts[order[j]] for j in range(len(pts))}
    for v, p in placed.items():
        if d.pos[v] != p:  # pragma: no cover - exact by construction
            raise MergeConflict(f"vertex {v} missed its target point")
    return replace(d, provenance=f"free[{fs.provenance}]", verified=True)


def straighten_heuristic(d: PolyDrawing) -> PolyDrawing:
    """Greedily replace bent edges by straight segments when the exact
    verification allows it; the bend count never increases."""
    g = d.graph
    cur = d
    improved = True
    while improved:
        improved = False
        for e in sorted(cur.bends):
            if not cur.bends[e]:
                continue
            bends = dict(cur.bends)
            del bends[e]
            cand = replace(cur, bends=bends, verified=False)
            if verify_drawing(g, cand) is None:
                cur = cand
                improved = True
    if cur is not d:
        cur = replace(cur, provenance=d.provenance + "+straightened",
                      verified=True)
    return cur
