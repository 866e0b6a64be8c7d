"""Applications of free sets: untangling, simultaneous embeddings.

All results carry exactly-verified drawings; shared vertices are placed at
bit-identical rational coordinates across drawings.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .embedding import EmbeddedGraph, triangulate
from .errors import TooLarge, VertexSetMismatch
from .extractors import OrderedFreeSet, planar_freeset
from .rational import Point
from .realize import (
    PolyDrawing,
    _rotate_point,
    checked_drawing,
    free_realize,
    tutte_solve,
    verify_drawing,
)

F = Fraction


@dataclass(frozen=True)
class UntangleResult:
    drawing: PolyDrawing
    fixed: tuple[int, ...]
    free_set_size: int

    @property
    def moved(self) -> int:
        return self.drawing.graph.n - len(self.fixed)


@dataclass(frozen=True)
class SimultaneousResult:
    """Drawings agreeing on a shared vertex set (with map) or point set."""

    drawings: tuple[PolyDrawing, ...]
    shared_vertices: tuple[int, ...] | None
    shared_points: tuple[Point, ...]
    bound_met: str


def lis_lds(seq) -> tuple[list[int], str]:
    """Longest monotone subsequence of distinct values (indices returned).

    The longer of the increasing and decreasing subsequences wins, ties go
    to increasing; the result has length at least ceil(sqrt(len))."""
    vals = list(seq)
    n = len(vals)
    if len(set(vals)) != n:
        raise ValueError("values must be distinct")

    def longest(cmp) -> list[int]:
        best = [1] * n
        prev = [-1] * n
        for i in range(n):
            for j in range(i):
                if cmp(vals[j], vals[i]) and best[j] + 1 > best[i]:
                    best[i] = best[j] + 1
                    prev[i] = j
        end = max(range(n), key=lambda i: (best[i], -i))
        out = []
        while end != -1:
            out.append(end)
            end = prev[end]
        return out[::-1]

    inc = longest(lambda a, b: a < b)
    dec = longest(lambda a, b: a > b)
    if len(inc) >= len(dec):
        return inc, "increasing"
    return dec, "decreasing"


def _distinct_x_rotation(points: list[Point]) -> int:
    k = 0
    pts = points
    while len({p[0] for p in pts}) != len(pts):
        k += 1
        pts = [_rotate_point(p, k) for p in points]
    return k


def untangle(g: EmbeddedGraph, positions) -> UntangleResult:
    """Crossing-free redrawing keeping at least ceil(sqrt(k)) vertices of a
    size-k free set bit-exactly at their input positions.

    An input drawing that is already crossing-free is returned unchanged
    with every vertex fixed.
    """
    pos = {v: (F(x), F(y)) for v, (x, y) in dict(positions).items()}
    if len(pos) != g.n or len(set(pos.values())) != g.n:
        raise VertexSetMismatch("need one distinct position per vertex")

    given = PolyDrawing(graph=g, pos=pos, provenance="input")
    if verify_drawing(g, given) is None:
        return UntangleResult(drawing=replace(given, verified=True),
                              fixed=tuple(range(g.n)),
                              free_set_size=g.n)

    k = _distinct_x_rotation([pos[v] for v in range(g.n)])
    rotated = {v: _rotate_point(p, k) for v, p in pos.items()}

    fs = planar_freeset(g)
    xs = [rotated[v][0] for v in fs.order]
    idx, direction = lis_lds(xs)
    if direction == "decreasing":
        fs = fs.reversed()
        m = len(fs.order)
        idx = sorted(m - 1 - i for i in idx)
    chosen = [fs.order[i] for i in idx]
    sub = fs.restricted(chosen)

    d = free_realize(g, sub, [rotated[v] for v in sub.order])
    if k:
        d = checked_drawing(g, replace(
            d,
            pos={v: _rotate_point(p, -k) for v, p in d.pos.items()},
            bends={e: tuple(_rotate_point(p, -k) for p in b)
                   for e, b in d.bends.items()},
            verified=False))
    for v in chosen:
        assert d.pos[v] == pos[v]
    return UntangleResult(drawing=replace(d, provenance="untangled"),
                          fixed=tuple(sub.order),
                          free_set_size=len(fs.order))


def _plain_drawing(g: EmbeddedGraph, scale: int = 1 << 12) -> PolyDrawing:
    """Any verified straight-line drawing: Tutte on a triangulated copy."""
    t, _ = triangulate(g)
    outer = [u for u, _ in t.faces[t.outer_face].walk]
    pos = tutte_solve(t, outer, [(0, 0), (scale, 0), (0, scale)])
    return checked_drawing(g, PolyDrawing(graph=g, pos=pos,
                                          provenance="tutte-base"))


def sge_nomap(g1: EmbeddedGraph, g2: EmbeddedGraph) -> SimultaneousResult:
    """Simultaneous embedding without mapping: a point set of size |V(G1)|
    hosting crossing-free drawings of both graphs.

    G2 is drawn first; a free set of G1 is then realized onto G2's points,
    so G2's point set is a subset of G1's.
    """
    fs = planar_freeset(g1)
    if g2.n > len(fs.order):
        raise TooLarge(f"G2 has {g2.n} vertices but the free set found in "
                       f"G1 has size {len(fs.order)}")
    d2 = _plain_drawing(g2)
    targets = [d2.pos[v] for v in range(g2.n)]
    sub = fs.restricted(fs.order[:g2.n])
    d1 = free_realize(g1, sub, targets)
    points = tuple(sorted(d1.pos[v] for v in range(g1.n)))
    assert set(targets) <= set(points)
    return SimultaneousResult(
        drawings=(d1, d2),
        shared_vertices=None,
        shared_points=points,
        bound_met=f"|V(G2)|={g2.n} <= free set {len(fs.order)}",
    )


def _rot90(d: PolyDrawing) -> PolyDrawing:
    pos = {v: (-y, x) for v, (x, y) in d.pos.items()}
    bends = {e: tuple((-y, x) for x, y in b) for e, b in d.bends.items()}
    return checked_drawing(d.graph, replace(d, pos=pos, bends=bends,
                                            verified=False))


def _psge_pair(g1, g2, fs1: OrderedFreeSet, fs2: OrderedFreeSet,
               shared: list[int]) -> tuple[PolyDrawing, PolyDrawing, dict]:
    """Draw two graphs with the shared set at (rank-in-G1, rank-in-G2)."""
    ord1 = [v for v in fs1.order if v in set(shared)]
    ord2 = [v for v in fs2.order if v in set(shared)]
    rank1 = {v: i + 1 for i, v in enumerate(ord1)}
    rank2 = {v: i + 1 for i, v in enumerate(ord2)}
    target = {v: (F(rank1[v]), F(rank2[v])) for v in shared}

    d1 = free_realize(g1, fs1.restricted(ord1), [target[v] for v in ord1])
    # swap the axis roles for the second graph, then rotate back
    pre = [(F(rank2[v]), F(-rank1[v])) for v in ord2]
    d2 = _rot90(free_realize(g2, fs2.restricted(ord2), pre))
    for v in shared:
        if d1.pos[v] != target[v] or d2.pos[v] != target[v]:
            raise AssertionError(f"shared vertex {v} mismatch")
    return d1, d2, target


def psge_two(g1: EmbeddedGraph, g2: EmbeddedGraph) -> SimultaneousResult:
    """Partial simultaneous geometric embedding with mapping for two graphs
    on the same vertex set."""
    if g1.n != g2.n:
        raise VertexSetMismatch("graphs must share their vertex set")
    fs1 = planar_freeset(g1)
    fs2 = planar_freeset(g2, fs1.order)
    shared = [v for v in fs2.order]
    d1, d2, target = _psge_pair(g1, g2, fs1, fs2, shared)
    return SimultaneousResult(
        drawings=(d1, d2),
        shared_vertices=tuple(shared),
        shared_points=tuple(target[v] for v in shared),
        bound_met=f"|V'|={len(shared)}",
    )


def psge_many(graphs) -> SimultaneousResult:
    """Partial simultaneous geometric embedding with mapping for r >= 2
    graphs on the same vertex set.

    A common free set is found by iterated restriction, then refined by
    monotone subsequences against each further graph's order; the achieved
    size is at least |S|^(1/2^(r-2)) for the common set S found.
    """
    graphs = list(graphs)
    r = len(graphs)
    if r < 2:
        raise VertexSetMismatch("need at least two graphs")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise VertexSetMismatch("graphs must share their vertex set")

    free_sets = []
    xs = None
    for g in graphs:
        fs = planar_freeset(g, xs)
        free_sets.append(fs)
        xs = fs.order
    common = list(free_sets[-1].order)
    s_size = len(common)

    # refine so the shared order is monotone for every graph beyond the two
    # realized directly
    order2 = [v for v in free_sets[1].order if v in set(common)]
    current = order2
    for i in range(2, r):
        pos_i = {v: j for j, v in enumerate(free_sets[i].order)}
        idx, _ = lis_lds([pos_i[v] for v in current])
        current = [current[j] for j in idx]
    shared = current

    d1, d2, target = _psge_pair(graphs[0], graphs[1],
                                free_sets[0], free_sets[1], shared)
    drawings = [d1, d2]
    for i in range(2, r):
        fs = free_sets[i]
        ordered = [v for v in fs.order if v in set(shared)]
        rank2 = {v: j for j, v in enumerate(shared)}
        seq = [rank2[v] for v in ordered]
        if any(a > b for a, b in zip(seq, seq[1:])):
            fs = fs.reversed()
            ordered = ordered[::-1]
        pre = [(target[v][1], -target[v][0]) for v in ordered]
        di = _rot90(free_realize(graphs[i], fs.restricted(ordered), pre))
        for v in shared:
            if di.pos[v] != target[v]:
                raise AssertionError(f"shared vertex {v} mismatch")
        drawings.append(di)

    bound = 1
    if shared:
        bound = max(1, _iroot_ceiling(s_size, 2 ** (r - 2)))
    return SimultaneousResult(
        drawings=tuple(drawings),
        shared_vertices=tuple(shared),
        shared_points=tuple(target[v] for v in shared),
        bound_met=f"|V'|={len(shared)} >= ceil(|S|^(1/2^(r-2)))={bound} "
                  f"for |S|={s_size}",
    )


def _iroot_ceiling(value: int, power: int) -> int:
    """Smallest k with k**power >= value."""
    if value <= 1:
        return value
    k = max(1, round(value ** (1.0 / power)))
    while k ** power >= value:
        k -= 1
    while k ** power < value:
        k += 1
    return k
