from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from freeset.canonical import canonical_order
from freeset.errors import SizeMismatch, YNotOnOuterFace
from freeset.extractors import antichain_freeset, planar_freeset
from freeset.generators import path, random_triangulation
from freeset.realize import (
    PolyDrawing,
    free_realize,
    halfplane_draw,
    perturb_scale,
    realize_collinear,
    straighten_heuristic,
    tutte_solve,
    verify_drawing,
)


def antichain_pair(k4):
    cs = canonical_order(k4)
    return antichain_freeset(k4, cs, (3, 2))


class TestVerify:
    def test_k4_barycenter_ok(self, k4):
        pos = {0: (F(0), F(0)), 1: (F(4), F(0)), 2: (F(0), F(4)),
               3: (F(4, 3), F(4, 3))}
        d = PolyDrawing(graph=k4, pos=pos)
        assert verify_drawing(k4, d) is None

    def test_center_outside_reports_crossing(self, k4):
        pos = {0: (F(0), F(0)), 1: (F(4), F(0)), 2: (F(0), F(4)),
               3: (F(10), F(10))}
        d = PolyDrawing(graph=k4, pos=pos)
        v = verify_drawing(k4, d)
        assert v is not None and v.kind == "crossing"

    def test_vertex_on_edge_midpoint(self):
        g = path(3)
        pos = {0: (F(0), F(0)), 1: (F(1), F(0)), 2: (F(2), F(0))}
        # vertex 1 between 0 and 2 is fine (no edge 0-2); put 2 on edge 0-1
        pos2 = {0: (F(0), F(0)), 1: (F(2), F(0)), 2: (F(1), F(0))}
        assert verify_drawing(g, PolyDrawing(graph=g, pos=pos)) is None
        v = verify_drawing(g, PolyDrawing(graph=g, pos=pos2))
        assert v is not None and v.kind == "vertex-on-edge"

    def test_coincident_vertices(self, k4):
        pos = {0: (F(0), F(0)), 1: (F(4), F(0)), 2: (F(0), F(4)),
               3: (F(0), F(0))}
        v = verify_drawing(k4, PolyDrawing(graph=k4, pos=pos))
        assert v is not None and v.kind == "coincident-vertices"

    def test_bent_edge_fold_back(self):
        g = path(2)
        d = PolyDrawing(graph=g, pos={0: (F(0), F(0)), 1: (F(1), F(0))},
                        bends={(0, 1): ((F(3), F(0)),)})
        v = verify_drawing(g, d)
        assert v is not None


class TestTutte:
    def test_k4_center_at_barycenter(self, k4):
        pos = tutte_solve(k4, [0, 1, 2], [(0, 0), (4, 0), (0, 4)])
        assert pos[3] == (F(4, 3), F(4, 3))

    def test_interior_barycentric_identity(self):
        from freeset.generators import octahedron
        g = octahedron()
        outer = [u for u, _ in g.faces[g.outer_face].walk]
        pos = tutte_solve(g, outer, [(0, 0), (8, 0), (0, 8)])
        d = PolyDrawing(graph=g, pos=pos)
        assert verify_drawing(g, d) is None
        # interior vertices satisfy the barycentric identity exactly
        fixed = set(outer)
        for v in range(g.n):
            if v in fixed:
                continue
            nbrs = g.rot[v]
            assert pos[v][0] * len(nbrs) == sum(pos[u][0] for u in nbrs)
            assert pos[v][1] * len(nbrs) == sum(pos[u][1] for u in nbrs)

    def test_nonconvex_boundary_degenerates(self, octa):
        outer = [u for u, _ in octa.faces[octa.outer_face].walk]
        other = [v for v in range(6) if v not in outer]
        cycle = outer + [other[0]]
        with pytest.raises(Exception):
            tutte_solve(octa, cycle[:3] + [other[0]],
                        [(0, 0), (4, 0), (2, 1), (2, -5)])


class TestHalfplane:
    def test_star_below(self):
        from freeset import build_embedded
        # hub 3 joined to every vertex of the axis path 0-1-2
        g = build_embedded(4, [[1, 3], [2, 0, 3], [1, 3], [2, 1, 0]])
        pos = halfplane_draw(g, [0, 1, 2], [0, 1, 2], side="below")
        assert pos[3][1] < 0
        for i, v in enumerate([0, 1, 2]):
            assert pos[v] == (F(i), F(0))

    def test_path_identity(self):
        g = path(4)
        pos = halfplane_draw(g, [0, 1, 2, 3], [0, 1, 2, 3], side="below")
        for v in range(4):
            assert pos[v] == (F(v), F(0))

    def test_axis_not_on_outer_face(self, octa):
        with pytest.raises(YNotOnOuterFace):
            halfplane_draw(octa, [0, 5], [0, 1], side="below")


class TestRealizeCollinear:
    def test_single_edge(self):
        g = path(2)
        fs = planar_freeset(g)
        d = realize_collinear(g, fs, [0, 1])
        assert d.verified
        assert sorted(d.pos.values()) == [(F(0), F(0)), (F(1), F(0))]

    def test_k4_antichain(self, k4):
        fs = antichain_pair(k4)
        d = realize_collinear(k4, fs, [0, 1])
        assert d.pos[3] == (F(0), F(0))
        assert d.pos[2] == (F(1), F(0))
        assert list(d.bends) == [(0, 1)]
        # below-half strictly below, above-half strictly above
        ys = {v: d.pos[v][1] for v in (0, 1)}
        assert min(ys.values()) < 0 < max(ys.values())

    def test_axis_edges_disjoint(self):
        g = random_triangulation(30, 21)
        fs = planar_freeset(g)
        xs = list(range(len(fs.order)))
        d = realize_collinear(g, fs, xs)
        axis = sorted(p for p in d.pos.values() if p[1] == 0)
        assert len(set(axis)) == len(axis)

    def test_sides_match_partition(self):
        from freeset.curves import side_partition
        g = random_triangulation(40, 33)
        fs = planar_freeset(g)
        sp = side_partition(g, fs.certificate)
        d = realize_collinear(g, fs, list(range(len(fs.order))))
        for v in sp.X:
            assert d.pos[v][1] < 0
        for v in sp.Z:
            assert d.pos[v][1] > 0
        for v in sp.Y:
            assert d.pos[v][1] == 0

    def test_wrong_count(self, k4):
        fs = antichain_pair(k4)
        with pytest.raises(SizeMismatch):
            realize_collinear(k4, fs, [0, 1, 2])


class TestPerturbAndFree:
    def test_zero_targets_identity(self, k4):
        fs = antichain_pair(k4)
        d = realize_collinear(k4, fs, [0, 1])
        d2 = perturb_scale(d, fs.order, [0, 0])
        assert d2.pos == d.pos

    def test_k4_exact_targets(self, k4):
        fs = antichain_pair(k4)
        d = realize_collinear(k4, fs, [0, 1])
        d2 = perturb_scale(d, fs.order, [3, -2])
        assert d2.pos[3] == (F(0), F(3))
        assert d2.pos[2] == (F(1), F(-2))
        assert d2.verified

    def test_extreme_target_hits_exactly(self, k4):
        fs = antichain_pair(k4)
        d = realize_collinear(k4, fs, [0, 1])
        d2 = perturb_scale(d, fs.order, [F(22, 7), F(-1, 3)])
        assert d2.pos[3] == (F(0), F(22, 7))
        assert d2.pos[2] == (F(1), F(-1, 3))

    def test_free_realize_duplicate_x(self, k4):
        fs = antichain_pair(k4)
        d = free_realize(k4, fs, [(0, 0), (0, 1)])
        assert {d.pos[3], d.pos[2]} == {(F(0), F(0)), (F(0), F(1))}

    def test_free_realize_mismatch(self, k4):
        fs = antichain_pair(k4)
        with pytest.raises(SizeMismatch):
            free_realize(k4, fs, [(0, 0)])
        with pytest.raises(SizeMismatch):
            free_realize(k4, fs, [(0, 0), (0, 0)])

    @pytest.mark.parametrize("seed", range(4))
    def test_random_pointsets(self, seed):
        rng = random.Random(seed)
        g = random_triangulation(rng.randint(8, 40), seed + 100)
        fs = planar_freeset(g)
        pts = set()
        while len(pts) < len(fs.order):
            pts.add((F(rng.randint(-60, 60), rng.randint(1, 9)),
                     F(rng.randint(-60, 60), rng.randint(1, 9))))
        d = free_realize(g, fs, sorted(pts))
        assert d.verified
        assert {d.pos[v] for v in fs.order} == pts


class TestStraighten:
    def test_bends_never_increase(self, k4):
        fs = antichain_pair(k4)
        d = free_realize(k4, fs, [(0, 3), (1, -2)])
        before = d.bend_count()
        d2 = straighten_heuristic(d)
        assert d2.bend_count() <= before
        assert verify_drawing(k4, d2) is None

    def test_collinear_bend_removed(self):
        g = path(2)
        d = PolyDrawing(graph=g, pos={0: (F(0), F(0)), 1: (F(2), F(0))},
                        bends={(0, 1): ((F(1), F(0)),)}, verified=True)
        d2 = straighten_heuristic(d)
        assert d2.bend_count() == 0
