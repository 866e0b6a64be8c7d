from __future__ import annotations

import math
import random
from fractions import Fraction as F

import pytest

from freeset.applications import (
    lis_lds,
    psge_many,
    psge_two,
    sge_nomap,
    untangle,
)
from freeset.bench import _random_tree
from freeset.errors import TooLarge, VertexSetMismatch
from freeset.extractors import planar_freeset
from freeset.generators import path, random_triangulation
from freeset.realize import tutte_solve


class TestLisLds:
    def test_increasing(self):
        assert lis_lds([1, 2, 3]) == ([0, 1, 2], "increasing")

    def test_decreasing(self):
        assert lis_lds([3, 2, 1]) == ([0, 1, 2], "decreasing")

    def test_square_bound(self):
        idx, _ = lis_lds([2, 4, 1, 3])
        assert len(idx) == 2

    def test_erdos_szekeres_floor(self):
        rng = random.Random(0)
        for n in (9, 16, 25):
            vals = list(range(n))
            rng.shuffle(vals)
            idx, _ = lis_lds(vals)
            assert len(idx) >= math.isqrt(n)


class TestUntangle:
    def test_planar_input_unchanged(self):
        g = random_triangulation(12, 1)
        outer = [u for u, _ in g.faces[g.outer_face].walk]
        pos = tutte_solve(g, outer, [(0, 0), (64, 0), (0, 64)])
        res = untangle(g, pos)
        assert len(res.fixed) == 12
        assert res.drawing.pos == {v: (F(x), F(y))
                                   for v, (x, y) in pos.items()}

    def test_tangled_path(self):
        g = path(4)
        tangled = {0: (0, 0), 1: (2, 0), 2: (1, 0), 3: (3, 0)}
        res = untangle(g, tangled)
        assert res.drawing.verified
        assert len(res.fixed) >= 2
        for v in res.fixed:
            x, y = tangled[v]
            assert res.drawing.pos[v] == (F(x), F(y))

    @pytest.mark.parametrize("seed", range(3))
    def test_random_bounds(self, seed):
        rng = random.Random(seed)
        n = rng.randint(10, 50)
        g = random_triangulation(n, seed + 50)
        used, pos = set(), {}
        for v in range(n):
            while True:
                p = (F(rng.randint(-99, 99)), F(rng.randint(-99, 99)))
                if p not in used:
                    used.add(p)
                    pos[v] = p
                    break
        res = untangle(g, pos)
        k = res.free_set_size
        assert len(res.fixed) >= math.isqrt(max(k - 1, 0)) + 1
        assert len(res.fixed) >= math.ceil((n / 2) ** 0.25)
        for v in res.fixed:
            assert res.drawing.pos[v] == pos[v]
        assert res.moved + len(res.fixed) == n

    def test_duplicate_x_rotation_path(self):
        g = path(5)
        pos = {0: (0, 0), 1: (0, 1), 2: (0, 2), 3: (1, 0), 4: (1, 1)}
        res = untangle(g, pos)
        assert res.drawing.verified
        for v in res.fixed:
            x, y = pos[v]
            assert res.drawing.pos[v] == (F(x), F(y))


class TestSgeNomap:
    def test_triangle_into_triangulation(self):
        from freeset import build_embedded
        g1 = random_triangulation(50, 7)
        g2 = build_embedded(3, [[1, 2], [2, 0], [0, 1]])
        res = sge_nomap(g1, g2)
        assert all(d.verified for d in res.drawings)
        p2 = {res.drawings[1].pos[v] for v in range(3)}
        p1 = {res.drawings[0].pos[v] for v in range(50)}
        assert p2 <= p1
        assert len(res.shared_points) == 50

    def test_too_large(self, k4):
        g2 = random_triangulation(6, 1)
        with pytest.raises(TooLarge):
            sge_nomap(k4, g2)  # K4's free set has size 2 < 6


class TestPsge:
    def test_pair_positions_identical(self):
        g1 = random_triangulation(32, 5)
        g2 = random_triangulation(32, 6)
        res = psge_two(g1, g2)
        assert len(res.shared_vertices) >= 2
        for i, v in enumerate(res.shared_vertices):
            assert res.drawings[0].pos[v] == res.shared_points[i]
            assert res.drawings[1].pos[v] == res.shared_points[i]

    def test_same_graph_pair(self):
        g = random_triangulation(24, 9)
        res = psge_two(g, g)
        fs = planar_freeset(g)
        assert len(res.shared_vertices) == len(fs.order)

    def test_vertex_set_mismatch(self, k4):
        with pytest.raises(VertexSetMismatch):
            psge_two(k4, random_triangulation(5, 0))

    def test_triple_trees(self):
        gs = [_random_tree(16, s) for s in (11, 12, 13)]
        res = psge_many(gs)
        assert len(res.shared_vertices) >= 2
        assert len(res.drawings) == 3
        for i, v in enumerate(res.shared_vertices):
            for d in res.drawings:
                assert d.pos[v] == res.shared_points[i]

    def test_two_graph_reduction(self):
        g1 = random_triangulation(16, 21)
        g2 = random_triangulation(16, 22)
        res = psge_many([g1, g2])
        assert len(res.drawings) == 2
        assert len(res.shared_vertices) >= 2
