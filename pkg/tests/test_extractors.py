from __future__ import annotations

import random

import pytest

from freeset.canonical import antichain_bound, canonical_order
from freeset.curves import validate_curve
from freeset.errors import (
    AntichainTooShort,
    BadLevelAssignment,
    ChainTooShort,
    NoIndependentPair,
    NotMaximalOuterplane,
    NotSpanningTree,
    TooSmall,
)
from freeset.extractors import (
    LevelAssignment,
    antichain_freeset,
    bfs_levels,
    chain_freeset,
    dualcycle_freeset,
    level_freeset,
    maxleaf_tree,
    onebend_freeset,
    outerplanar_greedy,
    planar_freeset,
)
from freeset.generators import (
    grid,
    icosahedron,
    maximal_outerplanar,
    path,
    random_triangulation,
    star,
)


class TestOuterplanar:
    def test_fan6(self, fan6):
        res = outerplanar_greedy(fan6)
        s = res.free_set.order
        assert len(s) == 5 and 0 not in s
        assert res.n0 + res.n1 + res.n2 == len(s)
        assert res.n0 + 2 * res.n1 + 3 * res.n2 == 6
        assert res.n0 - res.n2 >= 2

    def test_four_vertices(self):
        res = outerplanar_greedy(maximal_outerplanar(4, 0))
        assert len(res.free_set.order) == 3

    def test_triangle_too_small(self):
        with pytest.raises(TooSmall):
            outerplanar_greedy(maximal_outerplanar(3, 0))

    def test_not_maximal_rejected(self):
        from freeset.generators import cycle
        with pytest.raises(NotMaximalOuterplane):
            outerplanar_greedy(cycle(5))

    def test_independence_in_chords(self):
        rng = random.Random(1)
        for _ in range(10):
            n = rng.randint(4, 40)
            g = maximal_outerplanar(n, rng.randrange(10 ** 6))
            res = outerplanar_greedy(g)
            s = set(res.free_set.order)
            outer_edges = g.faces[g.outer_face].edge_set()
            for (u, v) in g.edges:
                if (u, v) not in outer_edges:
                    assert not (u in s and v in s)


class TestChainAntichain:
    def test_k4_chain_gives_pair(self, k4):
        cs = canonical_order(k4)
        fs = chain_freeset(k4, cs, (0, 2, 1))
        assert len(fs.order) == 2
        assert validate_curve(k4, fs.certificate) is None

    def test_chain_too_short(self, k4):
        cs = canonical_order(k4)
        with pytest.raises(ChainTooShort):
            chain_freeset(k4, cs, (0, 1))

    def test_k4_antichain_matches_spec_example(self, k4):
        cs = canonical_order(k4)
        fs = antichain_freeset(k4, cs, (3, 2))
        assert fs.order == (3, 2)
        kinds = [type(it).__name__ for it in fs.certificate.items]
        assert kinds.count("CrossItem") == 1
        assert kinds.count("AlongItem") == 1
        assert validate_curve(k4, fs.certificate) is None

    def test_antichain_too_short(self, k4):
        cs = canonical_order(k4)
        with pytest.raises(AntichainTooShort):
            antichain_freeset(k4, cs, (2,))

    def test_octahedron_antichain(self, octa):
        from freeset.canonical import chain_or_antichain
        cs = canonical_order(octa)
        pair = next((a, b) for a in range(6) for b in range(a + 1, 6)
                    if not cs.comparable(a, b))
        kind, data = chain_or_antichain(cs, pair)
        assert kind == "antichain"
        fs = antichain_freeset(octa, cs, data)
        assert len(fs.order) == len(data)
        assert validate_curve(octa, fs.certificate) is None

    def test_k4_chain_curve_sides(self, k4):
        from freeset.curves import side_partition
        cs = canonical_order(k4)
        fs = chain_freeset(k4, cs, (0, 2, 1))
        sp = side_partition(k4, fs.certificate)
        # the cycle interior (the chord side) sits on one side, nothing on
        # the other: vertex 3 and the skipped cycle vertex 2
        inside = sp.X if sp.X else sp.Z
        assert inside == {2, 3}

    def test_hamiltonian_frame_path_large_set(self):
        t = random_triangulation(40, 11)
        cs = canonical_order(t)
        from freeset.canonical import chain_or_antichain
        kind, data = chain_or_antichain(cs, range(40))
        if kind == "chain" and len(data) >= 4:
            fs = chain_freeset(t, cs, data)
            assert 2 * len(fs.order) >= len(data) + 2


class TestPlanarFreeset:
    def test_k4(self, k4):
        fs = planar_freeset(k4)
        assert len(fs.order) == 2

    def test_icosahedron(self):
        fs = planar_freeset(icosahedron())
        assert len(fs.order) >= 3  # ceil(sqrt(6))

    @pytest.mark.parametrize("n,seed", [(10, 4), (50, 7), (120, 9)])
    def test_random_bound(self, n, seed):
        g = random_triangulation(n, seed)
        fs = planar_freeset(g)
        assert len(fs.order) >= antichain_bound(n)
        assert validate_curve(g, fs.certificate) is None

    def test_certificate_on_original_graph(self):
        g = path(6)  # triangulation happens internally
        fs = planar_freeset(g)
        assert validate_curve(g, fs.certificate) is None
        for it in fs.certificate.items:
            if hasattr(it, "edge"):
                assert it.edge in g.edges

    def test_restricted_target(self):
        g = random_triangulation(40, 2)
        xs = list(range(0, 40, 3))
        fs = planar_freeset(g, xs)
        assert set(fs.order) <= set(xs)
        assert len(fs.order) >= 2

    def test_order_is_certificate_subsequence(self):
        g = random_triangulation(30, 13)
        fs = planar_freeset(g)
        vo = list(fs.certificate.vertex_order())
        it = iter(vo)
        assert all(v in it for v in fs.order)


class TestLevel:
    def test_path5(self):
        fs = level_freeset(path(5), bfs_levels(path(5), 0))
        assert fs.order == (0, 2, 4)

    def test_star(self):
        fs = level_freeset(star(6), bfs_levels(star(6), 0))
        assert len(fs.order) == 5

    def test_grid_rows(self):
        g = grid(3, 3)
        la = LevelAssignment(levels={v: v // 3 for v in range(9)}, span=1,
                             order={r: tuple(range(3 * r, 3 * r + 3))
                                    for r in range(3)})
        fs = level_freeset(g, la)
        assert len(fs.order) == 6

    def test_bad_assignment_rejected(self):
        g = grid(3, 3)
        la = LevelAssignment(levels={v: 0 for v in range(9)}, span=1,
                             order={0: tuple(range(9))})
        with pytest.raises(BadLevelAssignment):
            level_freeset(g, la)

    def test_restricted_target_bound(self):
        from freeset.bench import _random_tree
        t = _random_tree(30, 3)
        xs = list(range(0, 30, 2))
        fs = level_freeset(t, bfs_levels(t, 0), xs)
        assert set(fs.order) <= set(xs)
        assert 2 * len(fs.order) >= len(xs)


class TestTrees:
    def test_star_tree_leaves(self):
        g = star(7)
        tree = maxleaf_tree(g)
        assert tree.leaf_count == 6

    def test_path_two_leaves(self):
        tree = maxleaf_tree(path(8))
        assert tree.leaf_count == 2

    def test_octahedron_spans(self, octa):
        tree = maxleaf_tree(octa)
        assert len(tree.edges) == 5
        seen = {0}
        stack = [0]
        adj = {v: tree.neighbors(octa, v) for v in range(6)}
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        assert seen == set(range(6))

    def test_onebend_k4_star_tree(self, k4):
        from freeset.extractors import SpanningTree
        tree = SpanningTree(edges=frozenset({(0, 1), (0, 2), (0, 3)}),
                            leaf_count=3)
        fs, mapping = onebend_freeset(k4, tree)
        assert set(fs.order) == {1, 2, 3}
        assert fs.order[0] == 1  # rotation order around the hub, from b
        assert validate_curve(fs.graph, fs.certificate) is None

    def test_onebend_crossings_cover_nontree_halves(self, octa):
        tree = maxleaf_tree(octa)
        fs, mapping = onebend_freeset(octa, tree)
        assert validate_curve(fs.graph, fs.certificate) is None
        crossed = set(fs.certificate.crossed_edges())
        assert len(crossed) == len(set(crossed))
        # leaves exactly the vertex items
        leaves = {v for v in range(octa.n)
                  if len(tree.neighbors(octa, v)) == 1}
        assert set(fs.order) == leaves

    def test_goldner_harary_ceiling(self, gh):
        for seed in range(10):
            tree = maxleaf_tree(gh, seed=seed)
            fs, _ = onebend_freeset(gh, tree)
            assert len(fs.order) <= 10

    def test_not_spanning_rejected(self, k4):
        from freeset.extractors import SpanningTree
        with pytest.raises(NotSpanningTree):
            onebend_freeset(k4, SpanningTree(edges=frozenset({(0, 1)}),
                                             leaf_count=2))


class TestDualCycle:
    def test_octahedron(self, octa):
        from tests.test_curves import hamiltonian_dual_cycle
        fs = dualcycle_freeset(octa, hamiltonian_dual_cycle(octa))
        assert len(fs.order) >= 2
        assert validate_curve(octa, fs.certificate) is None

    def test_k4_no_independent_pair(self, k4):
        inner = [f.id for f in k4.faces if not f.is_outer]
        with pytest.raises(NoIndependentPair):
            dualcycle_freeset(k4, inner)
