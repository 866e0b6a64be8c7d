from __future__ import annotations

import pytest

from freeset import (
    build_embedded,
    cycle_sides,
    dual_graph,
    induce,
    subdivide,
    triangulate,
)
from freeset.embedding import norm_edge
from freeset.errors import (
    Disconnected,
    MultiEdgeOrLoop,
    NonPlanarRotation,
    TooSmall,
    UnknownElement,
)
from freeset.generators import (
    cycle,
    fan,
    generate,
    GeneratorSpec,
    grid,
    icosahedron,
    maximal_outerplanar,
    path,
    random_triangulation,
    stacked_3tree,
    star,
)


def check_consistency(g):
    """Euler identity, face-size sum, and rotation/face agreement."""
    m = len(g.edges)
    assert g.n - m + len(g.faces) == 2
    assert sum(f.size for f in g.faces) == 2 * m
    for f in g.faces:
        k = len(f.walk)
        for i, (u, v) in enumerate(f.walk):
            nu, nv = f.walk[(i + 1) % k]
            assert nu == v
            assert nv == g.rot[v][g.rot_index(v, u) - 1]
            assert g.face_of(u, v) == f.id


class TestBuild:
    def test_k4_has_four_faces(self, k4):
        assert len(k4.faces) == 4
        check_consistency(k4)

    def test_k5_rejected(self):
        rot = [[u for u in range(5) if u != v] for v in range(5)]
        with pytest.raises(NonPlanarRotation):
            build_embedded(5, rot)

    def test_octahedron_eight_triangles(self, octa):
        assert len(octa.faces) == 8
        assert all(f.size == 3 for f in octa.faces)
        check_consistency(octa)

    def test_loop_rejected(self):
        with pytest.raises(MultiEdgeOrLoop):
            build_embedded(2, [[1, 1], [0, 0]])

    def test_disconnected_rejected(self):
        with pytest.raises(Disconnected):
            build_embedded(4, [[1], [0], [3], [2]])

    def test_asymmetric_rejected(self):
        with pytest.raises(UnknownElement):
            build_embedded(3, [[1, 2], [0, 2], [0]])

    def test_outer_hint_resolution(self, k4):
        assert k4.faces[k4.outer_face].vertex_set() == frozenset({0, 1, 2})

    def test_single_vertex(self):
        g = build_embedded(1, [[]])
        assert len(g.faces) == 1


class TestDual:
    def test_k4_self_dual(self, k4):
        d, mapping = dual_graph(k4)
        assert d.n == 4
        assert all(d.degree(v) == 3 for v in range(4))
        check_consistency(d)
        assert len(mapping.edge_forward) == 6

    def test_weak_dual_of_fan_is_path(self, fan6):
        d, _ = dual_graph(fan6, weak=True)
        assert d.n == 4
        degs = sorted(d.degree(v) for v in range(d.n))
        assert degs == [1, 1, 2, 2]

    def test_octahedron_dual_is_cube(self, octa):
        d, _ = dual_graph(octa)
        assert d.n == 8
        assert all(d.degree(v) == 3 for v in range(8))
        assert all(f.size == 4 for f in d.faces)
        check_consistency(d)

    def test_tree_dual_rejected(self):
        with pytest.raises(MultiEdgeOrLoop):
            dual_graph(path(3))

    def test_mapping_roundtrip(self, octa):
        d, mp = dual_graph(octa)
        for e, de in mp.edge_forward.items():
            assert mp.edge_backward[de] == e
        for f, v in mp.vertex_forward.items():
            assert mp.vertex_backward[v] == f


class TestTriangulate:
    def test_c4_to_k4(self):
        g = cycle(4)
        t, mp = triangulate(g)
        assert len(t.edges) == 6
        assert t.is_triangulation()
        assert len(mp.new_edges) == 2
        # one diagonal inside, one outside: they must be the two distinct ones
        assert set(mp.new_edges) == {(0, 2), (1, 3)}
        check_consistency(t)

    def test_identity_on_triangulation(self, k4):
        t, mp = triangulate(k4)
        assert mp.new_edges == ()
        assert t.rot == k4.rot

    def test_path_to_triangle(self):
        t, mp = triangulate(path(3))
        assert t.is_triangulation()
        assert len(t.edges) == 3
        for e in path(3).edges:
            assert e in t.edges

    def test_too_small(self):
        with pytest.raises(TooSmall):
            triangulate(path(2))

    @pytest.mark.parametrize("seed", range(8))
    def test_random_inputs(self, seed):
        import random
        rng = random.Random(seed)
        g = maximal_outerplanar(rng.randint(4, 12), seed)
        # drop some chords by inducing on everything (keeps graph) then
        # triangulate the original: must reach 3n-6 and stay simple
        t, mp = triangulate(g)
        assert len(t.edges) == 3 * t.n - 6
        assert t.is_triangulation()
        check_consistency(t)
        # idempotence
        t2, mp2 = triangulate(t)
        assert mp2.new_edges == ()
        # removing added edges recovers the input's face count
        assert len(t.faces) == len(g.faces) + len(mp.new_edges)


class TestDerive:
    def test_subdivide_k3_gives_c6(self):
        g = cycle(3)
        h, mp = subdivide(g, list(g.edges))
        assert h.n == 6
        assert all(h.degree(v) == 2 for v in range(6))
        assert len(h.faces) == 2
        check_consistency(h)

    def test_subdivide_one_edge_of_k4(self, k4):
        h, mp = subdivide(k4, [(0, 1)])
        assert h.n == 5
        assert len(h.edges) == 7
        halves = mp.edge_forward[(0, 1)]
        assert halves == ((0, 4), (1, 4))
        check_consistency(h)

    def test_subdivide_unknown_edge(self, k4):
        with pytest.raises(UnknownElement):
            subdivide(k4, [(0, 5)])

    def test_induce_triangle_from_k4(self, k4):
        h, mp = induce(k4, [0, 3, 1])
        assert h.n == 3
        assert len(h.edges) == 3
        assert sorted(mp.vertex_forward) == [0, 1, 3]
        for old, new in mp.vertex_forward.items():
            assert mp.vertex_backward[new] == old

    def test_induce_disconnected(self, octa):
        from freeset.errors import DisconnectedResult
        with pytest.raises(DisconnectedResult):
            induce(octa, [0, 5])  # opposite poles share no edge


class TestCycleSides:
    def test_k4_outer_cycle(self, k4):
        cs = cycle_sides(k4, [0, 1, 2])
        inner = cs.left if 3 in cs.left else cs.right
        assert inner == {3}
        spokes = [norm_edge(3, u) for u in (0, 1, 2)]
        sides = {cs.edge_side[e] for e in spokes}
        assert len(sides) == 1

    def test_octahedron_equator(self, octa):
        cs = cycle_sides(octa, [1, 2, 3, 4])
        assert {0, 5} == set(cs.left) | set(cs.right)
        assert len(cs.left) == 1 and len(cs.right) == 1
        assert len(cs.faces_left) + len(cs.faces_right) == 8


class TestGenerators:
    def test_goldner_harary_counts(self, gh):
        assert gh.n == 11
        assert len(gh.edges) == 27
        assert gh.is_triangulation()
        check_consistency(gh)

    def test_icosahedron(self):
        g = icosahedron()
        assert g.n == 12
        assert len(g.edges) == 30
        assert len(g.faces) == 20
        assert all(g.degree(v) == 5 for v in range(12))
        check_consistency(g)

    def test_grid_3x3(self):
        g = grid(3, 3)
        assert g.n == 9
        assert len(g.edges) == 12
        inner = [f for f in g.faces if not f.is_outer]
        assert all(f.size == 4 for f in inner)
        check_consistency(g)

    @pytest.mark.parametrize("n,seed", [(5, 1), (10, 2), (25, 3), (50, 7)])
    def test_random_triangulation(self, n, seed):
        g = random_triangulation(n, seed)
        assert g.n == n
        assert len(g.edges) == 3 * n - 6
        assert g.is_triangulation()
        check_consistency(g)

    def test_random_triangulation_deterministic(self):
        assert random_triangulation(50, 7).rot == random_triangulation(50, 7).rot

    @pytest.mark.parametrize("n,seed", [(4, 0), (9, 4), (30, 5)])
    def test_maximal_outerplanar(self, n, seed):
        g = maximal_outerplanar(n, seed)
        assert len(g.edges) == 2 * n - 3
        outer = g.faces[g.outer_face]
        assert outer.size == n
        assert all(f.size == 3 for f in g.faces if not f.is_outer)
        check_consistency(g)

    @pytest.mark.parametrize("n,seed", [(4, 0), (12, 9)])
    def test_stacked_3tree(self, n, seed):
        g = stacked_3tree(n, seed)
        assert g.is_triangulation()
        assert len(g.edges) == 3 * n - 6
        check_consistency(g)

    def test_simple_families(self):
        for g in (path(5), cycle(6), star(6), fan(6)):
            check_consistency(g)

    def test_generate_dispatch(self):
        g = generate(GeneratorSpec("goldner-harary"))
        assert g.n == 11
        from freeset.errors import BadSpec
        with pytest.raises(BadSpec):
            generate(GeneratorSpec("random-triangulation", n=10))  # no seed
        with pytest.raises(BadSpec):
            generate(GeneratorSpec("moebius", n=10))
