import itertools
import math

import numpy as np
import pytest

from ramseylab.core import BIPARTITE, ZERO_RULED, WindowExhausted
from ramseylab.zoo import (BipartiteHalfGraph, BipartiteRadoGraph, CompatibilityGraph,
                           CompleteGraph, DaryTree, EdgelessGraph, HalfGraph, HdGraph,
                           IncreasingStar, InfinitePath, InfiniteStar, LevelDegreeTree,
                           MultipartiteGraph, MultipartiteSpec, RadoComplementGraph,
                           RadoGraph, TreeSpec, TwoCliques, compatibility_graph,
                           lex_subsets_count, rank_subset, tree_graph, unrank_subset)

T = 300

GRAPHS = [RadoGraph(), RadoComplementGraph(), BipartiteRadoGraph(), HalfGraph(),
          BipartiteHalfGraph(), HdGraph(1), HdGraph(2), HdGraph(3), DaryTree(2), DaryTree(3),
          LevelDegreeTree((2, 3, 4)), IncreasingStar(), InfinitePath(), InfiniteStar(),
          CompleteGraph(), EdgelessGraph(), TwoCliques(),
          MultipartiteGraph(MultipartiteSpec((2, 3), None)),
          MultipartiteGraph(MultipartiteSpec((1,), 2)), CompatibilityGraph(DaryTree(2))]


def _brute_common(g, ws, t):
    return [x for x in range(1, t + 1)
            if g.is_vertex(x) and x not in ws and all(g.adjacent(x, w) for w in ws)]


def test_rado_examples():
    g = RadoGraph()
    assert g.adjacent(1, 3) and g.adjacent(3, 1)
    assert g.adjacent(2, 3)
    assert not g.adjacent(1, 4)
    assert [g.clique_member(i) for i in range(1, 5)] == [1, 3, 5, 21]


def test_rado_clique_member_outgrows_budget():
    g = RadoGraph()
    assert g.clique_member(5) == 1048597
    with pytest.raises(WindowExhausted):
        g.clique_member(6)


def test_rado_extension_property():
    # for disjoint U, W in [6] some z is adjacent to all of U and none of W
    g = RadoGraph()
    base = range(1, 7)
    for r in range(0, 7):
        for u in itertools.combinations(base, r):
            rest = [x for x in base if x not in u]
            for k in range(len(rest) + 1):
                for w in itertools.combinations(rest, k):
                    z = next(x for x in range(7, 1 << 8)
                             if all(g.adjacent(x, a) for a in u)
                             and not any(g.adjacent(x, b) for b in w))
                    assert z < 1 << 7


def test_rado_independent_extension():
    g = RadoGraph()
    for xs in [(1,), (1, 2, 3), (5, 9), (4,)]:
        z = g.independent_extension(xs)
        assert z not in xs and not any(g.adjacent(z, x) for x in xs)


def test_bipartite_rado_examples():
    g = BipartiteRadoGraph()
    assert g.adjacent(2, 7)
    assert not g.adjacent(2, 6)
    assert g.adjacent(3, 6)
    assert not g.is_vertex(1)
    assert {ZERO_RULED, BIPARTITE} <= g.traits


def test_half_graph_examples():
    g = HalfGraph()
    assert g.adjacent(1, 2) and g.adjacent(3, 4) and not g.adjacent(2, 3)
    assert g.neighbors_upto(3, 10) == [4, 6, 8, 10]
    assert g.neighbors_upto(4, 8) == [1, 2, 3, 6, 8]


def test_bipartite_half_graph_back_degree():
    g = BipartiteHalfGraph()
    for v in range(1, 200):
        # an even v sees the ceil((v-1)/2) odds below it; an odd v sees nothing below
        assert len(g.back_neighbors(v)) == (-(-(v - 1) // 2) if v % 2 == 0 else 0)
        assert len([u for u in range(1, v) if g.adjacent(u, v)]) == len(g.back_neighbors(v))
    assert g.neighbors_upto(3, 12) == [4, 6, 8, 10, 12]


def test_hd_stage_sizes():
    g = HdGraph(2)
    assert g.n[:4] == [2, 3, 6, 21]
    assert HdGraph(1).n[:4] == [1, 2, 4, 8]
    assert HdGraph(3).n[:3] == [3, 4, 8]


def test_hd_neighbor_sets():
    g = HdGraph(2)
    assert g.back_neighbors(1) == g.back_neighbors(2) == ()
    assert g.back_neighbors(3) == (1, 2)
    assert [g.back_neighbors(v) for v in (4, 5, 6)] == [(1, 2), (1, 3), (2, 3)]
    assert g.back_neighbors(7) == (1, 2) and g.back_neighbors(21) == (5, 6)
    assert g.vertex_for({2, 3}, 1) == 6
    with pytest.raises(ValueError):
        g.vertex_for({1, 2, 3}, 1)


def test_hd_every_d_set_has_witness_each_stage():
    g = HdGraph(2)
    for stage in range(1, 3):
        base = g.n[stage]
        for s in itertools.combinations(range(1, base + 1), 2):
            v = g.vertex_for(s, stage)
            assert g.back_neighbors(v) == s
            assert g.n[stage] < v <= g.n[stage + 1]


def test_hd_is_d_degenerate_on_prefix():
    for d in (1, 2, 3):
        g = HdGraph(d)
        for v in range(1, 200):
            assert len([u for u in range(1, v) if g.adjacent(u, v)]) in (0, d)


def test_subset_ranking_roundtrip():
    for n, d in [(5, 2), (6, 3), (4, 4)]:
        subs = list(itertools.combinations(range(1, n + 1), d))
        assert lex_subsets_count(n, d) == len(subs) == math.comb(n, d)
        for j, s in enumerate(subs):
            assert unrank_subset(n, d, j) == s
            assert rank_subset(n, s) == j


def test_dary_tree_numbering():
    t = DaryTree(2)
    assert list(t.children(1)) == [2, 3]
    assert list(t.children(2)) == [4, 5]
    assert t.parent(7) == 3 and t.depth(7) == 2
    assert t.ancestors(9) == [4, 2, 1]
    with pytest.raises(ValueError):
        DaryTree(0)


def test_level_degree_tree():
    t = LevelDegreeTree((2, 3, 4))
    assert list(t.children(1)) == [2, 3]
    assert list(t.children(2)) == [4, 5]
    assert list(t.children(4)) == [8, 9, 10]
    for v in range(2, 200):
        lvl = t.level(v)
        deg = len(list(t.children(v))) + 1
        assert deg == (2, 3, 4)[min(lvl, 2)]
    with pytest.raises(ValueError):
        LevelDegreeTree((3, 2))


def test_increasing_star_arms():
    s = IncreasingStar()
    assert s.arm(1) == [2] and s.arm(2) == [3, 4] and s.arm(3) == [5, 6, 7]
    assert list(itertools.islice(s.children(1), 4)) == [2, 3, 5, 8]
    assert s.arm_of(6) == (3, 2) and s.parent(6) == 5 and s.parent(5) == 1
    for v in range(2, 500):
        m, pos = s.arm_of(v)
        assert s.arm(m)[pos - 1] == v


def test_path_star_tinf():
    assert InfinitePath().neighbors_upto(5, 10) == [4, 6]
    assert InfiniteStar().neighbors_upto(1, 5) == [2, 3, 4, 5]
    tinf = tree_graph(TreeSpec("tinf"))
    # every vertex sees one earlier vertex and infinitely many later ones
    for v in range(2, 60):
        assert len([u for u in range(1, v) if tinf.adjacent(u, v)]) == 1
        assert len(tinf.neighbors_upto(v, 2 ** 12)) >= 2


def test_tree_spec_validation():
    with pytest.raises(ValueError):
        TreeSpec("bush")
    with pytest.raises(ValueError):
        TreeSpec("levels", degrees=())
    with pytest.raises(ValueError):
        compatibility_graph(TreeSpec("dary", d=1))


def test_multipartite_layout():
    g = MultipartiteGraph(MultipartiteSpec((2, 3), 2))
    assert [g.part_of(v) for v in range(1, 10)] == [0, 0, 1, 1, 1, 2, 3, 2, 3]
    assert g.part_member(3, 1) == 9
    assert BIPARTITE not in g.traits
    inf = MultipartiteGraph(MultipartiteSpec((), None))
    for part in range(5):
        for pos in range(5):
            assert inf.part_of(inf.part_member(part, pos)) == part
    with pytest.raises(ValueError):
        MultipartiteSpec((), 0)
    with pytest.raises(IndexError):
        g.part_member(0, 2)


def test_compatibility_graph():
    c = CompatibilityGraph(DaryTree(2))
    assert c.adjacent(1, 9) and c.adjacent(2, 9) and c.adjacent(4, 9)
    assert not c.adjacent(3, 9) and not c.adjacent(5, 9)
    assert c.level(2) == [4, 5, 6, 7]
    assert all(not c.adjacent(u, v) for u, v in itertools.combinations(c.level(3), 2))


def test_two_cliques_and_edgeless():
    g = TwoCliques()
    assert g.adjacent(1, 3) and not g.adjacent(1, 2)
    assert list(g.iter_common_neighbors((1, 2))) == []
    e = EdgelessGraph()
    assert e.independent_extension((1, 2, 4)) == 3


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_adjacency_symmetric_and_vectorised(g):
    arr = np.arange(1, T + 1, dtype=np.int64)
    for v in (1, 2, 3, 5, 8, 13, 21, 64):
        if not g.is_vertex(v):
            continue
        want = [g.is_vertex(int(x)) and g.adjacent(v, int(x)) for x in arr]
        assert g.adjacent_many(v, arr).tolist() == want
        assert all(g.adjacent(v, int(x)) == g.adjacent(int(x), v) for x in arr)
        assert not g.adjacent(v, v)
        assert g.neighbors_upto(v, T) == [int(x) for x, w in zip(arr, want) if w]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_common_neighbors_match_brute_force(g):
    verts = [v for v in range(1, 13) if g.is_vertex(v)]
    for k in (0, 1, 2, 3):
        for ws in itertools.combinations(verts[:7], k):
            got = []
            for x in g.iter_common_neighbors(ws):
                if x > T or len(got) > T:
                    break
                got.append(x)
            assert got == _brute_common(g, ws, T), ws
