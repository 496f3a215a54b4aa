import itertools
from fractions import Fraction

import numpy as np
import pytest

from ramseylab.analyzers import (FinitePrefixGraph, back_degree, ceil_log2_sizes,
                                 chromatic_number, degeneracy, dominating_set_exists,
                                 extension_property_check, kwise_intersecting_check,
                                 kwise_self_intersecting_check, left_neighborhood_cascade,
                                 peel_deep_tree_sets, peel_short_tree_sets, ruling_product,
                                 ruling_products, short_path_proxy, zero_ruled_window_check)
from ramseylab.colorings import (BLUE, RED, BackwardIntervalColoring, ForwardIntervalColoring,
                                 RadoColoring, ResidueColoring, ResiduePartitionColoring)
from ramseylab.core import ColoringOracle, NotDecidable
from ramseylab.zoo import (BipartiteHalfGraph, CompleteGraph, EdgelessGraph, HalfGraph,
                           HdGraph, RadoGraph, TwoCliques)


class _Opaque(ColoringOracle):
    name = "opaque"

    def __init__(self):
        super().__init__(2)

    def _color(self, lo, hi):
        return (lo * hi) % 2


def _complete(n):
    return FinitePrefixGraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def _cycle(n):
    return FinitePrefixGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def _brute_chromatic(g):
    for k in range(1, g.n + 1):
        for cols in itertools.product(range(k), repeat=g.n):
            if all(cols[u] != cols[v] for u, v in zip(*np.nonzero(g.adj))):
                return k
    return 0


def _brute_degeneracy(g):
    # max over subsets of the min degree, on small graphs
    best = 0
    for r in range(1, g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            sub = g.adj[np.ix_(s, s)]
            best = max(best, int(sub.sum(axis=1).min()))
    return best


def test_prefix_graph_validation():
    with pytest.raises(ValueError):
        FinitePrefixGraph(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        FinitePrefixGraph(np.ones((2, 2)))
    with pytest.raises(ValueError):
        FinitePrefixGraph(np.zeros((2, 3)))


def test_degeneracy_examples():
    assert degeneracy(FinitePrefixGraph.from_graph(HdGraph(2), 6)) == 2
    assert degeneracy(_complete(5)) == 4
    assert degeneracy(FinitePrefixGraph.from_graph(EdgelessGraph(), 5)) == 0


def test_chromatic_examples():
    assert chromatic_number(_complete(4)) == 4
    assert chromatic_number(_cycle(5)) == 3
    assert chromatic_number(_cycle(6)) == 2
    assert chromatic_number(FinitePrefixGraph.from_graph(HdGraph(2), 6)) == 3
    with pytest.raises(ValueError):
        chromatic_number(_complete(21))


def test_dominating_examples():
    assert not dominating_set_exists(_cycle(5), 1)
    assert dominating_set_exists(_cycle(5), 2)
    star = FinitePrefixGraph.from_edges(5, [(1, k) for k in range(2, 6)])
    assert dominating_set_exists(star, 1)
    assert not dominating_set_exists(FinitePrefixGraph.from_graph(EdgelessGraph(), 4), 3)
    assert dominating_set_exists(FinitePrefixGraph.from_graph(EdgelessGraph(), 4), 4)
    with pytest.raises(ValueError):
        dominating_set_exists(_cycle(5), -1)


def test_small_graph_analyzers_match_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        edges = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5]
        g = FinitePrefixGraph.from_edges(n, edges)
        assert chromatic_number(g) == _brute_chromatic(g)
        assert degeneracy(g) == _brute_degeneracy(g)
        for s in range(n + 1):
            want = any(all(v in xs or any(g.adj[v, x] for x in xs) for v in range(n))
                       for r in range(s + 1) for xs in itertools.combinations(range(n), r))
            assert dominating_set_exists(g, s) == want


def test_back_degree():
    assert back_degree(HdGraph(3), 100) == 3
    assert back_degree(CompleteGraph(), 6) == 5
    assert back_degree(EdgelessGraph(), 50) == 0


def test_zero_ruled_examples():
    assert zero_ruled_window_check(RadoGraph(), 6, 3, 2 ** 10)
    assert zero_ruled_window_check(HdGraph(2), 6, 3, 2 ** 10)
    assert not zero_ruled_window_check(CompleteGraph(), 6, 1, 2 ** 10)
    assert zero_ruled_window_check(HalfGraph(), 4, 2, 2 ** 10)
    assert not zero_ruled_window_check(TwoCliques(), 4, 2, 2 ** 10)
    with pytest.raises(ValueError):
        zero_ruled_window_check(RadoGraph(), 20, 2, 10)


def test_kwise_examples():
    assert kwise_intersecting_check(RadoGraph(), 2, 3, 6, 2 ** 10)
    assert kwise_intersecting_check(HdGraph(2), 2, 3, 6, 2 ** 10)
    assert not kwise_intersecting_check(HdGraph(2), 3, 1, 6, 2 ** 10)
    assert not kwise_intersecting_check(EdgelessGraph(), 1, 1, 4, 100)
    assert not kwise_intersecting_check(TwoCliques(), 2, 1, 4, 100)
    assert kwise_intersecting_check(TwoCliques(), 2, 5, 4, 100, within=range(1, 100, 2))
    assert kwise_self_intersecting_check(CompleteGraph(), 3, 10, 5, 50)
    with pytest.raises(ValueError):
        kwise_intersecting_check(RadoGraph(), 0, 1, 4, 100)


def test_extension_examples():
    assert extension_property_check(RadoGraph(), {1}, {2}, 100) == 5
    assert extension_property_check(RadoGraph(), {1, 2}, set(), 100) == 3
    assert extension_property_check(CompleteGraph(), set(), {1}, 100) is None
    with pytest.raises(ValueError):
        extension_property_check(RadoGraph(), {1}, {1}, 100)


def test_cascade_examples():
    g = BipartiteHalfGraph()
    assert left_neighborhood_cascade(g, {6}) == ((1, 3, 5), (6,))
    assert left_neighborhood_cascade(g, {3, 4}) == ((1, 3), (4,))
    assert left_neighborhood_cascade(g, set()) == ((), ())
    with pytest.raises(NotDecidable):
        left_neighborhood_cascade(RadoGraph(), {1})


def test_ruling_product_examples():
    assert ruling_product(ceil_log2_sizes, 4).exact == Fraction(9, 32)
    assert ruling_product(ceil_log2_sizes, 1).exact == 1
    assert ceil_log2_sizes(1) is None and ceil_log2_sizes(5) == 3
    assert ruling_product(lambda n: 0, 3).approx == 0.0
    big = ruling_product(ceil_log2_sizes, 1000)
    assert big.exact is None and 0 < big.approx < 9 / 32
    parts = ruling_products(ceil_log2_sizes, 64)
    assert abs(parts[3] - 9 / 32) < 1e-12
    assert abs(parts[-1] - float(ruling_product(ceil_log2_sizes, 64).exact)) < 1e-12
    assert np.all(np.diff(parts) <= 0)
    with pytest.raises(ValueError):
        ruling_product(ceil_log2_sizes, 0)


def test_peel_deep_examples():
    all_red = peel_deep_tree_sets(ResiduePartitionColoring(1), horizon=50)
    assert all_red.members("R") == list(range(1, 51)) and all_red.members("S") == []
    res = peel_deep_tree_sets(ResidueColoring(2), horizon=20)
    assert res.members("R") == list(range(2, 21, 2))
    assert res.members("S") == list(range(1, 21, 2))
    fwd = peel_deep_tree_sets(ForwardIntervalColoring(), horizon=20)
    assert fwd.members("R") == list(range(3, 13))
    assert peel_deep_tree_sets(BackwardIntervalColoring(), horizon=20).stages_used == 0
    assert peel_deep_tree_sets(RadoColoring(), horizon=20).stages_used == 0
    with pytest.raises(NotDecidable):
        peel_deep_tree_sets(_Opaque())
    with pytest.raises(NotDecidable):
        peel_short_tree_sets(_Opaque())


def test_peel_deep_survivors_see_blue_infinitely():
    c = ForwardIntervalColoring()
    res = peel_deep_tree_sets(c, horizon=2000)
    s = res.S.mask(20000)[1:]
    arr = np.arange(1, 20001, dtype=np.int64)
    for v in res.members("S")[:30]:
        assert ((c.color_many(v, arr) == BLUE) & s).sum() > 100


def test_peel_short_examples():
    res = peel_short_tree_sets(ResidueColoring(2), horizon=60)
    assert res.anchor == 2 and res.color == RED
    assert res.anchor_density == Fraction(29, 60)
    fwd = peel_short_tree_sets(ForwardIntervalColoring(), horizon=60)
    assert fwd.anchor == 1 and fwd.color == BLUE
    bwd = peel_short_tree_sets(BackwardIntervalColoring(), horizon=60)
    assert bwd.stages_used == 0 and bwd.anchor == 1


def test_short_path_proxy():
    c = ResidueColoring(2)
    evens = list(range(2, 41, 2))
    assert short_path_proxy(c, evens, RED, 200) == []
    # two odds never share a red neighbor: their red neighbors are even and below them
    assert short_path_proxy(c, [1, 3], RED, 200) == [(1, 3)]
