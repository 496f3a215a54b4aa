import itertools
from fractions import Fraction

import numpy as np
import pytest

from ramseylab.colorings import (BLUE, GREEN, RED, BackwardIntervalColoring,
                                 BipartiteHalfGraphColoring, BipartiteModColoring,
                                 BlocksHalfGraphColoring, DigraphLiftColoring, DigraphSpec,
                                 ForwardIntervalColoring, IntervalScheme, RadoColoring,
                                 ResidueColoring, ResiduePartitionColoring,
                                 SelfIntersectColoring, TStarColoring, doubling_scheme,
                                 forward_scheme, growth, induced_vertex_color)
from ramseylab.core import FINITE, INFINITE, NotDecidable, exact_density, everything


def _digraph(n, letters):
    return DigraphSpec(n, {(i, j): RED if letters[i * n + j] == "R" else BLUE
                           for i in range(n) for j in range(n)})


ALL = [RadoColoring(), ResidueColoring(2), ResidueColoring(3), ForwardIntervalColoring(),
       BackwardIntervalColoring(), BlocksHalfGraphColoring(2), BlocksHalfGraphColoring(3),
       ResiduePartitionColoring(1), ResiduePartitionColoring(3), SelfIntersectColoring(2),
       TStarColoring(2), TStarColoring(1), DigraphLiftColoring(_digraph(2, "RBRB"))]
PARTIAL = [BipartiteHalfGraphColoring(), BipartiteModColoring(2), BipartiteModColoring(3)]


# -- worked examples -----------------------------------------------------------


def test_rado_examples():
    rc = RadoColoring()
    assert rc.color(2, 14) == 1
    assert rc.color(5, 14) == 0
    assert rc.color(1, 14) == 0
    assert rc.color(14, 2) == 1


def test_residue_examples():
    assert ResidueColoring(2).color(3, 7) == 1
    assert ResidueColoring(2).finiteness_bound(7, 0) == 3
    assert ResidueColoring(3).color(4, 100) == 1


def test_residue_finiteness():
    rc = ResidueColoring(3)
    assert rc.finiteness(7, 1) == INFINITE
    assert rc.finiteness(7, 0) == FINITE
    assert rc.finiteness_bound(7, 1) is None


def test_foreign_color_degree_counts_class_members_below():
    # brute force: the color-i neighbors of n (n not in class i) are exactly
    # the class-i members below n
    for r in (2, 3):
        rc = ResidueColoring(r)
        for n in range(2, 400):
            for i in range(r):
                if n % r == i:
                    continue
                got = sum(1 for m in range(1, 2000) if m != n and rc.color(m, n) == i)
                assert got == sum(1 for m in range(1, n) if m % r == i)
                assert got == rc.finiteness_bound(n, i)


def test_floor_formula_is_off_by_one_for_small_classes():
    # the floor((n-1)/r) formula undercounts: 2 has the color-1 neighbor 1 in residue(2)
    rc = ResidueColoring(2)
    assert rc.finiteness_bound(2, 1) == 1
    assert (2 - 1) // 2 == 0


def test_forward_interval_examples():
    f = ForwardIntervalColoring("linear")
    assert f.scheme.a(1) == 3
    assert f.scheme.boundaries(4) == [1, 3, 13, 79, 633]
    lo, hi = f.scheme.a(1), f.scheme.a(2)
    for u in range(lo, hi):
        assert all(f.color(u, v) == RED for v in range(u + 1, 400))
        assert all(x < u for x in f.neighbors_upto(u, BLUE, 400))
    assert f.finiteness(5, BLUE) == FINITE and f.finiteness(5, RED) == INFINITE


def test_forward_interval_rejects_non_increasing_growth():
    with pytest.raises(ValueError):
        ForwardIntervalColoring(lambda k: 5)
    with pytest.raises(ValueError):
        ForwardIntervalColoring("linear", stages=1)
    with pytest.raises(ValueError):
        growth("cubic")


def test_forward_scheme_meets_growth_bound():
    for name in ("linear", "double", "square"):
        f = growth(name)
        a = forward_scheme(f, 8).boundaries(8)
        assert all(a[k] > k * (a[k - 1] + f(a[k - 1])) for k in range(1, 9))


def test_backward_interval_examples():
    b = BackwardIntervalColoring()
    assert b.scheme.boundaries(3) == [1, 2, 4, 8]
    assert b.color(1, 3) == RED
    assert b.color(1, 5) == BLUE
    assert b.color(2, 3) == RED


def test_backward_interval_finite_blue_degree():
    # A^0 vertices have finitely many blue neighbors in A^1
    b = BackwardIntervalColoring()
    a1 = b.cells()[1]
    assert b.finiteness_within(1, BLUE, b.cell_union([1])) == FINITE
    assert b.finiteness_within(1, RED, b.cell_union([1])) == INFINITE
    assert a1.enumerate_upto(20) == [2, 3, 8, 9, 10, 11, 12, 13, 14, 15]


def test_half_graph_coloring_examples():
    h = BipartiteHalfGraphColoring()
    assert h.color(1, 4) == BLUE
    assert h.color(3, 2) == RED
    assert h.color(5, 6) == BLUE
    with pytest.raises(ValueError):
        h.color(2, 4)


def test_half_graph_coloring_classes_are_half_graphs():
    # red: even b below odd a; each b is red to all larger odds
    h = BipartiteHalfGraphColoring()
    for b in range(2, 60, 2):
        reds = [a for a in range(1, 200, 2) if h.color(a, b) == RED]
        assert reds == list(range(b + 1, 200, 2))


def test_blocks_examples():
    assert BlocksHalfGraphColoring(2).color(2, 4) == GREEN
    assert BlocksHalfGraphColoring(2).color(1, 2) == BLUE
    assert BlocksHalfGraphColoring(2).color(2, 3) == RED
    assert BlocksHalfGraphColoring(3).color(3, 6) == GREEN


def test_residue_partition_examples():
    assert ResiduePartitionColoring(2).color(1, 3) == RED
    assert ResiduePartitionColoring(2).color(1, 2) == BLUE
    one = ResiduePartitionColoring(1)
    assert all(one.color(u, v) == RED for u, v in itertools.combinations(range(1, 40), 2))


def test_bipartite_mod_examples():
    assert BipartiteModColoring(2).part(1) == ("A", 1)
    assert BipartiteModColoring(2).part(2) == ("B", 1)
    assert BipartiteModColoring(2).color(1, 2) == 0
    assert BipartiteModColoring(2).color(3, 2) == 1
    assert BipartiteModColoring(3).part(6) == ("B", 3)
    assert BipartiteModColoring(3).color(1, 6) == 1
    with pytest.raises(ValueError):
        BipartiteModColoring(2).color(1, 3)


def test_bipartite_mod_subpart_densities():
    c = BipartiteModColoring(3)
    assert all(exact_density(s) == Fraction(1, 6) for s in c.cells())


def test_selfintersect_examples():
    c = SelfIntersectColoring(2)
    assert c.part(1) == ("A", 1) and c.part(5) == ("A", 1)
    assert c.color(1, 5) == RED
    assert c.part(2) == ("B", 1) and c.part(4) == ("B", 2)
    assert c.color(2, 4) == RED
    assert c.color(5, 8) == RED
    assert c.color(8, 9) == BLUE


def test_selfintersect_structure():
    for k in (1, 2, 3):
        c = SelfIntersectColoring(k)
        t = 600
        for v in range(1, t + 1):
            s, i = c.part(v)
            red = c.neighbors_upto(v, RED, t)
            if s == "B":
                assert not [x for x in red if c.part(x) == ("B", i)]
                assert all(x < v for x in red if c.part(x)[0] == "A")
            else:
                assert all(c.part(x) == ("A", i) for x in red if c.part(x)[0] == "A")
        assert all(exact_density(s) == Fraction(1, 2 * k) for s in c.cells())


def test_tstar_examples():
    c = TStarColoring(2)
    assert [c.a(i) for i in range(4)] == [1, 2, 8, 48]
    assert c.block(1) == 1 and c.block(2) == 2 and c.block(48) == 4
    assert c.v_index(48) == 0 and c.v_index(1) == 1
    assert c.color(48, 49) == RED
    assert c.color(1, 48) == BLUE


def test_tstar_d1_blocks():
    c = TStarColoring(1)
    assert [c.a(i) for i in range(5)] == [1, 1, 2, 6, 24]
    assert c.block(1) == 2


def test_tstar_inner_rules():
    c = TStarColoring(2)
    t = 500
    for u in range(1, t):
        for v in range(u + 1, t):
            iu, iv = c.v_index(u), c.v_index(v)
            if iu == iv:
                assert c.color(u, v) == (RED if iu in (0, 1) else BLUE)
            elif {iu, iv} == {2, 3}:
                assert c.color(u, v) == RED
            elif {iu, iv} == {0, 1}:
                assert c.color(u, v) == BLUE


def test_digraph_lift_examples():
    spec = _digraph(2, "RBRB")  # loop 0 red, (0,1) blue, (1,0) red, loop 1 blue
    c = DigraphLiftColoring(spec)
    assert c.color(2, 4) == RED
    assert c.color(1, 3) == BLUE
    # disagreeing arcs: class 0 sees blue cofinitely in class 1
    assert c.color(2, 5) == BLUE and c.color(5, 2) == BLUE
    assert c.color(3, 4) == RED
    agree = DigraphLiftColoring(_digraph(2, "RBBR"))
    assert all(agree.color(u, v) == BLUE for u in range(1, 30, 2) for v in range(2, 30, 2))


def test_digraph_spec_validation():
    with pytest.raises(ValueError):
        DigraphSpec(2, {(0, 0): RED})
    with pytest.raises(ValueError):
        DigraphSpec(1, {(0, 0): GREEN})


def test_interval_scheme_validation():
    with pytest.raises(ValueError):
        IntervalScheme(prefix=(2, 3))
    with pytest.raises(ValueError):
        IntervalScheme(prefix=(1, 3, 3))
    with pytest.raises(ValueError):
        IntervalScheme(lambda k, prev: prev, stages=3)
    s = IntervalScheme(prefix=(1, 5, 9))
    assert s.index(4) == 0 and s.index(5) == 1
    with pytest.raises(ValueError):
        s.a(5)


def test_induced_vertex_color():
    assert induced_vertex_color(ResidueColoring(2), 4, 1000) == 0
    assert induced_vertex_color(ResidueColoring(2), 4, 1000, "analytic-cofinite") == 0
    assert induced_vertex_color(ResiduePartitionColoring(1), 7, 50) == RED
    f = ForwardIntervalColoring()
    assert induced_vertex_color(f, 5, 200, "analytic-cofinite") == RED
    with pytest.raises(NotDecidable):
        induced_vertex_color(ResiduePartitionColoring(2), 1, 100, "analytic-cofinite")
    with pytest.raises(ValueError):
        induced_vertex_color(f, 5, 200, "vote")


def test_cells_partition_and_finiteness_within_requires_cells():
    rc = ResidueColoring(3)
    assert rc.finiteness_within(4, 1, everything()) == INFINITE
    with pytest.raises(NotDecidable):
        from ramseylab.core import VertexSet
        rc.finiteness_within(4, 1, VertexSet(lambda n: n > 10))


# -- totality and symmetry on a spot grid ------------------------------------------


@pytest.mark.parametrize("c", ALL + PARTIAL, ids=lambda c: c.name)
def test_symmetric_and_total_on_grid(c):
    t = 10 ** 4
    arr = np.arange(1, t + 1, dtype=np.int64)
    probe = sorted({1, 2, 3, 7, 48, 384, 999, 4097, 9999, 10 ** 4})
    rows = {v: c.color_many(v, arr) for v in probe}
    for v in probe:
        for x in probe:
            if x == v:
                assert rows[v][x - 1] == -1
                continue
            if c.defined(v, x):
                assert rows[v][x - 1] == rows[x][v - 1] == c.color(v, x) == c.color(x, v)
                assert 0 <= rows[v][x - 1] < c.colors
            else:
                assert rows[v][x - 1] == -1
        defined = np.array([c.defined(v, int(x)) and x != v for x in arr[:300]])
        assert np.all((rows[v][:300] >= 0) == defined)


@pytest.mark.parametrize("c", ALL, ids=lambda c: c.name)
def test_color_many_matches_scalar(c):
    arr = np.arange(1, 301, dtype=np.int64)
    for v in (1, 2, 5, 17, 64, 250):
        want = [c.color(v, int(x)) if x != v else -1 for x in arr]
        assert c.color_many(v, arr).tolist() == want


@pytest.mark.parametrize("c", [c for c in ALL + PARTIAL if c.cells() is not None],
                         ids=lambda c: c.name)
def test_cell_finiteness_consistent_with_counts(c):
    # an infinite verdict shows growth between horizons, a finite one stops growing;
    # probes stay small since Rado's first blue neighbor of v above v is 2^(v-1)
    for v in (1, 2, 3, 10, 14):
        for col in range(c.colors):
            try:
                verdict = c.finiteness(v, col)
            except NotDecidable:
                continue
            n1 = len(c.neighbors_upto(v, col, 3000))
            n2 = len(c.neighbors_upto(v, col, 60000))
            if verdict == INFINITE:
                assert n2 > n1
            else:
                assert n2 == n1
