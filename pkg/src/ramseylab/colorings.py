"""Explicit edge-colorings of the complete graph on N.

Color indices: RED = 0, BLUE = 1, GREEN = 2.  Two-colorings use red/blue;
numeric colorings (Rado, residue, bipartite mod r) use their own indices.

Every construction here knows its own structure: it exposes a finite
partition of N into infinite "cells" and says, for a vertex in cell a, whether
it has infinitely many neighbors of color c inside cell b.  That is the
analytic finiteness oracle used by the peeling procedures.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import (FINITE, INFINITE, ColoringOracle, ExactForm, Finiteness, NotDecidable,
                   Piece, VertexSet, _check_vertex, everything, prefix_density, residue_class)

RED, BLUE, GREEN = 0, 1, 2
COLOR_NAMES = {RED: "red", BLUE: "blue", GREEN: "green"}


def _as_i64(arr) -> np.ndarray:
    return np.asarray(arr, dtype=np.int64)


# ---------------------------------------------------------------------------
# interval schemes


class IntervalScheme:
    """An increasing sequence a_0 = 1 < a_1 < ... cutting N into [a_j, a_{j+1}).

    Built from a rule a_k = step(k, a_{k-1}) (or an explicit list, which is
    then extended by the rule if one is given).  Boundaries are generated on
    demand; the lock keeps the lazy extension invisible to concurrent callers.
    """

    def __init__(self, step: Callable[[int, int], int] | None = None,
                 prefix: Sequence[int] = (1,), stages: int = 2, name: str = "scheme",
                 strict: bool = True):
        prefix = [int(a) for a in prefix]
        if not prefix or prefix[0] != 1:
            raise ValueError("interval schemes start at a_0 = 1")
        if any(b <= a for a, b in zip(prefix, prefix[1:])):
            raise ValueError("interval boundaries must be strictly increasing")
        self.strict = strict
        if step is None and len(prefix) < 2:
            raise ValueError("an explicit scheme needs at least two boundaries")
        self._step = step
        self._a = prefix
        self._lock = threading.Lock()
        self.name = name
        if step is not None:
            self._extend_to_index(stages)

    def _extend_to_index(self, k: int) -> None:
        with self._lock:
            while len(self._a) <= k:
                if self._step is None:
                    raise ValueError(f"explicit scheme {self.name} has no boundary a_{k}")
                n = len(self._a)
                nxt = int(self._step(n, self._a[-1]))
                if nxt < self._a[-1] or (self.strict and nxt == self._a[-1]):
                    raise ValueError("interval rule produced a non-increasing boundary")
                self._a.append(nxt)

    def _extend_past(self, n: int) -> None:
        while self._a[-1] <= n:
            self._extend_to_index(len(self._a))

    def a(self, k: int) -> int:
        self._extend_to_index(k)
        return self._a[k]

    def boundaries(self, k: int) -> list[int]:
        """a_0, ..., a_k."""
        self._extend_to_index(k)
        return list(self._a[:k + 1])

    def index(self, n: int) -> int:
        """The j with a_j <= n < a_{j+1}."""
        _check_vertex(n)
        self._extend_past(n)
        return bisect.bisect_right(self._a, n) - 1

    def index_many(self, arr: np.ndarray) -> np.ndarray:
        arr = _as_i64(arr)
        if len(arr):
            self._extend_past(int(arr.max()))
        top = int(arr.max()) if len(arr) else 1
        cut = bisect.bisect_right(self._a, top) + 1
        return np.searchsorted(np.asarray(self._a[:cut], dtype=np.int64), arr, side="right") - 1

    def parity_mask(self, t: int, parity: int) -> np.ndarray:
        """Mask of [0, t] marking members of intervals with index ≡ parity (mod 2)."""
        m = np.zeros(t + 1, dtype=bool)
        self._extend_past(t)
        j = 0
        while self._a[j] <= t:
            if j % 2 == parity:
                m[self._a[j]:min(self._a[j + 1], t + 1)] = True
            j += 1
        return m


def growth(kind: str) -> Callable[[int], int]:
    kinds = {
        "linear": lambda k: k,
        "double": lambda k: 2 * k,
        "square": lambda k: k * k,
    }
    if kind not in kinds:
        raise ValueError(f"unknown growth function {kind!r}; choose from {sorted(kinds)}")
    return kinds[kind]


def _check_increasing(f: Callable[[int], int], upto: int = 64) -> None:
    vals = [f(k) for k in range(1, upto + 1)]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError("growth function must be strictly increasing")


def forward_scheme(f: Callable[[int], int], stages: int = 12) -> IntervalScheme:
    """a_k = k(a_{k-1} + f(a_{k-1})) + 1, the least value beating the growth bound."""
    return IntervalScheme(lambda k, prev: k * (prev + f(prev)) + 1, stages=stages,
                          name="forward")


def doubling_scheme(stages: int = 12) -> IntervalScheme:
    return IntervalScheme(lambda k, prev: 2 * prev, stages=stages, name="doubling")


# ---------------------------------------------------------------------------
# helper: colorings given by a finite "arc" table between residue classes


class _ClassTableColoring(ColoringOracle):
    """Vertices split into residue classes mod n; class pairs carry arc colors.

    arc[i][j] is the color that a vertex of class i sees cofinitely often in
    class j.  When arc[i][j] == arc[j][i] every edge between the classes gets
    that color; otherwise x in class i and y in class j get arc[i][j] when
    x < y and arc[j][i] when x > y.  arc[i][i] colors the inside of class i.
    Class index of n is n mod n_classes.
    """

    def __init__(self, colors: int, arc: Sequence[Sequence[int]], name: str):
        super().__init__(colors)
        self.n = len(arc)
        self.arc = np.asarray(arc, dtype=np.int64)
        self.name = name
        self._cells = [VertexSet(exact=residue_class(self.n, i), name=f"A_{i}")
                       for i in range(self.n)]

    def _color(self, lo, hi):
        i, j = lo % self.n, hi % self.n
        return int(self.arc[i, j])

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        i = v % self.n
        j = arr % self.n
        out = np.where(arr > v, self.arc[i, j], self.arc[j, i])
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return v % self.n

    def cell_infinite(self, a, c, b):
        return int(self.arc[a, b]) == c


# ---------------------------------------------------------------------------
# the constructions


class RadoColoring(ColoringOracle):
    """Color of {s, t}, s < t, is bit s of t (bits counted from 1, least significant first)."""

    name = "rado"

    def __init__(self):
        super().__init__(2)
        self._cells = [everything()]

    def _color(self, lo, hi):
        return (hi >> (lo - 1)) & 1

    def color_many(self, v, arr):
        if v >= 2 ** 62:
            return super().color_many(v, arr)
        arr = _as_i64(arr)
        lo = np.minimum(arr, v)
        hi = np.maximum(arr, v)
        shift = np.clip(lo - 1, 0, 63)
        out = (hi >> shift) & 1
        out[lo - 1 >= 63] = 0
        out[arr == v] = -1
        out[arr < 1] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return 0

    def cell_infinite(self, a, c, b):
        # every vertex has infinitely many later neighbors of both colors
        return True

    def class_graph(self, c):
        from .zoo import RadoGraph, RadoComplementGraph
        return RadoGraph() if c == 1 else RadoComplementGraph()


class ResidueColoring(ColoringOracle):
    """The lower endpoint's residue mod r is the color of the edge."""

    def __init__(self, r: int):
        if r < 2:
            raise ValueError("residue coloring needs r >= 2")
        super().__init__(r)
        self.r = r
        self.name = f"residue:r={r}"
        self._cells = [VertexSet(exact=residue_class(r, i), name=f"A_{i}") for i in range(r)]

    def _color(self, lo, hi):
        return lo % self.r

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        out = np.minimum(arr, v) % self.r
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return v % self.r

    def cell_infinite(self, a, c, b):
        # every later vertex sees v's own class color
        return c == a

    def finiteness_bound(self, v: int, c: int) -> int | None:
        """Exact size of N_c(v) when finite: the members of class c below v."""
        if c == v % self.r:
            return None
        return len(range(c if c else self.r, v, self.r))


class ForwardIntervalColoring(ColoringOracle):
    """Lower endpoint in an odd-indexed interval gives red, even-indexed gives blue."""

    def __init__(self, f: Callable[[int], int] | str = "linear", stages: int = 12):
        if stages < 2:
            raise ValueError("need at least two stages")
        super().__init__(2)
        fname = f if isinstance(f, str) else getattr(f, "__name__", "f")
        f = growth(f) if isinstance(f, str) else f
        _check_increasing(f)
        self.scheme = forward_scheme(f, stages)
        self.name = f"fwdint:f={fname},stages={stages}"
        self._cells = [
            VertexSet(lambda n: self.scheme.index(n) % 2 == 1,
                      mask_fn=lambda t: self.scheme.parity_mask(t, 1), name="red intervals"),
            VertexSet(lambda n: self.scheme.index(n) % 2 == 0,
                      mask_fn=lambda t: self.scheme.parity_mask(t, 0), name="blue intervals"),
        ]

    def interval_color(self, n: int) -> int:
        return RED if self.scheme.index(n) % 2 == 1 else BLUE

    def _color(self, lo, hi):
        return self.interval_color(lo)

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        lo = np.minimum(arr, v)
        lo = np.maximum(lo, 1)
        out = np.where(self.scheme.index_many(lo) % 2 == 1, RED, BLUE).astype(np.int64)
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return 0 if self.interval_color(v) == RED else 1

    def cell_infinite(self, a, c, b):
        # all later neighbors take v's interval color, in both cells
        return c == (RED if a == 0 else BLUE)

    def finiteness_bound(self, v: int, c: int) -> int | None:
        """|N_c(v)| when finite: the earlier vertices whose interval has color c."""
        if c == self.interval_color(v):
            return None
        return int(self._cells[self.cell_of(v) ^ 1].mask(v - 1).sum()) if v > 1 else 0


class BackwardIntervalColoring(ColoringOracle):
    """Upper endpoint in an odd-indexed interval gives red, even-indexed gives blue."""

    def __init__(self, scheme: IntervalScheme | None = None):
        super().__init__(2)
        self.scheme = scheme if scheme is not None else doubling_scheme()
        self.name = f"bwdint:{self.scheme.name}"
        self._cells = [
            VertexSet(lambda n: self.scheme.index(n) % 2 == 0,
                      mask_fn=lambda t: self.scheme.parity_mask(t, 0), name="A^0"),
            VertexSet(lambda n: self.scheme.index(n) % 2 == 1,
                      mask_fn=lambda t: self.scheme.parity_mask(t, 1), name="A^1"),
        ]

    def _color(self, lo, hi):
        return RED if self.scheme.index(hi) % 2 == 1 else BLUE

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        hi = np.maximum(arr, v)
        out = np.where(self.scheme.index_many(hi) % 2 == 1, RED, BLUE).astype(np.int64)
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return self.scheme.index(v) % 2

    def cell_infinite(self, a, c, b):
        # later vertices of cell b color the edge by their own parity
        return c == (BLUE if b == 0 else RED)


class BipartiteHalfGraphColoring(ColoringOracle):
    """Two-coloring of the pairs between sides A and B.

    a in A and b in B get red when map_b(b) < map_a(a), blue otherwise, so
    every b sees cofinitely many red neighbors in A.  By default A is the odd
    numbers and B the even numbers, both mapped by the identity.
    """

    def __init__(self, side_a: VertexSet | None = None, side_b: VertexSet | None = None,
                 map_a: Callable[[int], int] | None = None,
                 map_b: Callable[[int], int] | None = None):
        super().__init__(2)
        self.side_a = side_a or VertexSet(exact=residue_class(2, 1), name="odds")
        self.side_b = side_b or VertexSet(exact=residue_class(2, 0), name="evens")
        self.map_a = map_a or (lambda n: n)
        self.map_b = map_b or (lambda n: n)
        self._vector = side_a is None and side_b is None and map_a is None and map_b is None
        self.name = "halfgraph"

    def side(self, v: int) -> int:
        if v in self.side_a:
            return 0
        if v in self.side_b:
            return 1
        raise ValueError(f"{v} lies on neither side")

    def defined(self, u, v):
        try:
            return self.side(u) != self.side(v)
        except ValueError:
            return False

    def _color(self, lo, hi):
        sa, sb = self.side(lo), self.side(hi)
        if sa == sb:
            raise ValueError(f"{lo} and {hi} lie on the same side")
        a, b = (lo, hi) if sa == 0 else (hi, lo)
        return RED if self.map_b(b) < self.map_a(a) else BLUE

    def color_many(self, v, arr):
        if not self._vector:
            return super().color_many(v, arr)
        arr = _as_i64(arr)
        if v % 2 == 1:
            out = np.where(arr < v, RED, BLUE)
        else:
            out = np.where(v < arr, RED, BLUE)
        out = out.astype(np.int64)
        out[(arr % 2) == (v % 2)] = -1
        return out

    def cells(self):
        return [self.side_a, self.side_b]

    def cell_of(self, v):
        return self.side(v)

    def cell_infinite(self, a, c, b):
        if a == b:
            return False
        # A-vertices see cofinitely many blue B-vertices, B-vertices cofinitely many red A-vertices
        return c == (BLUE if a == 0 else RED)


class BlocksHalfGraphColoring(_ClassTableColoring):
    """Residue classes mod k are green cliques; between classes i < j, x < y is red.

    So a vertex of the lower-indexed class sees cofinitely many red neighbors in
    a higher-indexed class, and the reverse direction is cofinitely blue.
    """

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("blocks coloring needs k >= 2")
        arc = [[GREEN if i == j else (RED if i < j else BLUE) for j in range(k)]
               for i in range(k)]
        super().__init__(3, arc, f"blocks:k={k}")
        self.k = k


class ResiduePartitionColoring(_ClassTableColoring):
    """Red inside each residue class mod m, blue between classes."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("residue partition needs m >= 1")
        arc = [[RED if i == j else BLUE for j in range(m)] for i in range(m)]
        super().__init__(2, arc, f"respart:m={m}")
        self.m = m


class BipartiteModColoring(ColoringOracle):
    """Coloring of K_{N,N} (odds vs evens) by sub-part difference mod r.

    Odd n lies in A_i with i = ((n-1)/2 mod r) + 1, even n in B_j with
    j = (n/2 - 1 mod r) + 1; the edge between A_i and B_j gets (i - j) mod r.
    Each sub-part is a residue class mod 2r of density 1/(2r).
    """

    def __init__(self, r: int):
        if r < 1:
            raise ValueError("bipartite mod coloring needs r >= 1")
        # with r = 1 every edge gets color 0; a second unused color keeps r >= 2
        super().__init__(max(r, 2))
        self.r = r
        self.name = f"bimod:r={r}"
        self._cells = ([VertexSet(exact=residue_class(2 * r, 2 * i + 1), name=f"A_{i + 1}")
                        for i in range(r)] +
                       [VertexSet(exact=residue_class(2 * r, (2 * j + 2) % (2 * r)),
                                  name=f"B_{j + 1}") for j in range(r)])

    def part(self, n: int) -> tuple[str, int]:
        _check_vertex(n)
        if n % 2:
            return "A", (n - 1) // 2 % self.r + 1
        return "B", (n // 2 - 1) % self.r + 1

    def defined(self, u, v):
        return (u - v) % 2 == 1

    def _color(self, lo, hi):
        (s1, i1), (s2, i2) = self.part(lo), self.part(hi)
        if s1 == s2:
            raise ValueError(f"{lo} and {hi} lie on the same side")
        i, j = (i1, i2) if s1 == "A" else (i2, i1)
        return (i - j) % self.r

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        if v % 2:
            i = (v - 1) // 2 % self.r + 1
            j = (arr // 2 - 1) % self.r + 1
        else:
            j = (v // 2 - 1) % self.r + 1
            i = (arr - 1) // 2 % self.r + 1
        out = ((i - j) % self.r).astype(np.int64)
        out[(arr % 2) == (v % 2)] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        s, i = self.part(v)
        return i - 1 if s == "A" else self.r + i - 1

    def cell_infinite(self, a, c, b):
        if (a < self.r) == (b < self.r):
            return False
        i, j = (a + 1, b - self.r + 1) if a < self.r else (b + 1, a - self.r + 1)
        return (i - j) % self.r == c


class SelfIntersectColoring(ColoringOracle):
    """Two-coloring whose monochromatic k-wise self-intersecting sets are thin.

    With c = (n - 1) mod 2k, even c puts n in A_{c/2+1} and odd c puts n in
    B_{(c+1)/2}; so A is the odd numbers and B the even numbers.
    A-B pairs are red when the A-vertex is smaller.  Inside A, red means the
    same A_i.  Inside B, blue means the same B_i.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        super().__init__(2)
        self.k = k
        self.name = f"selfint:k={k}"
        m = 2 * k
        self._cells = ([VertexSet(exact=residue_class(m, 2 * i + 1), name=f"A_{i + 1}")
                        for i in range(k)] +
                       [VertexSet(exact=residue_class(m, (2 * i + 2) % m), name=f"B_{i + 1}")
                        for i in range(k)])

    def part(self, n: int) -> tuple[str, int]:
        _check_vertex(n)
        c = (n - 1) % (2 * self.k)
        return ("A", c // 2 + 1) if c % 2 == 0 else ("B", (c + 1) // 2)

    def _rule(self, sl, il, sh, ih, lo_is_smaller=True):
        if sl == "A" and sh == "A":
            return RED if il == ih else BLUE
        if sl == "B" and sh == "B":
            return BLUE if il == ih else RED
        # the A-vertex being the lower endpoint means a < b
        return RED if sl == "A" else BLUE

    def _color(self, lo, hi):
        (sl, il), (sh, ih) = self.part(lo), self.part(hi)
        return self._rule(sl, il, sh, ih)

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        m = 2 * self.k
        cv = (v - 1) % m
        ca = (arr - 1) % m
        v_is_a = cv % 2 == 0
        a_is_a = ca % 2 == 0
        same_part = ca == cv
        both_a = v_is_a & a_is_a
        both_b = (~v_is_a) & (~a_is_a)
        lower_is_a = np.where(arr < v, a_is_a, v_is_a)
        out = np.where(both_a, np.where(same_part, RED, BLUE),
                       np.where(both_b, np.where(same_part, BLUE, RED),
                                np.where(lower_is_a, RED, BLUE))).astype(np.int64)
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        s, i = self.part(v)
        return i - 1 if s == "A" else self.k + i - 1

    def cell_infinite(self, a, c, b):
        ka, kb = a < self.k, b < self.k
        if ka and kb:
            return c == (RED if a == b else BLUE)
        if not ka and not kb:
            return c == (BLUE if a == b else RED)
        # later vertices dominate: an A-vertex sees later B's in red, a B-vertex later A's in blue
        return c == (RED if ka else BLUE)


class TStarColoring(ColoringOracle):
    """Two-coloring built on the intervals a_0 = 1, a_i = i*d*a_{i-1}.

    Block A_i is [a_{i-1}, a_i) for i >= 1 and V_r is the union of the blocks
    with index ≡ r (mod 4).  Inside V_0 and V_1 is red, inside V_2 and V_3 is
    blue, V_0-V_1 is blue and V_2-V_3 is red.  Between V_i (i in {0,1}) and
    V_j (j in {2,3}) an arrow color decides: with a red arrow, blocks A_s in
    V_i and A_t in V_j get red when s < t and blue when t < s; a blue arrow
    swaps the two.  Arrows: V_0->V_2 red, V_0->V_3 blue, V_1->V_2 blue,
    V_1->V_3 red.
    """

    ARROWS = {(0, 2): RED, (0, 3): BLUE, (1, 2): BLUE, (1, 3): RED}

    def __init__(self, d: int, stages: int = 8):
        if d < 1:
            raise ValueError("d must be >= 1")
        super().__init__(2)
        self.d = d
        self.scheme = IntervalScheme(lambda i, prev: i * d * prev, stages=stages, name="tstar",
                                     strict=False)
        self.name = f"tstar:d={d}"
        self._cells = [VertexSet(lambda n, r=r: self.v_index(n) == r,
                                 mask_fn=lambda t, r=r: self._v_mask(t, r), name=f"V_{r}")
                       for r in range(4)]

    def a(self, i: int) -> int:
        return self.scheme.a(i)

    def block(self, n: int) -> int:
        """The i >= 1 with a_{i-1} <= n < a_i."""
        _check_vertex(n)
        return self.scheme.index(n) + 1

    def v_index(self, n: int) -> int:
        return self.block(n) % 4

    def _v_mask(self, t, r):
        out = np.zeros(t + 1, dtype=bool)
        self.scheme._extend_past(t)
        i = 1
        while self.scheme.a(i - 1) <= t:
            if i % 4 == r:
                out[self.scheme.a(i - 1):min(self.scheme.a(i), t + 1)] = True
            i += 1
        return out

    @classmethod
    def rule(cls, s: int, t: int) -> int:
        """Color between blocks A_s and A_t (s != t, or s == t for inside a block)."""
        i, j = s % 4, t % 4
        if i == j:
            return RED if i in (0, 1) else BLUE
        if {i, j} == {0, 1}:
            return BLUE
        if {i, j} == {2, 3}:
            return RED
        if i not in (0, 1):
            i, j, s, t = j, i, t, s
        arrow = cls.ARROWS[(i, j)]
        return arrow if s < t else 1 - arrow

    def _color(self, lo, hi):
        return self.rule(self.block(lo), self.block(hi))

    def color_many(self, v, arr):
        arr = _as_i64(arr)
        bv = self.block(v)
        ba = self.scheme.index_many(np.maximum(arr, 1)) + 1
        table = np.array([[self.rule(s, t) for t in range(8)] for s in range(8)], dtype=np.int64)
        # the rule depends on the residues mod 4 and on which block index is smaller
        i = bv % 4
        j = ba % 4
        same = ba == bv
        lower = np.where(ba > bv, table[i, (j % 4) + 4], table[i + 4, j % 4])
        out = np.where(same, table[i, i], lower)
        out[arr == v] = -1
        return out

    def cells(self):
        return self._cells

    def cell_of(self, v):
        return self.v_index(v)

    def cell_infinite(self, a, c, b):
        # a vertex in block s sees infinitely many later blocks t > s of every residue
        return self.rule(a, b + 4) == c


@dataclass(frozen=True)
class DigraphSpec:
    """A complete digraph on 0..n-1 with loops, each arc colored red or blue."""

    n: int
    arcs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("digraph needs at least one vertex")
        want = {(i, j) for i in range(self.n) for j in range(self.n)}
        got = set(self.arcs)
        if got != want:
            missing = sorted(want - got)[:3]
            extra = sorted(got - want)[:3]
            raise ValueError(f"arcs must cover every ordered pair and loop; "
                             f"missing {missing}, unexpected {extra}")
        bad = [k for k, c in self.arcs.items() if c not in (RED, BLUE)]
        if bad:
            raise ValueError(f"arc colors must be red or blue, bad arcs {bad[:3]}")

    def table(self) -> list[list[int]]:
        return [[self.arcs[(i, j)] for j in range(self.n)] for i in range(self.n)]


class DigraphLiftColoring(_ClassTableColoring):
    """Lifts a 2-colored digraph to K_N over the residue classes mod n.

    Inside class i the loop color is used.  When the arcs (i,j) and (j,i)
    agree their color is used between the classes; otherwise x in class i and
    y in class j get color arc(i,j) when x < y, so class i sees arc(i,j)
    cofinitely often in class j.
    """

    def __init__(self, spec: DigraphSpec):
        super().__init__(2, spec.table(), f"digraph:n={spec.n}")
        self.spec = spec


# ---------------------------------------------------------------------------
# induced vertex colorings


def induced_vertex_color(coloring: ColoringOracle, v: int, horizon: int,
                         rule: str = "max-prefix-density") -> int:
    """A deterministic stand-in for the color a vertex receives from an ultrafilter.

    "max-prefix-density" picks the color whose neighborhood of v is densest at
    the horizon (ties go to the smaller color).  "analytic-cofinite" returns
    the only color with an infinite neighborhood and refuses otherwise.
    """
    _check_vertex(v)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if rule == "max-prefix-density":
        arr = np.arange(1, horizon + 1, dtype=np.int64)
        cols = coloring.color_many(v, arr)
        counts = [int((cols == c).sum()) for c in range(coloring.colors)]
        return int(np.argmax(counts))
    if rule == "analytic-cofinite":
        infinite = [c for c in range(coloring.colors) if coloring.finiteness(v, c) == INFINITE]
        if len(infinite) != 1:
            raise NotDecidable(f"{len(infinite)} colors have infinite neighborhoods at {v}")
        return infinite[0]
    raise ValueError(f"unknown rule {rule!r}")
