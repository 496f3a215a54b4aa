"""Explicit infinite graphs as adjacency oracles with declared traits."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import (BIPARTITE, DEGENERATE, KWISE_INTERSECTING, LOCALLY_FINITE,
                   ONE_WAY_LOCALLY_FINITE, PERFECT_ROOTED_TREE, TREE_TYPE_1, TREE_TYPE_2,
                   ZERO_RULED, GraphOracle, NotDecidable, VertexSet, WindowExhausted,
                   _check_vertex, least_common_neighbor, least_with_bits, residue_class, set_bit_positions)


def _i64(arr) -> np.ndarray:
    return np.asarray(arr, dtype=np.int64)


# ---------------------------------------------------------------------------
# Rado graphs


# Upper neighbors of m in a Rado graph start at 2**(m-1); past this many bits
# the numbers are refused rather than built.
RADO_BIT_BUDGET = 2 ** 16


def _upper_guard(top: int, ws) -> None:
    if top > RADO_BIT_BUDGET:
        raise WindowExhausted("upper Rado neighbors", tuple(ws), RADO_BIT_BUDGET)


def _rado_adjacent_many(v: int, arr: np.ndarray) -> np.ndarray:
    arr = _i64(arr)
    if v >= 2 ** 62:
        return np.fromiter((RadoGraph.edge(v, int(x)) for x in arr), dtype=bool, count=len(arr))
    lo = np.minimum(arr, v)
    hi = np.maximum(arr, v)
    out = ((hi >> np.clip(lo - 1, 0, 63)) & 1).astype(bool)
    out &= lo - 1 < 63
    out &= arr != v
    out &= arr >= 1
    return out


class RadoGraph(GraphOracle):
    """m < n adjacent iff bit m of n is set (bits counted from 1)."""

    name = "rado"

    def __init__(self):
        super().__init__({ZERO_RULED})
        self._clique: list[int] = []

    @staticmethod
    def edge(u: int, v: int) -> bool:
        if u == v:
            return False
        lo, hi = (u, v) if u < v else (v, u)
        return bool((hi >> (lo - 1)) & 1)

    def adjacent(self, u, v):
        return self.edge(u, v)

    def adjacent_many(self, v, arr):
        return _rado_adjacent_many(v, arr)

    def lower_neighbors(self, v: int) -> list[int]:
        return [p for p in set_bit_positions(v) if p < v]

    def neighbors_upto(self, v, t):
        lower = [p for p in self.lower_neighbors(v) if p <= t]
        if t <= v:
            return lower
        return lower + list(itertools.takewhile(lambda x: x <= t, self.iter_common_neighbors((v,), v + 1)))

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        top = ws[-1]
        for p in self.lower_neighbors(top):
            if p >= lo and p not in ws and all(self.edge(p, w) for w in ws):
                yield p
        _upper_guard(top, ws)
        ones = 0
        for w in ws:
            ones |= 1 << (w - 1)
        x = max(lo, top + 1)
        while True:
            x = least_with_bits(x, ones)
            yield x
            x += 1

    def clique_member(self, i: int) -> int:
        """i-th member (from 1) of the greedy clique 1, 3, 5, 21, ...

        Each member needs the bits of all earlier ones, so the clique
        outgrows the bit budget after five members.
        """
        if i < 1:
            raise ValueError("clique members are indexed from 1")
        while len(self._clique) < i:
            ws = self._clique
            nxt = least_common_neighbor(self, ws, lo=ws[-1] + 1) if ws else 1
            self._clique.append(nxt)
        return self._clique[i - 1]

    def independent_extension(self, xs):
        xs = set(xs)
        top = max(xs, default=0)
        p = 0
        while (1 << p) <= top or (p + 1) in xs:
            p += 1
        return 1 << p


class RadoComplementGraph(GraphOracle):
    """Color-0 class of the Rado coloring: m < n adjacent iff bit m of n is clear."""

    name = "rado-complement"

    def adjacent(self, u, v):
        return u != v and not RadoGraph.edge(u, v)

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        return ~_rado_adjacent_many(v, arr) & (arr != v) & (arr >= 1)

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        top = ws[-1]
        for p in range(max(lo, 1), top):
            if p not in ws and all(self.adjacent(p, w) for w in ws):
                yield p
        _upper_guard(top, ws)
        zeros = 0
        for w in ws:
            zeros |= 1 << (w - 1)
        x = max(lo, top + 1)
        while True:
            x = least_with_bits(x, 0, zeros)
            yield x
            x += 1


class BipartiteRadoGraph(GraphOracle):
    """Rado adjacency between numbers of opposite parity, on N minus {1}."""

    name = "brado"

    def __init__(self):
        super().__init__({ZERO_RULED, BIPARTITE})

    def is_vertex(self, v):
        return v >= 2

    def part_of(self, v):
        return v % 2

    def adjacent(self, u, v):
        return u >= 2 and v >= 2 and (u - v) % 2 == 1 and RadoGraph.edge(u, v)

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        if v < 2:
            return np.zeros(len(arr), dtype=bool)
        return _rado_adjacent_many(v, arr) & ((arr - v) % 2 == 1) & (arr >= 2)

    def neighbors_upto(self, v, t):
        if v < 2:
            return []
        return list(itertools.takewhile(lambda x: x <= t, self.iter_common_neighbors((v,))))

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 2))
            return
        if any(w < 2 for w in ws) or len({w % 2 for w in ws}) > 1:
            return
        top = ws[-1]
        for p in RadoGraph().lower_neighbors(top):
            if p >= max(lo, 2) and p not in ws and all(self.adjacent(p, w) for w in ws):
                yield p
        _upper_guard(top, ws)
        ones = 0
        for w in ws:
            ones |= 1 << (w - 1)
        # the neighbor takes the other parity, which is its own bit 1
        if ws[0] % 2 == 0:
            ones |= 1
            zeros = 0
        else:
            zeros = 1
        x = max(lo, top + 1)
        while True:
            x = least_with_bits(x, ones, zeros)
            yield x
            x += 1

    def independent_extension(self, xs):
        xs = set(xs)
        top = max(xs, default=1)
        p = 1
        while (1 << p) <= top or ((p + 1) in xs and (p + 1) % 2 == 1):
            p += 1
        return 1 << p


# ---------------------------------------------------------------------------
# half graphs


class HalfGraph(GraphOracle):
    """u < v adjacent iff v is even."""

    name = "half"

    def adjacent(self, u, v):
        return u != v and max(u, v) % 2 == 0

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        return (np.maximum(arr, v) % 2 == 0) & (arr != v) & (arr >= 1)

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        top = ws[-1]
        for x in range(max(lo, 1), top):
            if x not in ws and all(self.adjacent(x, w) for w in ws):
                yield x
        x = max(lo, top + 1)
        x += x % 2
        while True:
            yield x
            x += 2


class BipartiteHalfGraph(GraphOracle):
    """Odd u adjacent to even v iff u < v.  Parts: V_1 = odds, V_2 = evens."""

    name = "bhalf"

    def __init__(self):
        super().__init__({ONE_WAY_LOCALLY_FINITE, BIPARTITE})
        self.k = 2

    def part_of(self, v):
        return 1 if v % 2 else 2

    def adjacent(self, u, v):
        if u == v or (u - v) % 2 == 0:
            return False
        odd, even = (u, v) if u % 2 else (v, u)
        return odd < even

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        if v % 2:
            return (arr % 2 == 0) & (arr > v)
        return (arr % 2 == 1) & (arr < v) & (arr >= 1)

    def back_neighbors(self, v: int) -> list[int]:
        """Neighbors in earlier parts; finite by construction."""
        return list(range(1, v, 2)) if v % 2 == 0 else []

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        if len({w % 2 for w in ws}) > 1:
            return
        if ws[0] % 2:
            x = max(lo, ws[-1] + 1)
            x += x % 2
            while True:
                yield x
                x += 2
        else:
            x = max(lo, 1)
            x += 1 - x % 2
            while x < ws[0]:
                yield x
                x += 2


# ---------------------------------------------------------------------------
# H_d


def lex_subsets_count(n: int, d: int) -> int:
    return math.comb(n, d)


def unrank_subset(n: int, d: int, j: int) -> tuple[int, ...]:
    """The j-th (0-based) d-subset of [n] in lexicographic order."""
    if not 0 <= j < math.comb(n, d):
        raise IndexError("subset rank out of range")
    out = []
    x = 1
    while d:
        c = math.comb(n - x, d - 1)
        if j < c:
            out.append(x)
            d -= 1
        else:
            j -= c
        x += 1
    return tuple(out)


def rank_subset(n: int, s: Sequence[int]) -> int:
    """Lexicographic rank (0-based) of the d-subset s of [n]."""
    s = sorted(s)
    d = len(s)
    j = 0
    prev = 0
    for k, x in enumerate(s):
        # subsets agreeing so far but using some y in (prev, x) at this position
        j += math.comb(n - prev, d - k) - math.comb(n - x + 1, d - k)
        prev = x
    return j


def _lex_subsets(lo: int, hi: int, k: int, skip: set[int]) -> Iterator[tuple[int, ...]]:
    """k-subsets of [lo, hi] minus skip in lexicographic order, generated lazily."""
    if k == 0:
        yield ()
        return
    for x in range(lo, hi + 1):
        if x in skip:
            continue
        found = False
        for rest in _lex_subsets(x + 1, hi, k - 1, skip):
            found = True
            yield (x,) + rest
        if not found:
            return


class HdGraph(GraphOracle):
    """Staged graph: n_0 = d, n_{i+1} = n_i + C(n_i, d).

    Vertex n_i + j (1 <= j <= C(n_i, d)) is joined to exactly the j-th
    d-subset of [n_i] in lexicographic order.  The first d vertices are
    independent.
    """

    def __init__(self, d: int, stages: int = 6):
        if d < 1:
            raise ValueError("d must be >= 1")
        super().__init__({ZERO_RULED, DEGENERATE, KWISE_INTERSECTING})
        self.d = d
        self.name = f"hd:d={d}"
        n = [d]
        while len(n) <= stages:
            n.append(n[-1] + math.comb(n[-1], d))
        self.n = n

    def _stage_count(self, k: int) -> None:
        while len(self.n) <= k:
            self.n.append(self.n[-1] + math.comb(self.n[-1], self.d))

    def _extend(self, v: int) -> None:
        while self.n[-1] < v:
            self._stage_count(len(self.n))

    def stage(self, v: int) -> int:
        """The i with n_i < v <= n_{i+1}; -1 for the initial independent vertices."""
        _check_vertex(v)
        if v <= self.d:
            return -1
        self._extend(v)
        return bisect.bisect_left(self.n, v) - 1

    def back_neighbors(self, v: int) -> tuple[int, ...]:
        i = self.stage(v)
        if i < 0:
            return ()
        return unrank_subset(self.n[i], self.d, v - self.n[i] - 1)

    def vertex_for(self, s: Iterable[int], stage: int) -> int:
        """The vertex of the given stage attached to the d-set s."""
        s = tuple(sorted(set(s)))
        if len(s) != self.d:
            raise ValueError(f"need a {self.d}-set")
        self._stage_count(stage)
        if self.n[stage] < s[-1]:
            raise ValueError("set not inside that stage's prefix")
        return self.n[stage] + 1 + rank_subset(self.n[stage], s)

    def adjacent(self, u, v):
        if u == v:
            return False
        lo, hi = (u, v) if u < v else (v, u)
        return lo in self.back_neighbors(hi)

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        if len(arr) == 0:
            return np.zeros(0, dtype=bool)
        return np.isin(arr, self.neighbors_upto(v, int(arr.max())))

    def neighbors_upto(self, v, t):
        return list(itertools.takewhile(lambda x: x <= t, self.iter_common_neighbors((v,))))

    def iter_common_neighbors(self, ws, lo=1):
        ws = tuple(sorted(set(ws)))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        top = ws[-1]
        # below max(ws): only back-neighbors of the top vertex qualify
        for u in self.back_neighbors(top):
            if u >= lo and u not in ws and all(self.adjacent(u, w) for w in ws[:-1]):
                yield u
        if len(ws) > self.d:
            return
        # above max(ws): vertices whose d-set contains ws, stage by stage
        i = 0
        while True:
            self._stage_count(i)
            base = self.n[i]
            if base >= top:
                self._stage_count(i + 1)
                if self.n[i + 1] >= lo:
                    for extra in _lex_subsets(1, base, self.d - len(ws), set(ws)):
                        x = base + 1 + rank_subset(base, ws + extra)
                        if x >= lo:
                            yield x
            i += 1

    def independent_extension(self, xs):
        """A vertex with no neighbor in xs: the first vertex of a late enough
        stage whose d-set avoids xs."""
        xs = set(xs)
        top = max(xs, default=0)
        i = 0
        while True:
            self._stage_count(i)
            base = self.n[i]
            if base >= top:
                free = list(itertools.islice((u for u in range(1, base + 1) if u not in xs),
                                             self.d))
                if len(free) == self.d:
                    return base + 1 + rank_subset(base, free)
            i += 1


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class TreeSpec:
    """kind: "dary", "levels", "istar", "tinf", "path" or "star"."""

    kind: str
    d: int = 2
    degrees: tuple[int, ...] = ()
    arms: str = "increasing"

    def __post_init__(self):
        if self.kind not in ("dary", "levels", "istar", "tinf", "path", "star"):
            raise ValueError(f"unknown tree kind {self.kind!r}")
        if self.kind == "dary" and self.d < 1:
            raise ValueError("d-ary trees need d >= 1")
        if self.kind == "levels":
            if not self.degrees or any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
                raise ValueError("level degrees must be a nonempty increasing sequence")
            if self.degrees[0] < 1:
                raise ValueError("level degrees must be positive")


class TreeGraph(GraphOracle):
    """A rooted tree (root 1) given by its parent map; parents precede children."""

    root = 1

    def parent(self, v: int) -> int | None:
        raise NotImplementedError

    def children(self, v: int) -> Iterator[int]:
        raise NotImplementedError

    def adjacent(self, u, v):
        if u == v:
            return False
        lo, hi = (u, v) if u < v else (v, u)
        return self.parent(hi) == lo

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        if len(arr) == 0:
            return np.zeros(0, dtype=bool)
        return np.isin(arr, self.neighbors_upto(v, int(arr.max())))

    def neighbors_upto(self, v, t):
        p = self.parent(v)
        out = [p] if p is not None and p <= t else []
        return out + list(itertools.takewhile(lambda c: c <= t, self.children(v)))

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        if len(ws) == 1:
            for x in itertools.chain([self.parent(ws[0])], self.children(ws[0])):
                if x is not None and x >= lo:
                    yield x
            return
        # in a tree a common neighbor of two or more vertices is the parent of one of them
        cand = {self.parent(w) for w in ws} - {None} - set(ws)
        for x in sorted(cand):
            if x >= lo and all(self.adjacent(x, w) for w in ws):
                yield x

    def depth(self, v: int) -> int:
        k = 0
        while v != self.root:
            v = self.parent(v)
            k += 1
        return k

    def ancestors(self, v: int) -> list[int]:
        out = []
        while v != self.root:
            v = self.parent(v)
            out.append(v)
        return out


class DaryTree(TreeGraph):
    """Every vertex has D children; children of v are D(v-1)+2 .. D(v-1)+D+1."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("d must be >= 1")
        traits = {LOCALLY_FINITE, TREE_TYPE_1}
        if d >= 2:
            traits.add(PERFECT_ROOTED_TREE)
        super().__init__(traits)
        self.d = d
        self.name = f"tree:dary={d}"

    def parent(self, v):
        _check_vertex(v)
        return None if v == 1 else (v - 2) // self.d + 1

    def children(self, v):
        first = self.d * (v - 1) + 2
        return iter(range(first, first + self.d))


class LevelDegreeTree(TreeGraph):
    """Every vertex on level i has degree d_i (the root, on level 0, has d_0 children).

    The last listed degree repeats on deeper levels.  Numbering is breadth first.
    """

    def __init__(self, degrees: Sequence[int]):
        TreeSpec("levels", degrees=tuple(degrees))
        super().__init__({LOCALLY_FINITE, TREE_TYPE_1})
        self.degrees = tuple(degrees)
        self.name = f"tree:levels={','.join(map(str, degrees))}"
        self._starts = [1, 2]  # first vertex of each level

    def kids(self, level: int) -> int:
        deg = self.degrees[min(level, len(self.degrees) - 1)]
        return deg if level == 0 else deg - 1

    def _grow(self, v: int) -> None:
        while self._starts[-1] <= v:
            lvl = len(self._starts) - 1
            size = (self._starts[lvl] - self._starts[lvl - 1]) * self.kids(lvl - 1)
            if size == 0:
                raise ValueError("tree is finite")
            self._starts.append(self._starts[-1] + size)

    def level(self, v: int) -> int:
        _check_vertex(v)
        self._grow(v)
        return bisect.bisect_right(self._starts, v) - 1

    def parent(self, v):
        if v == 1:
            return None
        lvl = self.level(v)
        return self._starts[lvl - 1] + (v - self._starts[lvl]) // self.kids(lvl - 1)

    def children(self, v):
        lvl = self.level(v)
        self._grow(self._starts[lvl + 1])
        k = self.kids(lvl)
        first = self._starts[lvl + 1] + (v - self._starts[lvl]) * k
        return iter(range(first, first + k))


class IncreasingStar(TreeGraph):
    """Centre 1 joined to arms of lengths 1, 2, 3, ...; arms are numbered one after another.

    Arm m holds vertices s_m + 1 .. s_m + m with s_m = 1 + m(m-1)/2, and its
    first vertex s_m + 1 is joined to the centre.
    """

    name = "tree:istar"

    def __init__(self):
        super().__init__({TREE_TYPE_2})

    @staticmethod
    def arm_start(m: int) -> int:
        return 1 + m * (m - 1) // 2

    def arm_of(self, v: int) -> tuple[int, int]:
        """(arm index, position 1..m along the arm) of a non-centre vertex."""
        _check_vertex(v)
        if v == 1:
            raise ValueError("the centre lies on no arm")
        m = max(1, (1 + math.isqrt(8 * (v - 2) + 1)) // 2)
        while self.arm_start(m) >= v:
            m -= 1
        while self.arm_start(m + 1) < v:
            m += 1
        return m, v - self.arm_start(m)

    def arm(self, m: int) -> list[int]:
        s = self.arm_start(m)
        return list(range(s + 1, s + m + 1))

    def parent(self, v):
        if v == 1:
            return None
        _, pos = self.arm_of(v)
        return 1 if pos == 1 else v - 1

    def children(self, v):
        if v == 1:
            return (self.arm_start(m) + 1 for m in itertools.count(1))
        m, pos = self.arm_of(v)
        return iter([v + 1] if pos < m else [])


class InfinitePath(TreeGraph):
    name = "tree:path"

    def __init__(self):
        super().__init__({TREE_TYPE_1, LOCALLY_FINITE})

    def parent(self, v):
        _check_vertex(v)
        return None if v == 1 else v - 1

    def children(self, v):
        return iter([v + 1])


class InfiniteStar(TreeGraph):
    """K_{1,inf}: centre 1 joined to every other vertex."""

    name = "tree:star"

    def __init__(self):
        super().__init__({TREE_TYPE_2})

    def parent(self, v):
        _check_vertex(v)
        return None if v == 1 else 1

    def children(self, v):
        return itertools.count(2) if v == 1 else iter(())


class CompleteGraph(GraphOracle):
    name = "complete"

    def adjacent(self, u, v):
        return u != v

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        return (arr != v) & (arr >= 1)

    def iter_common_neighbors(self, ws, lo=1):
        ws = set(ws)
        return (x for x in itertools.count(max(lo, 1)) if x not in ws)

    def clique_member(self, i: int) -> int:
        return i


class EdgelessGraph(GraphOracle):
    name = "edgeless"

    def __init__(self):
        super().__init__({ZERO_RULED, LOCALLY_FINITE})

    def adjacent(self, u, v):
        return False

    def adjacent_many(self, v, arr):
        return np.zeros(len(arr), dtype=bool)

    def iter_common_neighbors(self, ws, lo=1):
        if not ws:
            yield from itertools.count(max(lo, 1))

    def independent_extension(self, xs):
        xs = set(xs)
        return next(x for x in itertools.count(1) if x not in xs)


class TwoCliques(GraphOracle):
    """Odds and evens each form an infinite clique; no edges between them."""

    name = "twocliques"

    def adjacent(self, u, v):
        return u != v and (u - v) % 2 == 0

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        return ((arr - v) % 2 == 0) & (arr != v) & (arr >= 1)

    def iter_common_neighbors(self, ws, lo=1):
        ws = set(ws)
        if len({w % 2 for w in ws}) > 1:
            return
        par = next(iter(ws)) % 2 if ws else None
        for x in itertools.count(max(lo, 1)):
            if x not in ws and (par is None or x % 2 == par):
                yield x


def tree_graph(spec: TreeSpec) -> GraphOracle:
    if spec.kind == "dary":
        return DaryTree(spec.d)
    if spec.kind == "levels":
        return LevelDegreeTree(spec.degrees)
    if spec.kind == "istar":
        return IncreasingStar()
    if spec.kind == "tinf":
        g = HdGraph(1)
        g.traits = g.traits | {TREE_TYPE_1}
        g.name = "tree:tinf"
        return g
    if spec.kind == "path":
        return InfinitePath()
    return InfiniteStar()


# ---------------------------------------------------------------------------
# complete multipartite graphs


INF = None


@dataclass(frozen=True)
class MultipartiteSpec:
    """Finite part sizes first, then either two or infinitely many infinite parts.

    infinite: 0, 1, 2 or None (None = infinitely many infinite parts).
    """

    finite: tuple[int, ...] = ()
    infinite: int | None = None

    def __post_init__(self):
        if any(k < 1 for k in self.finite):
            raise ValueError("finite parts need at least one vertex")
        if self.infinite is not None and self.infinite < 0:
            raise ValueError("number of infinite parts must be >= 0")
        if self.infinite == 0:
            raise ValueError("need at least one infinite part to cover N")


def _unpair(n: int) -> tuple[int, int]:
    """Inverse Cantor pairing on 1, 2, 3, ... -> (part, position), both from 0."""
    n -= 1
    w = (math.isqrt(8 * n + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = n - t
    return w - y, y


def _pair(part: int, pos: int) -> int:
    w = part + pos
    return w * (w + 1) // 2 + pos + 1


class MultipartiteGraph(GraphOracle):
    """Complete multipartite graph; adjacency iff different parts.

    Finite parts occupy 1..F in order.  Past F, a finite number m of infinite
    parts are the residue classes mod m, and infinitely many infinite parts
    are laid out along the Cantor diagonal so every part starts early.
    """

    def __init__(self, spec: MultipartiteSpec):
        traits = set()
        if len(spec.finite) + (spec.infinite or 99) == 2:
            traits.add(BIPARTITE)
        super().__init__(traits)
        self.spec = spec
        self.offset = sum(spec.finite)
        self._finite_starts = list(itertools.accumulate((0,) + spec.finite))
        tail = "inf*" if spec.infinite is None else ",".join(["inf"] * spec.infinite)
        self.name = "multi:" + ",".join([*map(str, spec.finite), tail])

    @property
    def n_finite(self) -> int:
        return len(self.spec.finite)

    def part_of(self, v):
        _check_vertex(v)
        if v <= self.offset:
            return bisect.bisect_right(self._finite_starts, v - 1) - 1
        w = v - self.offset
        if self.spec.infinite is None:
            return self.n_finite + _unpair(w)[0]
        return self.n_finite + (w - 1) % self.spec.infinite

    def part_member(self, part: int, pos: int) -> int:
        """The pos-th (0-based) vertex of a part."""
        if part < self.n_finite:
            if pos >= self.spec.finite[part]:
                raise IndexError("finite part exhausted")
            return self._finite_starts[part] + pos + 1
        k = part - self.n_finite
        if self.spec.infinite is None:
            return self.offset + _pair(k, pos)
        if k >= self.spec.infinite:
            raise IndexError("no such part")
        return self.offset + k + 1 + pos * self.spec.infinite

    def adjacent(self, u, v):
        return u != v and self.part_of(u) != self.part_of(v)

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        pv = self.part_of(v)
        parts = np.fromiter((self.part_of(int(x)) if x >= 1 else -1 for x in arr),
                            dtype=np.int64, count=len(arr))
        return (parts != pv) & (arr >= 1)

    def iter_common_neighbors(self, ws, lo=1):
        parts = {self.part_of(w) for w in ws}
        m = self.spec.infinite
        if m is not None and all(self.n_finite + k in parts for k in range(m)):
            # only vertices of finite parts remain
            return (x for x in range(max(lo, 1), self.offset + 1)
                    if self.part_of(x) not in parts)
        return (x for x in itertools.count(max(lo, 1)) if self.part_of(x) not in parts)


# ---------------------------------------------------------------------------
# compatibility graphs


class CompatibilityGraph(GraphOracle):
    """Comparability graph of a perfect rooted tree: u ~ v iff one is an ancestor of the other."""

    def __init__(self, tree: DaryTree):
        if PERFECT_ROOTED_TREE not in tree.traits:
            raise ValueError("compatibility graphs need a perfect rooted tree")
        super().__init__({PERFECT_ROOTED_TREE})
        self.tree = tree
        self.name = f"ctr:{tree.name}"

    def compatible(self, u: int, v: int) -> bool:
        if u == v:
            return True
        lo, hi = (u, v) if u < v else (v, u)
        while hi > lo:
            hi = self.tree.parent(hi)
        return hi == lo

    def adjacent(self, u, v):
        return u != v and self.compatible(u, v)

    def adjacent_many(self, v, arr):
        arr = _i64(arr)
        d = self.tree.d
        anc = set(self.tree.ancestors(v))
        out = np.isin(arr, list(anc)) if anc else np.zeros(len(arr), dtype=bool)
        # descendants of v: walk each candidate up to v's depth
        cur = arr.copy()
        mask = cur > v
        while mask.any():
            cur = np.where(mask, (cur - 2) // d + 1, cur)
            out |= cur == v
            mask = cur > v
        out[arr == v] = False
        return out

    def iter_common_neighbors(self, ws, lo=1):
        ws = sorted(set(ws))
        if not ws:
            yield from itertools.count(max(lo, 1))
            return
        bottom = max(ws, key=self.depth)
        anc = set(self.tree.ancestors(bottom))
        if all(w == bottom or w in anc for w in ws):
            # a chain: its ancestors-and-descendants closure, then everything below
            for x in sorted(anc - set(ws)):
                if x >= lo:
                    yield x
            d, first, width = self.tree.d, bottom, 1
            while True:
                first, width = d * (first - 1) + 2, width * d
                for x in range(max(first, lo), first + width):
                    yield x
        else:
            # with two incomparable members, x is an ancestor of one of them
            cand = set().union(*(self.tree.ancestors(w) for w in ws)) - set(ws)
            for x in sorted(cand):
                if x >= lo and all(self.compatible(x, w) for w in ws):
                    yield x

    def level(self, n: int) -> list[int]:
        """R_n: the vertices at depth n, a maximal finite antichain."""
        d = self.tree.d
        first = (d ** n - 1) // (d - 1) + 1
        return list(range(first, first + d ** n))

    def depth(self, v: int) -> int:
        return self.tree.depth(v)


# ---------------------------------------------------------------------------
# constructors


def rado_graph() -> RadoGraph:
    return RadoGraph()


def bipartite_rado_graph() -> BipartiteRadoGraph:
    return BipartiteRadoGraph()


def half_graph() -> HalfGraph:
    return HalfGraph()


def bipartite_half_graph() -> BipartiteHalfGraph:
    return BipartiteHalfGraph()


def h_d_graph(d: int) -> HdGraph:
    return HdGraph(d)


def multipartite_graph(spec: MultipartiteSpec) -> MultipartiteGraph:
    return MultipartiteGraph(spec)


def compatibility_graph(spec: TreeSpec) -> CompatibilityGraph:
    if spec.kind != "dary" or spec.d < 2:
        raise ValueError("compatibility graphs need a d-ary tree with d >= 2")
    return CompatibilityGraph(DaryTree(spec.d))
