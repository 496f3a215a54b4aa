"""Finite-prefix structural checks and the cell-level peeling procedures."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .colorings import BLUE, RED
from .core import (INFINITE, ONE_WAY_LOCALLY_FINITE, CellUnion, ColoringOracle, GraphOracle,
                   NotDecidable, VertexSet, prefix_density)

CHROMATIC_CAP = 20
DOMINATION_CAP = 24


@dataclass
class FinitePrefixGraph:
    """Adjacency of the vertices 1..n as a boolean matrix (row i is vertex i+1)."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T) or a.diagonal().any():
            raise ValueError("adjacency must be symmetric and loop-free")
        self.adj = a

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @classmethod
    def from_graph(cls, g: GraphOracle, n: int) -> "FinitePrefixGraph":
        arr = np.arange(1, n + 1, dtype=np.int64)
        adj = np.zeros((n, n), dtype=bool)
        for v in range(1, n + 1):
            if g.is_vertex(v):
                adj[v - 1] = g.adjacent_many(v, arr)
        keep = np.array([g.is_vertex(v) for v in range(1, n + 1)])
        adj &= keep[:, None] & keep[None, :]
        return cls(adj)

    @classmethod
    def from_coloring(cls, coloring: ColoringOracle, c: int, n: int) -> "FinitePrefixGraph":
        arr = np.arange(1, n + 1, dtype=np.int64)
        adj = np.stack([coloring.color_many(v, arr) == c for v in range(1, n + 1)])
        return cls(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FinitePrefixGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
        return cls(adj)

    def neighbor_masks(self) -> list[int]:
        """Bitmask of neighbors per vertex (bit i is vertex i+1)."""
        weights = 1 << np.arange(self.n, dtype=object)
        return [int(sum(weights[row])) for row in self.adj]


def degeneracy(g: FinitePrefixGraph) -> int:
    """Largest minimum degree met while repeatedly deleting a minimum-degree vertex."""
    if g.n < 1:
        raise ValueError("need at least one vertex")
    deg = g.adj.sum(axis=1).astype(np.int64)
    alive = np.ones(g.n, dtype=bool)
    best = 0
    for _ in range(g.n):
        d = np.where(alive, deg, np.iinfo(np.int64).max)
        v = int(np.argmin(d))
        best = max(best, int(deg[v]))
        alive[v] = False
        deg -= g.adj[v] & alive
    return best


def chromatic_number(g: FinitePrefixGraph) -> int:
    if g.n > CHROMATIC_CAP:
        raise ValueError(f"exact coloring is capped at {CHROMATIC_CAP} vertices")
    if g.n == 0:
        return 0
    nbrs = [np.flatnonzero(row).tolist() for row in g.adj]
    order = sorted(range(g.n), key=lambda v: -len(nbrs[v]))

    def colorable(k):
        col = [-1] * g.n

        def place(i):
            if i == g.n:
                return True
            v = order[i]
            used = {col[u] for u in nbrs[v]}
            top = max(col) + 1
            # a fresh color is interchangeable with any other fresh color
            for c in range(min(k, top + 1)):
                if c not in used:
                    col[v] = c
                    if place(i + 1):
                        return True
            col[v] = -1
            return False
        return place(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def dominating_set_exists(g: FinitePrefixGraph, s: int) -> bool:
    """Is there X with |X| <= s such that every vertex outside X has a neighbor in X?

    Adding vertices to a dominating set keeps it dominating, so only sets of
    size min(s, n) are tried.
    """
    if g.n > DOMINATION_CAP:
        raise ValueError(f"exact domination is capped at {DOMINATION_CAP} vertices")
    if s < 0:
        raise ValueError("s must be >= 0")
    k = min(s, g.n)
    full = (1 << g.n) - 1
    nb = g.neighbor_masks()
    for xs in itertools.combinations(range(g.n), k):
        cover = 0
        for x in xs:
            cover |= nb[x] | (1 << x)
        if cover == full:
            return True
    return False


def _rows(g: GraphOracle, vs: Sequence[int], horizon: int) -> np.ndarray:
    arr = np.arange(1, horizon + 1, dtype=np.int64)
    return np.stack([g.adjacent_many(v, arr) for v in vs]) if vs else np.zeros((0, horizon), bool)


def _vertex_mask(g: GraphOracle, horizon: int) -> np.ndarray:
    return np.array([g.is_vertex(v) for v in range(1, horizon + 1)], dtype=bool)


def back_degree(guest: GraphOracle, upto: int) -> int:
    """Largest number of earlier neighbors over the guest vertices <= upto."""
    best = 0
    verts = guest.vertices_upto(upto)
    arr = np.asarray(verts, dtype=np.int64)
    for i, v in enumerate(verts):
        best = max(best, int(guest.adjacent_many(v, arr[:i]).sum()))
    return best


def zero_ruled_window_check(g: GraphOracle, w: int, s: int, horizon: int) -> bool:
    """For every X ⊆ [w] with |X| <= s, is some v <= horizon outside X free of neighbors in X?

    Subsets of a witnessed X are witnessed by the same v, so only the largest
    sets are checked.
    """
    if w > horizon:
        raise ValueError("window must not exceed the horizon")
    verts = [v for v in range(1, w + 1) if g.is_vertex(v)]
    rows = _rows(g, verts, horizon)
    ok = _vertex_mask(g, horizon)
    for idx in itertools.combinations(range(len(verts)), min(s, len(verts))):
        bad = rows[list(idx)].any(axis=0) if idx else np.zeros(horizon, dtype=bool)
        free = ok & ~bad
        for i in idx:
            free[verts[i] - 1] = False
        if not free.any():
            return False
    return True


def kwise_intersecting_check(g: GraphOracle, k: int, m: int, w: int, horizon: int,
                             within: Iterable[int] | VertexSet | None = None) -> bool:
    """Does every S ⊆ [w] (inside ``within`` when given) of size <= k have >= m
    common neighbors <= horizon (inside ``within`` when given)?

    Common neighbors of a superset are common neighbors of the subset, so only
    sets of size min(k, available) are checked.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    ok = _vertex_mask(g, horizon)
    if within is not None:
        if isinstance(within, VertexSet):
            inside = within.mask(horizon)[1:]
        else:
            inside = np.zeros(horizon, dtype=bool)
            for x in within:
                if 1 <= x <= horizon:
                    inside[x - 1] = True
        ok &= inside
    verts = [v for v in range(1, min(w, horizon) + 1) if ok[v - 1]]
    if not verts:
        return False
    rows = _rows(g, verts, horizon)
    for idx in itertools.combinations(range(len(verts)), min(k, len(verts))):
        common = ok & rows[list(idx)].all(axis=0)
        if int(common.sum()) < m:
            return False
    return True


def kwise_self_intersecting_check(g: GraphOracle, k: int, m: int, w: int, horizon: int,
                                  within: Iterable[int] | VertexSet | None = None) -> bool:
    """As kwise_intersecting_check with the witnesses drawn from the candidate set itself."""
    return kwise_intersecting_check(g, k, m, w, horizon,
                                    within=within if within is not None
                                    else range(1, horizon + 1))


def extension_property_check(g: GraphOracle, f: Iterable[int], f_bar: Iterable[int],
                             horizon: int) -> int | None:
    """Least v <= horizon outside F ∪ F' adjacent to all of F and none of F'."""
    f, f_bar = sorted(set(f)), sorted(set(f_bar))
    if set(f) & set(f_bar):
        raise ValueError("F and F' must be disjoint")
    arr = np.arange(1, horizon + 1, dtype=np.int64)
    ok = _vertex_mask(g, horizon)
    for x in f:
        ok &= g.adjacent_many(x, arr)
    for x in f_bar:
        ok &= ~g.adjacent_many(x, arr)
    for x in f + f_bar:
        if x <= horizon:
            ok[x - 1] = False
    hits = np.flatnonzero(ok)
    return int(hits[0]) + 1 if len(hits) else None


def left_neighborhood_cascade(g: GraphOracle, s: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """(S_1, ..., S_k): S_k = S ∩ V_k and S_i = (S ∪ N(S_{i+1}) ∪ ... ∪ N(S_k)) ∩ V_i."""
    if ONE_WAY_LOCALLY_FINITE not in g.traits:
        raise NotDecidable(f"{g.name} does not declare one-way local finiteness")
    k = g.k
    s = set(s)
    layers: list[set[int]] = [set() for _ in range(k + 1)]
    for x in s:
        layers[g.part_of(x)].add(x)
    for i in range(k, 1, -1):
        for x in layers[i]:
            for u in g.back_neighbors(x):
                layers[g.part_of(u)].add(u)
    return tuple(tuple(sorted(layers[i])) for i in range(1, k + 1))


# ---------------------------------------------------------------------------
# ruling product


def ceil_log2_sizes(n: int) -> int | None:
    """|F_n| = ceil(log2 n); n = 1 gives no constraint (factor 1)."""
    return None if n == 1 else (n - 1).bit_length()


@dataclass(frozen=True)
class ProductValue:
    exact: Fraction | None
    approx: float


def ruling_product(sizes: Callable[[int], int | None], n_terms: int) -> ProductValue:
    """prod_{n=1}^{N} (1 - 2^{-|F_n|}); a size of None contributes the factor 1."""
    if n_terms < 1:
        raise ValueError("N must be >= 1")
    exact = Fraction(1) if n_terms <= 64 else None
    logp = 0.0
    for n in range(1, n_terms + 1):
        k = sizes(n)
        if k is None:
            continue
        if k < 0:
            raise ValueError("sizes must be non-negative")
        if exact is not None:
            exact *= 1 - Fraction(1, 2 ** k)
        logp += math.log1p(-(2.0 ** -k)) if k > 0 else -math.inf
    return ProductValue(exact, math.exp(logp) if logp > -math.inf else 0.0)


def ruling_products(sizes: Callable[[int], int | None], n_terms: int) -> np.ndarray:
    """All partial products for N = 1..n_terms as floats."""
    terms = np.array([1.0 if (k := sizes(n)) is None else 1.0 - 2.0 ** -k
                      for n in range(1, n_terms + 1)])
    return np.cumprod(terms)


# ---------------------------------------------------------------------------
# peeling


@dataclass(frozen=True)
class PeelResult:
    R: VertexSet
    S: VertexSet
    trace: tuple[frozenset[int], ...]
    stages_used: int
    horizon: int

    def members(self, which: str = "R") -> list[int]:
        return getattr(self, which).enumerate_upto(self.horizon)


def _require_cells(coloring: ColoringOracle) -> int:
    cells = coloring.cells()
    if cells is None:
        raise NotDecidable(f"{coloring.name} has no analytic finiteness oracle")
    return len(cells)


def peel_deep_tree_sets(coloring: ColoringOracle, max_stages: int = 32,
                        horizon: int = 1000) -> PeelResult:
    """Repeatedly strip the vertices whose blue neighborhood meets the rest finitely.

    Every set involved is a union of the coloring's cells, and the
    finiteness question is uniform on each cell, so each stage is exact.
    """
    if coloring.colors != 2:
        raise ValueError("peeling works on 2-colorings")
    n = _require_cells(coloring)
    s = frozenset(range(n))
    trace = []
    for _ in range(max_stages):
        r = frozenset(a for a in s
                      if not any(coloring.cell_infinite(a, BLUE, b) for b in s))
        if not r:
            break
        trace.append(r)
        s = s - r
    else:
        if any(not any(coloring.cell_infinite(a, BLUE, b) for b in s) for a in s):
            raise RuntimeError(f"peeling still removing cells after {max_stages} stages")
    r_all = frozenset().union(*trace) if trace else frozenset()
    return PeelResult(coloring.cell_union(r_all, "R"), coloring.cell_union(s, "S"),
                      tuple(trace), len(trace), horizon)


@dataclass(frozen=True)
class ShortPeelResult:
    R: VertexSet
    B: VertexSet
    S: VertexSet
    anchor: int
    color: int
    anchor_density: Fraction
    trace: tuple[tuple[frozenset[int], frozenset[int]], ...]
    stages_used: int
    horizon: int


def peel_short_tree_sets(coloring: ColoringOracle, max_stages: int = 32,
                         horizon: int = 1000) -> ShortPeelResult:
    """Two-color peeling: R_a has finitely many blue neighbors in S_a, B_a (the rest)
    finitely many red ones; what survives sees both colors infinitely often.

    The anchor is the least vertex of R_0 (red) or B_0 (blue), whichever side
    together with S is denser at the horizon; if nothing was peeled it is the
    least vertex of S with the color whose neighborhood is denser there.
    """
    if coloring.colors != 2:
        raise ValueError("peeling works on 2-colorings")
    n = _require_cells(coloring)
    s = frozenset(range(n))
    trace = []
    for _ in range(max_stages):
        r = frozenset(a for a in s if not any(coloring.cell_infinite(a, BLUE, b) for b in s))
        rest = s - r
        bl = frozenset(a for a in rest if not any(coloring.cell_infinite(a, RED, b) for b in s))
        if not r and not bl:
            break
        trace.append((r, bl))
        s = rest - bl
    else:
        raise RuntimeError(f"peeling still removing cells after {max_stages} stages")
    r_all = frozenset().union(*(t[0] for t in trace)) if trace else frozenset()
    b_all = frozenset().union(*(t[1] for t in trace)) if trace else frozenset()
    R = coloring.cell_union(r_all, "R")
    B = coloring.cell_union(b_all, "B")
    S = coloring.cell_union(s, "S")
    if r_all or b_all:
        options = []
        for cells0, ids, col in ((trace[0][0], r_all, RED), (trace[0][1], b_all, BLUE)):
            if ids:
                a = coloring.cell_union(ids | s)
                options.append((-prefix_density(a, horizon), col, cells0, ids))
        _, color, cells0, ids = min(options)
        if not cells0:
            # the chosen side was first peeled at a later stage
            cells0 = next(t[0 if color == RED else 1] for t in trace if t[0 if color == RED else 1])
        anchor = min(coloring.cells()[c].enumerate_upto(horizon)[0] for c in cells0)
        selection = coloring.cell_union(ids | s)
    else:
        selection = S
        sel = S.mask(horizon)
        anchor = int(np.flatnonzero(sel)[0])
        color = None
    arr = np.arange(1, horizon + 1, dtype=np.int64)
    cols = coloring.color_many(anchor, arr)
    sel = selection.mask(horizon)[1:]
    counts = {c: int(((cols == c) & sel).sum()) for c in (RED, BLUE)}
    if color is None:
        color = RED if counts[RED] >= counts[BLUE] else BLUE
    return ShortPeelResult(R, B, S, anchor, color, Fraction(counts[color], horizon),
                           tuple(trace), len(trace), horizon)


def short_path_proxy(coloring: ColoringOracle, members: Sequence[int], color: int,
                     horizon: int) -> list[tuple[int, int]]:
    """Pairs of members joined neither directly nor through one vertex <= horizon in the color.

    An empty list means every pair has a color path of length at most 2.
    """
    members = sorted(members)
    marr = np.asarray(members, dtype=np.int64)
    arr = np.arange(1, horizon + 1, dtype=np.int64)
    rows: dict[int, np.ndarray] = {}

    def row(u: int) -> np.ndarray:
        if u not in rows:
            rows[u] = coloring.color_many(u, arr) == color
        return rows[u]

    bad = []
    for i, u in enumerate(members[:-1]):
        direct = coloring.color_many(u, marr[i + 1:]) == color
        for j in np.flatnonzero(~direct):
            v = members[i + 1 + int(j)]
            if not (row(u) & row(v)).any():
                bad.append((u, v))
    return bad
