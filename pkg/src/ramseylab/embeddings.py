"""Step-bounded embedding engines with checkable certificates.

Each engine advances a PartialEmbedding one cycle at a time.  All choices are
deterministic, and running k cycles then k' more gives exactly the state of
running k + k' cycles, so partial runs can be resumed.
"""

from __future__ import annotations

import copy
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .colorings import ResidueColoring
from .core import (WINDOW_CAP, WINDOW_START, ColoringOracle, GraphOracle, NotDecidable,
                   WindowExhausted, least_common_neighbor)
from .zoo import (CompatibilityGraph, HdGraph, IncreasingStar, MultipartiteGraph, RadoGraph,
                  TreeGraph, _lex_subsets, _upper_guard)

# Images of vertices that still need neighbors are kept below this many bits.
VIABLE_BITS = 128
# Spare small neighbors given to large images that still need children.
RESERVE = 4
# Breadth-first path searches look at host vertices up to this bound.
PATH_WINDOW = 2 ** 14
# Probe depth used to tell a finite neighborhood from an infinite one.
DEGREE_PROBE = 64


class EmbeddingRefused(ValueError):
    """The inputs do not meet an engine's preconditions."""


class PathNotFound(WindowExhausted):
    """No host path with the required endpoints exists inside the search window."""


@dataclass(frozen=True)
class StepRow:
    step: int
    guest: int
    host: int
    rule: str


@dataclass
class PartialEmbedding:
    guest: GraphOracle
    host: GraphOracle
    engine: str
    color_constraint: tuple[ColoringOracle, int] | None = None
    mapping: dict[int, int] = field(default_factory=dict)
    trace: list[StepRow] = field(default_factory=list)
    steps_done: int = 0
    state: dict = field(default_factory=dict)

    def __post_init__(self):
        self._ran = set(self.mapping.values())

    @property
    def ran(self) -> set[int]:
        return self._ran

    def put(self, g: int, h: int, rule: str) -> None:
        if g in self.mapping:
            raise AssertionError(f"guest {g} embedded twice")
        if h in self._ran:
            raise AssertionError(f"host {h} used twice")
        self.mapping[g] = h
        self._ran.add(h)
        self.trace.append(StepRow(self.steps_done, g, h, rule))

    def inverse(self) -> dict[int, int]:
        return {h: g for g, h in self.mapping.items()}

    def covered_host_prefix(self, within: Callable[[int], bool] | None = None) -> int:
        """Largest m such that the first m host vertices (inside ``within``) are covered."""
        m = 0
        v = 0
        while True:
            v += 1
            if not self.host.is_vertex(v) or (within is not None and not within(v)):
                if v > WINDOW_CAP:
                    return m
                continue
            if v not in self._ran:
                return m
            m += 1

    def frontier(self) -> int:
        v = 1
        while not self.host.is_vertex(v) or v in self._ran:
            v += 1
        return v

    def copy(self) -> "PartialEmbedding":
        out = copy.copy(self)
        out.mapping = dict(self.mapping)
        out.trace = list(self.trace)
        out.state = copy.deepcopy(self.state)
        out._ran = set(self._ran)
        return out

    def rows(self) -> list[tuple[int, int, int, str]]:
        return [(r.step, r.guest, r.host, r.rule) for r in self.trace]


@dataclass(frozen=True)
class EmbeddingReport:
    valid: bool
    violations: tuple[str, ...]
    coverage: int
    mono: bool
    surjectivity_frontier: int


def verify_embedding(pe: PartialEmbedding, max_violations: int = 50) -> EmbeddingReport:
    """Check injectivity, adjacency and color on every pair of embedded guest vertices."""
    bad: list[str] = []
    mono = True
    if len(pe.ran) != len(pe.mapping) or len(set(pe.mapping.values())) != len(pe.mapping):
        bad.append("map is not injective")
    dom = sorted(pe.mapping)
    arr = np.asarray(dom, dtype=np.int64) if dom and dom[-1] < 2 ** 62 else None
    for i, u in enumerate(dom):
        if arr is not None:
            hits = np.flatnonzero(pe.guest.adjacent_many(u, arr[i + 1:])) + i + 1
            nbrs = [dom[j] for j in hits]
        else:
            nbrs = [v for v in dom[i + 1:] if pe.guest.adjacent(u, v)]
        fu = pe.mapping[u]
        for v in nbrs:
            fv = pe.mapping[v]
            if not pe.host.adjacent(fu, fv):
                bad.append(f"guest edge {u}-{v} maps to host non-edge {fu}-{fv}")
            elif pe.color_constraint is not None:
                coloring, c = pe.color_constraint
                got = coloring.color(fu, fv)
                if got != c:
                    mono = False
                    bad.append(f"guest edge {u}-{v} maps to {fu}-{fv} of color {got}, not {c}")
            if len(bad) >= max_violations:
                break
        if len(bad) >= max_violations:
            break
    return EmbeddingReport(not bad, tuple(bad), pe.covered_host_prefix(), mono, pe.frontier())


def _host(host) -> tuple[GraphOracle, tuple[ColoringOracle, int] | None]:
    if isinstance(host, tuple):
        coloring, c = host
        return coloring.class_graph(c), (coloring, c)
    return host, None


def _start(resume: PartialEmbedding | None, engine: str, guest, host, **state) -> PartialEmbedding:
    if resume is not None:
        if resume.engine != engine:
            raise EmbeddingRefused(f"cannot resume a {resume.engine} run with {engine}")
        return resume.copy()
    h, constraint = _host(host)
    return PartialEmbedding(guest, h, engine, constraint, state=state)


def _run(pe: PartialEmbedding, steps: int, cycle: Callable[[PartialEmbedding], None],
         check: Callable[[PartialEmbedding], None] | None = None) -> PartialEmbedding:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    for _ in range(steps):
        cycle(pe)
        pe.steps_done += 1
        if check is not None:
            check(pe)
    return pe


def _least_free(g: GraphOracle, taken: set[int], lo: int = 1,
                within: Callable[[int], bool] | None = None) -> int:
    v = max(lo, 1)
    while not g.is_vertex(v) or v in taken or (within is not None and not within(v)):
        v += 1
        if v > WINDOW_CAP and within is not None:
            raise WindowExhausted("free vertex search", lo)
    return v


def _least_common_free(host: GraphOracle, ws: Iterable[int], ran: set[int],
                       within: Callable[[int], bool] | None = None) -> int:
    ws = sorted(set(ws))
    if not ws:
        return _least_free(host, ran, within=within)
    return least_common_neighbor(host, ws, avoid=ran, within=within)


# ---------------------------------------------------------------------------
# surjective embeddings of zero-ruled graphs


def _neighbors_in(g: GraphOracle, t: int, dom: Sequence[int]) -> list[int]:
    dom = list(dom)
    if dom and t < 2 ** 62 and max(dom) < 2 ** 62:
        hit = g.adjacent_many(t, np.asarray(dom, dtype=np.int64))
        return [dom[i] for i in np.flatnonzero(hit)]
    return [x for x in dom if g.adjacent(t, x)]


def _witness(guest: GraphOracle, dom: set[int]) -> int:
    """A guest vertex with no neighbor in dom: the least one in a window past
    the least unembedded vertex, else the guest's own independent extension."""
    start = _least_free(guest, dom)
    small = sorted(u for u in dom if u < 2 ** 62)
    if len(small) == len(dom) and start < 2 ** 62 - WINDOW_START:
        cand = np.arange(start, start + WINDOW_START, dtype=np.int64)
        ok = np.fromiter((guest.is_vertex(int(x)) and int(x) not in dom for x in cand),
                         dtype=bool, count=len(cand))
        for u in small:
            ok &= ~guest.adjacent_many(u, cand)
            if not ok.any():
                break
        if ok.any():
            return int(cand[np.flatnonzero(ok)[0]])
    try:
        return guest.independent_extension(dom)
    except NotDecidable:
        raise WindowExhausted("independent vertex search", tuple(sorted(dom))) from None


def _zero_ruled_cycle(pe: PartialEmbedding) -> None:
    g, h = pe.guest, pe.host
    w = _witness(g, set(pe.mapping))
    pe.put(w, _least_free(h, pe.ran), "witness")
    t = _least_free(g, set(pe.mapping))
    ws = [pe.mapping[x] for x in _neighbors_in(g, t, list(pe.mapping))]
    pe.put(t, _least_common_free(h, ws, pe.ran), "fill")


def embed_zero_ruled(guest: GraphOracle, host, steps: int,
                     resume: PartialEmbedding | None = None) -> PartialEmbedding:
    """Cover the host in order while embedding a zero-ruled guest.

    Each cycle sends a guest vertex with no embedded neighbor to the least
    uncovered host vertex, then embeds the least unembedded guest vertex into
    a common neighbor of the images of its embedded neighbors.
    """
    _require_witness(guest)
    pe = _start(resume, "zero-ruled", guest, host)
    return _run(pe, steps, _zero_ruled_cycle)


def _require_witness(guest: GraphOracle) -> None:
    try:
        guest.independent_extension(())
    except NotDecidable as e:
        raise EmbeddingRefused(f"{guest.name} has no zero-ruled witness") from e


def _degenerate_witness(guest: GraphOracle, blocked: set[int]) -> int:
    """Least guest vertex outside ``blocked`` whose back-neighbors avoid ``blocked``."""
    if isinstance(guest, HdGraph):
        for v in range(1, guest.d + 1):
            if v not in blocked:
                return v
        i = 0
        while True:
            guest._stage_count(i + 1)
            base = guest.n[i]
            for sub in _lex_subsets(1, base, guest.d, blocked):
                w = guest.vertex_for(sub, i)
                if w not in blocked:
                    return w
                break
            i += 1
            if i > 64:
                raise WindowExhausted("independent vertex search", tuple(sorted(blocked)))
    for w in range(1, WINDOW_CAP + 1):
        if guest.is_vertex(w) and w not in blocked and not blocked.intersection(
                guest.back_neighbors(w)):
            return w
    raise WindowExhausted("independent vertex search", tuple(sorted(blocked)))


def _degenerate_cycle(pe: PartialEmbedding) -> None:
    g, h = pe.guest, pe.host
    d = pe.state["d"]
    # vertices with an embedded forward neighbor may not gain a second one
    forward = set()
    for x in pe.mapping:
        forward.update(g.back_neighbors(x))
    w = _degenerate_witness(g, set(pe.mapping) | forward)
    pe.put(w, _least_free(h, pe.ran), "witness")
    t = _least_free(g, set(pe.mapping))
    ws = [pe.mapping[b] for b in g.back_neighbors(t) if b in pe.mapping]
    ws += [pe.mapping[x] for x in pe.mapping if t in g.back_neighbors(x)]
    if len(ws) > d + 1:
        raise AssertionError(f"query of size {len(ws)} for guest {t}")
    pe.state["max_seen"] = max(pe.state["max_seen"], len(ws))
    pe.put(t, _least_common_free(h, ws, pe.ran), "fill")


def embed_degenerate_zero_ruled(guest: GraphOracle, host, steps: int, d: int,
                                resume: PartialEmbedding | None = None,
                                check_upto: int = 256) -> PartialEmbedding:
    """Surjective embedding of a zero-ruled guest with back-degree <= d into a
    (d+1)-wise intersecting host; no host query involves more than d+1 vertices.

    Each cycle sends a witness to the least uncovered host vertex and then the
    least unembedded guest vertex to a common neighbor of its embedded
    neighbors' images.  A witness is only used if none of its back-neighbors
    already has an embedded forward neighbor, which caps the queries at d+1.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if not hasattr(guest, "back_neighbors"):
        raise EmbeddingRefused(f"{guest.name} exposes no construction order")
    _require_witness(guest)
    if resume is None:
        bd = max(len(guest.back_neighbors(v)) for v in guest.vertices_upto(check_upto))
        if bd > d:
            raise EmbeddingRefused(f"guest back-degree {bd} exceeds d={d}")
    pe = _start(resume, "degenerate-zero-ruled", guest, host, d=d, max_seen=0)
    return _run(pe, steps, _degenerate_cycle)


# ---------------------------------------------------------------------------
# layered embeddings of one-way locally finite graphs


def embed_cascade(guest: GraphOracle, host, layers: Sequence[Callable[[int], bool]], steps: int,
                  resume: PartialEmbedding | None = None) -> PartialEmbedding:
    """Embed a one-way k-locally finite guest so that the first host layer is covered in order.

    Each step takes the least unembedded vertex of every guest part, closes it
    under earlier-part neighbors, sends the first-part vertices to the least
    free first-layer vertices and every later vertex into its layer, adjacent
    to the images of its earlier-part neighbors.
    """
    from .analyzers import left_neighborhood_cascade

    k = getattr(guest, "k", None)
    if k is None:
        raise EmbeddingRefused(f"{guest.name} has no part structure")
    if len(layers) != k:
        raise EmbeddingRefused(f"need {k} host layers, got {len(layers)}")
    pe = _start(resume, "cascade", guest, host)

    def least_unembedded(part):
        v = 1
        while not (guest.is_vertex(v) and guest.part_of(v) == part and v not in pe.mapping):
            v += 1
            if v > WINDOW_CAP:
                return None
        return v

    def cycle(pe):
        s = [x for i in range(1, k + 1) if (x := least_unembedded(i)) is not None]
        cascade = left_neighborhood_cascade(guest, s)
        for i, t in enumerate(cascade):
            fresh = [x for x in t if x not in pe.mapping]
            for x in fresh:
                if i == 0:
                    y = _least_free(pe.host, pe.ran, within=layers[0])
                else:
                    ws = [pe.mapping[b] for b in guest.back_neighbors(x)]
                    y = _least_common_free(pe.host, ws, pe.ran, within=layers[i])
                pe.put(x, y, f"layer{i + 1}")

    def check(pe):
        for x in pe.mapping:
            for b in guest.back_neighbors(x):
                if b not in pe.mapping:
                    raise AssertionError(f"cascade closure broken at {x}")

    return _run(pe, steps, cycle, check)


# ---------------------------------------------------------------------------
# tree embeddings


def _first_free_neighbor(host: GraphOracle, y: int, avoid: set[int]) -> int | None:
    try:
        for z in host.iter_neighbors(y):
            if z not in avoid and z != y:
                return z
    except WindowExhausted:
        return None
    return None


def _viable(host: GraphOracle, y: int, avoid: set[int]) -> bool:
    z = _first_free_neighbor(host, y, avoid | {y})
    return z is not None and z.bit_length() <= VIABLE_BITS


def _rado_upper_viable(x: int, avoid: set[int]) -> int:
    """Least y > x adjacent to x in the Rado graph that stays extendable.

    Small y (at most VIABLE_BITS) have plenty of modest upper neighbors.  A
    larger y only has its set bits as usable neighbors, so it also carries the
    bits of the RESERVE smallest free vertices: one cycle uses fewer than that
    many small vertices, so some of them are still free when y needs them.
    """
    from .core import least_with_bits

    _upper_guard(x, (x,))
    if x < VIABLE_BITS.bit_length():
        y = least_with_bits(x + 1, 1 << (x - 1))
        while y in avoid:
            y = least_with_bits(y + 1, 1 << (x - 1))
        if y <= VIABLE_BITS:
            return y
    ones = 1 << (x - 1)
    p = 0
    found = 0
    while found < RESERVE:
        p += 1
        if p != x and p not in avoid:
            ones |= 1 << (p - 1)
            found += 1
    y = least_with_bits(x + 1, ones)
    while y in avoid:
        y = least_with_bits(y + 1, ones)
    return y


def least_viable_neighbor(host: GraphOracle, x: int, avoid: set[int]) -> int:
    """Least free neighbor of x that itself keeps a free neighbor of modest size.

    A vertex that will receive further tree children needs somewhere to put
    them.  In the Rado graph the plain least choice can land on a vertex whose
    only free neighbors are astronomically large, so the candidate is chosen
    among those that stay extendable.
    """
    if isinstance(host, RadoGraph):
        for p in host.lower_neighbors(x):
            if p not in avoid and p <= VIABLE_BITS:
                return p
        return _rado_upper_viable(x, avoid)
    seen = 0
    for y in host.iter_neighbors(x):
        if y in avoid:
            continue
        if _viable(host, y, avoid | {y}):
            return y
        seen += 1
        if seen > WINDOW_START:
            break
    raise WindowExhausted("extendable neighbor search", x)


def _least_neighbor(host: GraphOracle, x: int, avoid: set[int]) -> int:
    for y in host.iter_neighbors(x):
        if y not in avoid:
            return y
    raise WindowExhausted("neighbor search", x)


def find_path_avoiding(host: GraphOracle, a: int, b: int, avoid: set[int],
                       window: int = PATH_WINDOW) -> list[int]:
    """A short a-b path whose internal vertices avoid ``avoid``.

    Tries the edge, then a least common neighbor, then breadth-first search
    over host vertices up to ``window``.
    """
    if host.adjacent(a, b):
        return [a, b]
    try:
        for x in host.iter_common_neighbors((a, b)):
            if x not in avoid:
                return [a, x, b]
            if x > window:
                break
    except WindowExhausted:
        pass
    arr = np.arange(1, window + 1, dtype=np.int64)
    free = np.ones(window + 1, dtype=bool)
    free[0] = False
    for v in avoid:
        if v <= window:
            free[v] = False
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u != a and host.adjacent(u, b):
            path = [b, u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        nbrs = arr[host.adjacent_many(u, arr) & free[1:]]
        for y in nbrs:
            y = int(y)
            if y not in prev:
                prev[y] = u
                queue.append(y)
    raise PathNotFound("path search", (a, b), window)


def _has_infinite_degree(g: GraphOracle, v: int) -> bool:
    return sum(1 for _ in itertools.islice(g.iter_neighbors(v), DEGREE_PROBE)) >= DEGREE_PROBE


def _tree_kind(guest: GraphOracle) -> int:
    from .core import TREE_TYPE_1, TREE_TYPE_2
    if TREE_TYPE_1 in guest.traits:
        return 1
    if TREE_TYPE_2 in guest.traits:
        return 2
    raise EmbeddingRefused(f"{guest.name} is tagged neither type-1 nor type-2")


def _tree_parent(guest: GraphOracle, v: int) -> int | None:
    if isinstance(guest, TreeGraph):
        return guest.parent(v)
    nb = guest.neighbors_upto(v, v - 1)
    return nb[0] if nb else None


def _has_children(guest: GraphOracle, v: int) -> bool:
    if isinstance(guest, TreeGraph):
        return next(iter(guest.children(v)), None) is not None
    return True


def _fresh_children(guest: GraphOracle, v: int, dom) -> Iterator[int]:
    for c in guest.iter_neighbors(v):
        if c > v and c not in dom:
            yield c


def _guest_path(guest: GraphOracle, kind: int, t_last: int, length: int, dom) -> list[int]:
    """``length`` fresh guest vertices that form a path hanging off t_last."""
    if kind == 2:
        if not isinstance(guest, IncreasingStar):
            raise EmbeddingRefused("type-2 runs need the increasing star's arm supply")
        m = max(length, 1)
        while True:
            arm = guest.arm(m)
            if not any(x in dom for x in arm):
                return arm[:length]
            m += 1
    out = []
    cur = t_last
    for _ in range(length):
        nxt = next(_fresh_children(guest, cur, dom), None)
        if nxt is None:
            raise EmbeddingRefused(f"no fresh path below {cur}")
        out.append(nxt)
        cur = nxt
    return out


def embed_deep_tree(guest: GraphOracle, host: GraphOracle, steps: int,
                    resume: PartialEmbedding | None = None,
                    path_window: int = PATH_WINDOW) -> PartialEmbedding:
    """Spanning embedding of a tree of unbounded radius into an infinitely connected host.

    Each cycle first routes a host path from the least uncovered host vertex
    back to the current anchor and lays a fresh guest path along it, then
    embeds the least unembedded guest vertex next to its parent's image.
    Vertices that still expect children are placed on extendable host
    vertices (see least_viable_neighbor).
    """
    kind = _tree_kind(guest)
    root = getattr(guest, "root", 1)
    pe = _start(resume, "deep-tree", guest, host, kind=kind)
    if resume is None:
        v0 = _least_free(pe.host, set())
        pe.put(root, v0, "root")
        pe.state.update(t_last=root, v_last=v0)

    def cycle(pe):
        st = pe.state
        h = pe.host
        v_next = _least_free(h, pe.ran)
        path = find_path_avoiding(h, v_next, st["v_last"], pe.ran - {st["v_last"]},
                                  window=path_window)
        gpath = _guest_path(guest, kind, st["t_last"], len(path) - 1, pe.mapping)
        # gpath[j] hangs j+1 steps below t_last; path runs v_next ... v_last
        for j, t in enumerate(gpath):
            pe.put(t, path[len(path) - 2 - j], "path")
        if kind == 1:
            st["t_last"], st["v_last"] = gpath[-1], v_next
        t_next = _least_free(guest, set(pe.mapping))
        t_back = _tree_parent(guest, t_next)
        if t_back not in pe.mapping:
            raise AssertionError(f"parent of {t_next} not embedded")
        if _has_children(guest, t_next):
            y = least_viable_neighbor(h, pe.mapping[t_back], pe.ran)
        else:
            y = _least_neighbor(h, pe.mapping[t_back], pe.ran)
        pe.put(t_next, y, "back-edge")
        if kind == 1 and t_back == st["t_last"]:
            # keep v_last = f(t_last) so the next path attaches where the guest does
            st["t_last"], st["v_last"] = t_next, y

    def check(pe):
        for t in pe.mapping:
            p = _tree_parent(guest, t)
            if t != root and p not in pe.mapping:
                raise AssertionError(f"embedded tree disconnected at {t}")

    return _run(pe, steps, cycle, check)


def embed_short_tree(guest: GraphOracle, host: GraphOracle, anchor: int, steps: int,
                     resume: PartialEmbedding | None = None) -> PartialEmbedding:
    """Embed a tree with an infinite-degree root so that the anchor's neighborhood gets covered.

    Round r visits the first r embedded guest vertices in embedding order; each
    visited vertex has its least unembedded neighbor placed on the least free
    host neighbor of its image.
    """
    root = getattr(guest, "root", 1)
    if not _has_infinite_degree(guest, root):
        raise EmbeddingRefused(f"root of {guest.name} has finite degree")
    pe = _start(resume, "short-tree", guest, host)
    if resume is None:
        pe.put(root, anchor, "root")

    def cycle(pe):
        order = list(pe.mapping)
        r = pe.steps_done + 1
        for t in order[:r]:
            s = next((c for c in guest.iter_neighbors(t) if c not in pe.mapping), None)
            if s is None:
                continue
            pe.put(s, _least_neighbor(pe.host, pe.mapping[t], pe.ran), "child")

    return _run(pe, steps, cycle)


# ---------------------------------------------------------------------------
# compatibility graphs into complete multipartite graphs


def _antichain_is_maximal(tree, members: set[int]) -> bool:
    """Does every infinite branch of the perfect tree pass through ``members``?"""
    if not members:
        return False
    deepest = max(tree.depth(m) for m in members)

    def covered(v, depth):
        if v in members:
            return True
        if depth >= deepest:
            return False
        return all(covered(c, depth + 1) for c in tree.children(v))
    return covered(tree.root, 0)


def embed_compat_multipartite(guest: CompatibilityGraph, host: MultipartiteGraph, steps: int,
                              resume: PartialEmbedding | None = None) -> PartialEmbedding:
    """Surjective embedding of a compatibility graph into a complete multipartite graph.

    Guest vertices mapped into one host part must be pairwise incompatible.
    The root chain goes to the singleton parts; each cycle covers the least
    uncovered host vertex (if its part is already in use) with a guest vertex
    incompatible with everything in that part, then sends the not yet embedded
    guest vertices up to the next one to the first vertices of fresh parts.
    """
    if not isinstance(guest, CompatibilityGraph):
        raise EmbeddingRefused("guest must be a compatibility graph")
    if not isinstance(host, MultipartiteGraph):
        raise EmbeddingRefused("host must be a complete multipartite graph")
    tree = guest.tree
    # the root is the initial chain: it is compatible with every vertex
    k = 1
    if host.spec.finite[:k] != (1,) * k:
        raise EmbeddingRefused(f"host needs {k} singleton part(s) first, has {host.spec.finite}")
    if host.spec.infinite is not None:
        raise EmbeddingRefused("host needs infinitely many infinite parts")
    pe = _start(resume, "compat-multipartite", guest, host)
    if resume is None:
        pe.put(tree.root, host.part_member(0, 0), "root")
        pe.state.update(parts={}, used_parts=k, guest_next=tree.root + 1)

    def cycle(pe):
        st = pe.state
        parts: dict[int, list[int]] = st["parts"]
        v = _least_free(host, pe.ran)
        part = host.part_of(v)
        if part in parts:
            members = set(parts[part])
            u = tree.root + 1
            while True:
                if (u not in pe.mapping and all(not guest.compatible(u, m) for m in members)
                        and not _antichain_is_maximal(tree, members | {u})):
                    break
                u += 1
            pe.put(u, v, "antichain")
            parts[part].append(u)
        top = max(pe.mapping)
        gap = [u for u in range(tree.root + 1, top + 2) if u not in pe.mapping]
        for u in gap:
            p = st["used_parts"]
            pe.put(u, host.part_member(p, 0), "fresh-part")
            parts[p] = [u]
            st["used_parts"] = p + 1

    return _run(pe, steps, cycle)


# ---------------------------------------------------------------------------
# spanning embeddings through induced paths


def _fresh_guest_path(guest: GraphOracle, length: int, dom) -> list[int]:
    """``length`` + 1 fresh guest vertices forming a path whose inner vertices have degree 2."""
    if isinstance(guest, IncreasingStar):
        m = length + 1
        while True:
            arm = guest.arm(m)
            # inner vertices of an arm have degree 2; the far end is a leaf
            free = [x for x in arm[1:] if x not in dom]
            if len(free) == len(arm) - 1 and len(free) >= length + 1:
                return free[:length + 1]
            m += 1
    if getattr(guest, "name", "") != "tree:path":
        raise EmbeddingRefused(f"{guest.name} supplies no fresh induced paths")
    start = 2
    while True:
        run = list(range(start, start + length + 1))
        if not any(x in dom for x in run):
            return run
        start = next(x for x in run if x in dom) + 1


def embed_induced_paths(guest: GraphOracle, host: GraphOracle, steps: int,
                        resume: PartialEmbedding | None = None,
                        path_window: int = PATH_WINDOW) -> PartialEmbedding:
    """Spanning embedding into an infinitely connected host with an infinite clique.

    Each step puts the least unembedded guest vertex on a fresh clique vertex,
    then covers the least uncovered host vertex by a host path between clique
    vertices, laid along a fresh guest path whose inner vertices have degree 2.
    """
    if not hasattr(host, "clique_member"):
        raise EmbeddingRefused(f"{host.name} supplies no infinite clique")
    pe = _start(resume, "induced-paths", guest, host, clique_used=0)

    def clique_next(pe):
        st = pe.state
        while True:
            st["clique_used"] += 1
            c = host.clique_member(st["clique_used"])
            if c not in pe.ran:
                return c

    def in_clique(v):
        i = 1
        while True:
            c = host.clique_member(i)
            if c >= v:
                return c == v
            i += 1

    def cycle(pe):
        t = _least_free(guest, set(pe.mapping))
        pe.put(t, clique_next(pe), "clique")
        v = _least_free(host, pe.ran)
        if in_clique(v):
            hpath = [v]
        else:
            a = clique_next(pe)
            left = find_path_avoiding(host, a, v, pe.ran, window=path_window)
            b = clique_next(pe)
            right = find_path_avoiding(host, v, b, pe.ran | set(left), window=path_window)
            hpath = left + right[1:]
        gpath = _fresh_guest_path(guest, len(hpath) - 1, pe.mapping)
        for g, h in zip(gpath, hpath):
            pe.put(g, h, "path")

    return _run(pe, steps, cycle)


# ---------------------------------------------------------------------------
# greedy monochromatic D-ary tree in a residue coloring


@dataclass(frozen=True)
class ResidueTree:
    """A finite piece of a monochromatic D-ary tree; parent[v] for v != root."""

    root: int
    parent: dict
    color: int
    d: int
    horizon: int

    def members(self) -> np.ndarray:
        return np.array(sorted([self.root, *self.parent]), dtype=np.int64)

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, p in sorted(self.parent.items()):
            out.setdefault(p, []).append(v)
        return out


def greedy_residue_tree(coloring: ResidueColoring, color: int, d: int,
                        horizon: int) -> ResidueTree:
    """Densest-first greedy embedding of a D-ary tree in one color of a residue coloring.

    Vertices of the color's own class see that color upward, so they are
    collected as orphans.  Every other vertex joins as soon as it can adopt
    d orphans below it as children and hang off a tree vertex of the class
    with a free child slot.  Orphans left at the horizon are attached to the
    least class vertices with free slots.
    """
    if d < 2:
        raise ValueError("D must be >= 2")
    r = coloring.r
    if not 0 <= color < r:
        raise ValueError(f"color must lie in [0, {r})")
    root = color if color else r
    if horizon < root:
        raise ValueError(f"horizon must reach the root {root}")
    parent: dict[int, int] = {}
    slots: deque[list[int]] = deque([[root, d]])
    orphans: deque[int] = deque()

    def take_slot() -> int:
        p = slots[0]
        p[1] -= 1
        if p[1] == 0:
            slots.popleft()
        return p[0]

    for n in range(root + 1, horizon + 1):
        if n % r == color:
            orphans.append(n)
        elif len(orphans) >= d:
            parent[n] = take_slot()
            for _ in range(d):
                a = orphans.popleft()
                parent[a] = n
                slots.append([a, d])
    while orphans:
        a = orphans.popleft()
        parent[a] = take_slot()
        slots.append([a, d])
    return ResidueTree(root, parent, color, d, horizon)


# ---------------------------------------------------------------------------
# greedy monochromatic clique partition


@dataclass(frozen=True)
class CliquePartition:
    cliques: tuple[tuple[int, tuple[int, ...]], ...]
    leftover: tuple[int, ...]
    horizon: int


def greedy_clique_partition(coloring: ColoringOracle, horizon: int) -> CliquePartition:
    """Greedy disjoint monochromatic cliques inside [horizon], each seeded at the least free vertex.

    From the seed, a clique of each color is grown by adding the least free
    vertex joined to all members in that color; the largest clique is kept
    (ties go to the lower color).  Singletons are returned as leftover.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    arr = np.arange(1, horizon + 1, dtype=np.int64)
    free = np.ones(horizon + 1, dtype=bool)
    free[0] = False
    cliques = []
    leftover = []
    while free.any():
        seed = int(np.flatnonzero(free)[0])
        best = None
        for c in range(coloring.colors):
            members = [seed]
            cand = free.copy()
            cand[seed] = False
            cand[1:] &= coloring.color_many(seed, arr) == c
            while cand.any():
                x = int(np.flatnonzero(cand)[0])
                members.append(x)
                cand[x] = False
                cand[1:] &= coloring.color_many(x, arr) == c
            if best is None or len(members) > len(best[1]):
                best = (c, members)
        c, members = best
        free[members] = False
        if len(members) >= 2:
            cliques.append((c, tuple(members)))
        else:
            leftover.append(seed)
    return CliquePartition(tuple(cliques), tuple(leftover), horizon)
