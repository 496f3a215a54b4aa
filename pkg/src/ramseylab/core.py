"""Oracles for infinite graphs, vertex sets and edge-colorings of K_N, plus densities.

Vertices are positive Python ints (unbounded).  Everything here is pure: an
oracle answers the same question the same way every time, so instances can be
shared freely between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

WINDOW_START = 2 ** 10
WINDOW_CAP = 2 ** 22

# Traits a graph may declare.
LOCALLY_FINITE = "locally-finite"
ONE_WAY_LOCALLY_FINITE = "one-way-k-locally-finite"
ZERO_RULED = "zero-ruled"
BIPARTITE = "bipartite"
TREE_TYPE_1 = "tree-type-1"
TREE_TYPE_2 = "tree-type-2"
PERFECT_ROOTED_TREE = "perfect-rooted-tree"
STRONGLY_CONTRACTING = "strongly-contracting"
DEGENERATE = "degenerate"
KWISE_INTERSECTING = "kwise-intersecting"


class Finiteness(str, enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


FINITE = Finiteness.FINITE
INFINITE = Finiteness.INFINITE


class NotDecidable(Exception):
    """Raised when an analytic question has no analytic answer available."""


class WindowExhausted(RuntimeError):
    """A bounded search ran past its cap without finding what it needed."""

    def __init__(self, what: str, query=None, cap: int = WINDOW_CAP):
        self.query = query
        self.cap = cap
        super().__init__(f"{what}: nothing found up to {cap} (query={query!r})")


def _check_vertex(v: int) -> None:
    if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
        raise ValueError(f"vertices are integers >= 1, got {v!r}")


# ---------------------------------------------------------------------------
# exact closed forms: finite unions of (residue class) ∩ (interval)


@dataclass(frozen=True)
class Piece:
    """{n : lo <= n <= hi, n ≡ residue (mod modulus)}; hi=None means unbounded."""

    modulus: int = 1
    residue: int = 0
    lo: int = 1
    hi: int | None = None

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)
        if self.lo < 1:
            object.__setattr__(self, "lo", 1)

    def contains(self, n: int) -> bool:
        if n < self.lo or (self.hi is not None and n > self.hi):
            return False
        return n % self.modulus == self.residue

    def mask(self, t: int) -> np.ndarray:
        m = np.zeros(t + 1, dtype=bool)
        hi = t if self.hi is None else min(t, self.hi)
        if hi < self.lo:
            return m
        first = self.lo + ((self.residue - self.lo) % self.modulus)
        m[first:hi + 1:self.modulus] = True
        return m


@dataclass(frozen=True)
class ExactForm:
    pieces: tuple[Piece, ...] = ()

    def contains(self, n: int) -> bool:
        return any(p.contains(n) for p in self.pieces)

    def mask(self, t: int) -> np.ndarray:
        m = np.zeros(t + 1, dtype=bool)
        for p in self.pieces:
            m |= p.mask(t)
        return m

    def union(self, other: "ExactForm") -> "ExactForm":
        return ExactForm(self.pieces + other.pieces)

    def density(self) -> Fraction:
        infinite = [p for p in self.pieces if p.hi is None]
        if not infinite:
            return Fraction(0)
        period = reduce(math.lcm, (p.modulus for p in infinite), 1)
        # past every finite piece and every lower bound, membership is periodic
        base = max([p.lo for p in self.pieces] + [p.hi or 0 for p in self.pieces])
        hits = sum(1 for n in range(base + 1, base + period + 1)
                   if any(p.contains(n) for p in infinite))
        return Fraction(hits, period)


def residue_class(modulus: int, residue: int, lo: int = 1) -> ExactForm:
    return ExactForm((Piece(modulus, residue, lo),))


def interval(lo: int, hi: int) -> ExactForm:
    return ExactForm((Piece(1, 0, lo, hi),))


# ---------------------------------------------------------------------------
# vertex sets


class VertexSet:
    """A subset of N given by a membership predicate.

    ``mask_fn(t)`` may be supplied as a vectorised shortcut; it must return a
    boolean array of length t+1 whose index 0 is False.
    """

    def __init__(self, contains: Callable[[int], bool] | None = None, *,
                 exact: ExactForm | None = None,
                 mask_fn: Callable[[int], np.ndarray] | None = None,
                 name: str = "set"):
        if contains is None:
            if exact is None:
                raise ValueError("need a predicate or an exact form")
            contains = exact.contains
        self._contains = contains
        self.exact = exact
        self._mask_fn = mask_fn if mask_fn is not None else (exact.mask if exact else None)
        self.name = name

    def contains(self, n: int) -> bool:
        return n >= 1 and bool(self._contains(n))

    __contains__ = contains

    def mask(self, t: int) -> np.ndarray:
        if self._mask_fn is not None:
            m = np.asarray(self._mask_fn(t), dtype=bool)
            m[0] = False
            return m
        m = np.zeros(t + 1, dtype=bool)
        for n in range(1, t + 1):
            if self._contains(n):
                m[n] = True
        return m

    def enumerate_upto(self, t: int) -> list[int]:
        return [int(n) for n in np.flatnonzero(self.mask(t))]

    def count_upto(self, t: int) -> int:
        return int(self.mask(t).sum())

    def __repr__(self):
        return f"VertexSet({self.name})"


def everything() -> VertexSet:
    return VertexSet(exact=residue_class(1, 0), name="N")


def nothing() -> VertexSet:
    return VertexSet(exact=ExactForm(), name="empty")


def finite_set(members: Iterable[int], name: str = "finite") -> VertexSet:
    members = frozenset(int(m) for m in members)
    return VertexSet(exact=ExactForm(tuple(Piece(1, 0, m, m) for m in sorted(members))),
                     name=name)


def intersection(*sets: VertexSet, name: str = "meet") -> VertexSet:
    def mask(t):
        out = np.ones(t + 1, dtype=bool)
        for s in sets:
            out &= s.mask(t)
        return out
    return VertexSet(lambda n: all(n in s for s in sets), mask_fn=mask, name=name)


def union(*sets: VertexSet, name: str = "join") -> VertexSet:
    exact = None
    if all(s.exact is not None for s in sets):
        exact = reduce(ExactForm.union, (s.exact for s in sets), ExactForm())

    def mask(t):
        out = np.zeros(t + 1, dtype=bool)
        for s in sets:
            out |= s.mask(t)
        return out
    return VertexSet(lambda n: any(n in s for s in sets), exact=exact, mask_fn=mask, name=name)


# ---------------------------------------------------------------------------
# densities


def prefix_density(s: VertexSet, t: int) -> Fraction:
    """|s ∩ [1, t]| / t, exactly."""
    if t < 1:
        raise ValueError("horizon must be >= 1")
    return Fraction(s.count_upto(t), t)


def geometric_schedule(stop: int, start: int = 1000, ratio: Fraction = Fraction(3, 2)) -> list[int]:
    """Horizons ceil(start * ratio**j) up to ``stop``; ``stop`` itself is appended."""
    ratio = Fraction(ratio)
    out = []
    j = 0
    while True:
        h = math.ceil(start * ratio ** j)
        if h >= stop:
            break
        out.append(h)
        j += 1
    out.append(stop)
    return out


def _burn(n: int, burn_in: int) -> int:
    # never burn the whole schedule
    return min(burn_in, n - 1)


@dataclass(frozen=True)
class DensityProfile:
    horizons: tuple[int, ...]
    samples: tuple[Fraction, ...]
    ud_estimate: Fraction
    ld_estimate: Fraction
    exact: bool = False
    exact_value: Fraction | None = None


def density_profile(s: VertexSet, schedule: Sequence[int] | None = None,
                    burn_in: int = 3) -> DensityProfile:
    if schedule is None:
        schedule = geometric_schedule(2 ** 20)
    schedule = [int(h) for h in schedule]
    if len(schedule) < 1:
        raise ValueError("empty schedule")
    if len(schedule) < 2:
        raise ValueError("schedule needs at least two horizons")
    if any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise ValueError("schedule must be strictly increasing and positive")
    counts = np.cumsum(s.mask(schedule[-1]))
    samples = tuple(Fraction(int(counts[h]), h) for h in schedule)
    tail = samples[_burn(len(samples), burn_in):]
    exact_value = exact_density(s) if s.exact is not None else None
    return DensityProfile(tuple(schedule), samples, max(tail), min(tail),
                          exact_value is not None, exact_value)


def exact_density(s: VertexSet) -> Fraction:
    if s.exact is None:
        raise ValueError(f"{s.name} has no exact form")
    return s.exact.density()


@dataclass(frozen=True)
class ZfProfile:
    horizons: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    verdict: str


def zf_membership_profile(s: VertexSet, f: Callable[[int], int | float],
                          schedule: Sequence[int] | None = None,
                          burn_in: int = 3) -> ZfProfile:
    """Ratios |s ∩ [n]| / f(n) and a trend verdict.

    The verdict is read off the log-log slope of the post-burn-in ratios:
    below -0.1 is vanishing, above 0.1 diverging, otherwise bounded.
    """
    if schedule is None:
        schedule = geometric_schedule(2 ** 20)
    schedule = list(schedule)
    vals = [f(n) for n in schedule]
    if any(v <= 0 for v in vals):
        raise ValueError("growth function must be positive on the schedule")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise ValueError("growth function must be nondecreasing on the schedule")
    counts = np.cumsum(s.mask(schedule[-1]))
    ratios = tuple(Fraction(int(counts[n])) / Fraction(v) for n, v in zip(schedule, vals))
    k = _burn(len(ratios), burn_in)
    tail_r, tail_n = ratios[k:], schedule[k:]
    if all(r == 0 for r in tail_r) or tail_r[-1] == 0:
        verdict = "vanishing-trend"
    elif len(tail_r) < 2:
        verdict = "bounded-trend"
    else:
        floor = min(r for r in tail_r if r > 0) / 2
        y = np.log([float(max(r, floor)) for r in tail_r])
        x = np.log(np.asarray(tail_n, dtype=float))
        slope = float(np.polyfit(x, y, 1)[0])
        verdict = ("diverging-trend" if slope > 0.1 else
                   "vanishing-trend" if slope < -0.1 else "bounded-trend")
    return ZfProfile(tuple(schedule), ratios, verdict)


# ---------------------------------------------------------------------------
# truncated binary expansions and cylinders


def truncated_binary(n: int) -> str:
    """Binary expansion of n without its leading 1, e.g. 19 -> "0011"."""
    _check_vertex(n)
    return bin(n)[3:]


def extends(s: int, t: int) -> bool:
    """True when t >= s and, reading right to left, truncated(t) starts with truncated(s)."""
    _check_vertex(s)
    _check_vertex(t)
    if s > t:
        return False
    k = s.bit_length() - 1
    return (t ^ s) & ((1 << k) - 1) == 0


def cylinder(s: int) -> VertexSet:
    """All t extending s.  Its density is 2**-(bitlen(s)-1)."""
    _check_vertex(s)
    k = s.bit_length() - 1
    return VertexSet(lambda t: extends(s, t), exact=residue_class(1 << k, s, lo=s),
                     name=f"<{s}>")


@dataclass(frozen=True)
class NwdWitness:
    t: int
    sound_upto: int


def nwd_witness_search(a: VertexSet, s: int, horizon: int) -> NwdWitness | None:
    """Least extension t <= horizon of s whose cylinder misses a up to the horizon."""
    _check_vertex(s)
    if horizon < s:
        raise ValueError("horizon must be >= s")
    members = np.flatnonzero(a.mask(horizon)).astype(np.int64)
    k = s.bit_length() - 1
    for t in range(s, horizon + 1, 1 << k):
        kt = t.bit_length() - 1
        hit = members[members >= t]
        if not np.any(((hit - t) & ((1 << kt) - 1)) == 0):
            return NwdWitness(t, horizon)
    return None


# ---------------------------------------------------------------------------
# bit helpers shared by the bit-predicate graphs


def least_with_bits(lo: int, ones: int = 0, zeros: int = 0) -> int:
    """Least x >= lo with every bit of ``ones`` set and every bit of ``zeros`` clear."""
    if ones & zeros:
        raise ValueError("contradictory bit constraints")
    lo = max(lo, 0)
    if lo & ones == ones and lo & zeros == 0:
        return lo
    best = None
    top = max(lo.bit_length(), ones.bit_length(), zeros.bit_length()) + 1
    for p in range(top + 1):
        if (lo >> p) & 1 or (zeros >> p) & 1:
            continue
        high = ((lo >> (p + 1)) << (p + 1)) | (1 << p)
        above = ~((1 << (p + 1)) - 1)
        if high & zeros & above:
            continue
        if (ones & above) & ~high:
            continue
        x = high | (ones & ((1 << p) - 1))
        if best is None or x < best:
            best = x
    assert best is not None
    return best


def set_bit_positions(n: int) -> list[int]:
    """1-indexed positions of the set bits of n, ascending."""
    out = []
    pos = 1
    while n:
        low = n & -n
        pos = low.bit_length()
        out.append(pos)
        n ^= low
    return out


# ---------------------------------------------------------------------------
# graphs


class GraphOracle:
    """A countably infinite graph on (a subset of) the positive integers.

    Subclasses implement ``adjacent``.  The neighbor iterators below fall back
    to a windowed scan; constructions with structure override them.
    """

    name = "graph"

    def __init__(self, traits: Iterable[str] = ()):
        self.traits = frozenset(traits)

    # -- basic --------------------------------------------------------------
    def adjacent(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def is_vertex(self, v: int) -> bool:
        return v >= 1

    def vertices_upto(self, t: int) -> list[int]:
        return [v for v in range(1, t + 1) if self.is_vertex(v)]

    def adjacent_many(self, v: int, arr: np.ndarray) -> np.ndarray:
        return np.fromiter((self.adjacent(v, int(x)) for x in arr), dtype=bool, count=len(arr))

    def neighbors_upto(self, v: int, t: int) -> list[int]:
        if t < 1:
            return []
        arr = np.arange(1, t + 1, dtype=np.int64)
        hits = self.adjacent_many(v, arr)
        return [int(x) for x in arr[hits] if self.is_vertex(int(x))]

    # -- supply -------------------------------------------------------------
    def iter_neighbors(self, v: int, lo: int = 1) -> Iterator[int]:
        return self.iter_common_neighbors((v,), lo)

    def iter_common_neighbors(self, ws: Sequence[int], lo: int = 1) -> Iterator[int]:
        """Common neighbors of ``ws`` in increasing order, starting at ``lo``."""
        ws = tuple(ws)
        start = lo
        window = WINDOW_START
        while True:
            hi = min(max(window, start), WINDOW_CAP)
            if start <= hi:
                arr = np.arange(start, hi + 1, dtype=np.int64)
                ok = np.ones(len(arr), dtype=bool)
                for w in ws:
                    ok &= self.adjacent_many(w, arr)
                for x in arr[ok]:
                    x = int(x)
                    if x not in ws and self.is_vertex(x):
                        yield x
                start = hi + 1
            if hi >= WINDOW_CAP:
                raise WindowExhausted("common neighbor search", ws)
            window *= 2

    def independent_extension(self, xs: Iterable[int]) -> int:
        raise NotDecidable(f"{self.name} declares no zero-ruled witness")

    def part_of(self, v: int) -> int:
        raise NotDecidable(f"{self.name} declares no part function")

    def __repr__(self):
        return f"<{self.name}>"


def least_common_neighbor(g: GraphOracle, ws: Iterable[int], avoid=frozenset(),
                          within: Callable[[int], bool] | None = None, lo: int = 1) -> int:
    for x in g.iter_common_neighbors(tuple(sorted(set(ws))), lo):
        if x in avoid:
            continue
        if within is not None and not within(x):
            continue
        return x
    raise WindowExhausted("common neighbor search", tuple(ws))


# ---------------------------------------------------------------------------
# colorings


class ColoringOracle:
    """A symmetric r-coloring of the pairs of positive integers.

    Subclasses implement ``_color(lo, hi)`` for lo < hi.  Colorings that know
    their own structure also describe a finite partition of N into "cells"
    such that whether a vertex has infinitely many c-neighbors in a cell
    depends only on the cell the vertex lives in.  That is what powers the
    analytic ``finiteness`` answers.
    """

    name = "coloring"

    def __init__(self, colors: int):
        if colors < 2:
            raise ValueError("need at least two colors")
        self.colors = colors

    def _color(self, lo: int, hi: int) -> int:
        raise NotImplementedError

    def defined(self, u: int, v: int) -> bool:
        return True

    def color(self, u: int, v: int) -> int:
        _check_vertex(u)
        _check_vertex(v)
        if u == v:
            raise ValueError("no color on a loop")
        return self._color(min(u, v), max(u, v))

    def color_many(self, v: int, arr: np.ndarray) -> np.ndarray:
        """Colors of {v, x} for x in arr; -1 where x == v or the pair is uncolored."""
        return np.fromiter((self._color(min(v, int(x)), max(v, int(x)))
                            if x != v and self.defined(v, int(x)) else -1 for x in arr),
                           dtype=np.int64, count=len(arr))

    def neighborhood(self, v: int, c: int) -> VertexSet:
        def mask(t):
            arr = np.arange(t + 1, dtype=np.int64)
            m = self.color_many(v, arr) == c
            m[0] = False
            return m
        return VertexSet(lambda x: x != v and self.defined(v, x) and self.color(v, x) == c,
                         mask_fn=mask, name=f"N_{c}({v})")

    def neighbors_upto(self, v: int, c: int, t: int) -> list[int]:
        return self.neighborhood(v, c).enumerate_upto(t)

    def class_graph(self, c: int) -> GraphOracle:
        return ColorClassGraph(self, c)

    # -- analytic structure ---------------------------------------------------
    def cells(self) -> list[VertexSet] | None:
        return None

    def cell_of(self, v: int) -> int:
        raise NotDecidable(f"{self.name} has no cell structure")

    def cell_infinite(self, a: int, c: int, b: int) -> bool:
        raise NotDecidable(f"{self.name} has no cell structure")

    def finiteness(self, v: int, c: int) -> Finiteness:
        cells = self.cells()
        if cells is None:
            raise NotDecidable(f"{self.name} has no finiteness oracle")
        a = self.cell_of(v)
        return INFINITE if any(self.cell_infinite(a, c, b) for b in range(len(cells))) else FINITE

    def finiteness_within(self, v: int, c: int, s: VertexSet) -> Finiteness:
        cells = self.cells()
        if cells is None:
            raise NotDecidable(f"{self.name} has no finiteness oracle")
        ids = cell_ids_of(self, s)
        a = self.cell_of(v)
        return INFINITE if any(self.cell_infinite(a, c, b) for b in ids) else FINITE

    def cell_union(self, ids: Iterable[int], name: str = "") -> "CellUnion":
        return CellUnion(self, ids, name)


class CellUnion(VertexSet):
    """A union of cells of a coloring, with exact membership."""

    def __init__(self, coloring: ColoringOracle, ids: Iterable[int], name: str = ""):
        self.coloring = coloring
        self.cell_ids = frozenset(ids)
        cells = coloring.cells()
        chosen = [cells[i] for i in sorted(self.cell_ids)]
        exact = None
        if all(c.exact is not None for c in chosen):
            exact = reduce(ExactForm.union, (c.exact for c in chosen), ExactForm())

        def mask(t):
            out = np.zeros(t + 1, dtype=bool)
            for c in chosen:
                out |= c.mask(t)
            return out
        super().__init__(lambda n: coloring.cell_of(n) in self.cell_ids, exact=exact,
                         mask_fn=mask, name=name or f"cells{sorted(self.cell_ids)}")


def cell_ids_of(coloring: ColoringOracle, s: VertexSet) -> frozenset[int]:
    if isinstance(s, CellUnion) and s.coloring is coloring:
        return s.cell_ids
    n = len(coloring.cells())
    if s.exact is not None and s.exact == everything().exact:
        return frozenset(range(n))
    if s.exact is not None and not s.exact.pieces:
        return frozenset()
    raise NotDecidable("set is not a union of the coloring's cells")


class ColorClassGraph(GraphOracle):
    """The spanning subgraph G_c of a coloring."""

    def __init__(self, coloring: ColoringOracle, c: int):
        super().__init__()
        if not 0 <= c < coloring.colors:
            raise ValueError(f"color {c} out of range")
        self.coloring = coloring
        self.c = c
        self.name = f"{coloring.name}[color {c}]"

    def adjacent(self, u, v):
        return u != v and self.coloring.defined(u, v) and self.coloring.color(u, v) == self.c

    def adjacent_many(self, v, arr):
        return self.coloring.color_many(v, arr) == self.c
