"""Command-line front end: descriptors, the experiment registry and result files.

Descriptors have the form ``name`` or ``name:param,param,...`` where a param
is ``key=value`` or a bare word, e.g. ``residue:r=3``, ``hd:d=2``,
``tree:tinf`` or ``multi:1,1,inf*``.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import analyzers as an
from . import colorings as co
from . import embeddings as em
from . import zoo
from .core import (ColoringOracle, GraphOracle, NotDecidable, VertexSet, WindowExhausted,
                   density_profile, exact_density, geometric_schedule, intersection,
                   prefix_density)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# descriptors


class DescriptorError(ValueError):
    """A descriptor that does not parse; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        self.reason = message
        super().__init__(f"{message} at column {position + 1}\n  {text}\n  {' ' * position}^")


@dataclass(frozen=True)
class Param:
    key: str | None
    value: str
    pos: int
    value_pos: int


def _tokenize(text: str) -> tuple[str, list[Param]]:
    name, sep, rest = text.partition(":")
    if not name.strip():
        raise DescriptorError("missing descriptor name", text, 0)
    if name != name.strip() or any(ch.isspace() for ch in name):
        raise DescriptorError("whitespace in descriptor name", text, 0)
    params: list[Param] = []
    if not sep:
        return name, params
    pos = len(name) + 1
    if not rest:
        raise DescriptorError("expected parameters after ':'", text, pos)
    for chunk in rest.split(","):
        if not chunk:
            raise DescriptorError("empty parameter", text, pos)
        key, eq, value = chunk.partition("=")
        if eq:
            if not key:
                raise DescriptorError("missing parameter name before '='", text, pos)
            if not value:
                raise DescriptorError(f"missing value for {key!r}", text, pos + len(key) + 1)
            params.append(Param(key, value, pos, pos + len(key) + 1))
        else:
            params.append(Param(None, chunk, pos, pos))
        pos += len(chunk) + 1
    return name, params


def _int_param(text: str, p: Param, lo: int = 1) -> int:
    try:
        v = int(p.value)
    except ValueError:
        raise DescriptorError(f"{p.key or 'value'} must be an integer, got {p.value!r}",
                              text, p.value_pos) from None
    if v < lo:
        raise DescriptorError(f"{p.key or 'value'} must be >= {lo}, got {v}", text, p.value_pos)
    return v


def _keyed(text: str, params: list[Param], schema: dict[str, tuple[Callable, Any]]) -> dict:
    """Read key=value params against ``schema``: key -> (reader(text, param), default)."""
    out = {k: d for k, (_, d) in schema.items()}
    seen = set()
    for p in params:
        if p.key is None:
            raise DescriptorError(f"expected key=value, got {p.value!r}", text, p.pos)
        if p.key not in schema:
            raise DescriptorError(f"unknown parameter {p.key!r}; expected one of "
                                  f"{sorted(schema)}", text, p.pos)
        if p.key in seen:
            raise DescriptorError(f"parameter {p.key!r} given twice", text, p.pos)
        seen.add(p.key)
        out[p.key] = schema[p.key][0](text, p)
    return out


def _int(lo: int = 1) -> Callable:
    return lambda text, p: _int_param(text, p, lo)


def _choice(options: Sequence[str]) -> Callable:
    def read(text, p):
        if p.value not in options:
            raise DescriptorError(f"{p.key} must be one of {list(options)}, got {p.value!r}",
                                  text, p.value_pos)
        return p.value
    return read


def _build(text: str, params: list[Param], ctor: Callable[..., Any], schema: dict) -> Any:
    kw = _keyed(text, params, schema)
    try:
        return ctor(**kw)
    except ValueError as e:
        pos = params[0].pos if params else len(text)
        raise DescriptorError(str(e), text, pos) from None


def _digraph(text, params):
    kw = _keyed(text, params, {"n": (_int(1), None), "arcs": (lambda t, p: p, None)})
    if kw["n"] is None or kw["arcs"] is None:
        raise DescriptorError("digraph needs n=<int> and arcs=<n*n letters R/B>", text,
                              len(text))
    n, p = kw["n"], kw["arcs"]
    if len(p.value) != n * n or set(p.value) - {"R", "B"}:
        raise DescriptorError(f"arcs must be {n * n} letters R or B (row-major, loops on "
                              "the diagonal)", text, p.value_pos)
    arcs = {(i, j): co.RED if p.value[i * n + j] == "R" else co.BLUE
            for i in range(n) for j in range(n)}
    return co.DigraphLiftColoring(co.DigraphSpec(n, arcs))


def _tree(text, params):
    if len(params) != 1:
        raise DescriptorError("tree takes exactly one parameter: dary=<d>, levels=<a;b;...>, "
                              "tinf, istar, path or star", text,
                              params[1].pos if params else len(text))
    p = params[0]
    if p.key is None:
        if p.value not in ("tinf", "istar", "path", "star"):
            raise DescriptorError(f"unknown tree kind {p.value!r}", text, p.pos)
        return zoo.tree_graph(zoo.TreeSpec(p.value))
    if p.key == "dary":
        return zoo.tree_graph(zoo.TreeSpec("dary", d=_int_param(text, p, 1)))
    if p.key == "levels":
        try:
            degrees = tuple(int(x) for x in p.value.split(";"))
        except ValueError:
            raise DescriptorError("levels must be ';'-separated integers", text,
                                  p.value_pos) from None
        try:
            return zoo.tree_graph(zoo.TreeSpec("levels", degrees=degrees))
        except ValueError as e:
            raise DescriptorError(str(e), text, p.value_pos) from None
    raise DescriptorError(f"unknown tree parameter {p.key!r}", text, p.pos)


def _compat(text, params):
    if len(params) == 1 and params[0].key is None and params[0].value == "binary":
        return zoo.compatibility_graph(zoo.TreeSpec("dary", 2))
    if len(params) == 1 and params[0].key == "dary":
        d = _int_param(text, params[0], 1)
        try:
            return zoo.compatibility_graph(zoo.TreeSpec("dary", d))
        except ValueError as e:
            raise DescriptorError(str(e), text, params[0].value_pos) from None
    raise DescriptorError("ctr takes 'binary' or dary=<d>", text,
                          params[0].pos if params else len(text))


def _multi(text, params):
    """Part sizes in order: integers, then 'inf' entries, optionally ending in 'inf*'."""
    finite: list[int] = []
    infinite = 0
    for k, p in enumerate(params):
        if p.key is not None:
            raise DescriptorError("multi takes bare part sizes", text, p.pos)
        if p.value == "inf*":
            if k != len(params) - 1:
                raise DescriptorError("'inf*' must come last", text, p.pos)
            infinite = None
        elif p.value == "inf":
            infinite += 1
        else:
            if infinite:
                raise DescriptorError("finite parts must precede infinite ones", text, p.pos)
            finite.append(_int_param(text, p, 1))
    try:
        return zoo.multipartite_graph(zoo.MultipartiteSpec(tuple(finite), infinite))
    except ValueError as e:
        raise DescriptorError(str(e), text, params[0].pos if params else len(text)) from None


def _plain(ctor):
    def build(text, params):
        if params:
            raise DescriptorError("takes no parameters", text, params[0].pos)
        return ctor()
    return build


def _keyed_ctor(ctor, schema):
    return lambda text, params: _build(text, params, ctor, schema)


COLORINGS: dict[str, tuple[Callable, str]] = {
    "rado": (_plain(co.RadoColoring), "bit s of t colors {s,t}"),
    "residue": (_keyed_ctor(co.ResidueColoring, {"r": (_int(2), 2)}), "r=<int>: lower endpoint mod r"),
    "fwdint": (_keyed_ctor(co.ForwardIntervalColoring,
                           {"f": (_choice(("linear", "double", "square")), "linear"),
                            "stages": (_int(2), 12)}),
               "f=linear|double|square,stages=<int>: forward interval coloring"),
    "bwdint": (_keyed_ctor(lambda stages: co.BackwardIntervalColoring(co.doubling_scheme(stages)),
                           {"stages": (_int(2), 12)}),
               "stages=<int>: backward interval coloring on doubling intervals"),
    "halfcol": (_plain(co.BipartiteHalfGraphColoring), "half-graph coloring of odds vs evens"),
    "blocks": (_keyed_ctor(co.BlocksHalfGraphColoring, {"k": (_int(2), 2)}),
               "k=<int>: green blocks with half graphs between them"),
    "rpart": (_keyed_ctor(co.ResiduePartitionColoring, {"m": (_int(1), 2)}),
              "m=<int>: red inside residue classes, blue between"),
    "bmod": (_keyed_ctor(co.BipartiteModColoring, {"r": (_int(1), 2)}),
             "r=<int>: (i - j) mod r between sub-parts"),
    "selfint": (_keyed_ctor(co.SelfIntersectColoring, {"k": (_int(1), 2)}),
                "k=<int>: thin self-intersecting coloring"),
    "tstar": (_keyed_ctor(co.TStarColoring, {"d": (_int(1), 2)}), "d=<int>: T-star coloring"),
    "digraph": (_digraph, "n=<int>,arcs=<n*n R/B>: digraph lift"),
}

GRAPHS: dict[str, tuple[Callable, str]] = {
    "rado": (_plain(zoo.rado_graph), "Rado graph (when a graph is expected)"),
    "brado": (_plain(zoo.bipartite_rado_graph), "bipartite Rado graph"),
    "half": (_plain(zoo.half_graph), "half graph"),
    "bhalf": (_plain(zoo.bipartite_half_graph), "bipartite half graph"),
    "hd": (_keyed_ctor(zoo.h_d_graph, {"d": (_int(1), 2)}), "d=<int>: the staged graph H_d"),
    "tree": (_tree, "dary=<d> | levels=<a;b;..> | tinf | istar | path | star"),
    "ctr": (_compat, "binary | dary=<d>: compatibility graph of a perfect tree"),
    "multi": (_multi, "part sizes, e.g. 1,1,inf* or inf,inf"),
    "complete": (_plain(zoo.CompleteGraph), "complete graph"),
    "edgeless": (_plain(zoo.EdgelessGraph), "edgeless graph"),
    "twocliques": (_plain(zoo.TwoCliques), "two disjoint infinite cliques"),
}


def parse_descriptor(text: str, want: str | None = None) -> GraphOracle | ColoringOracle:
    """Build the construction named by ``text``.

    ``want`` is "graph", "coloring" or None.  A name known as both (``rado``)
    means the coloring unless a graph is wanted.
    """
    if want not in (None, "graph", "coloring"):
        raise ValueError(f"want must be 'graph', 'coloring' or None, got {want!r}")
    name, params = _tokenize(text)
    tables = {"graph": [GRAPHS], "coloring": [COLORINGS], None: [COLORINGS, GRAPHS]}[want]
    for table in tables:
        if name in table:
            return table[name][0](text, params)
    known = sorted(set().union(*tables))
    raise DescriptorError(f"unknown {want or 'descriptor'} name {name!r}; known: "
                          f"{', '.join(known)}", text, 0)


# ---------------------------------------------------------------------------
# records and emission


@dataclass(frozen=True)
class Criterion:
    name: str
    value: Any
    op: str
    bound: Any
    passed: bool


OPS: dict[str, Callable[[Any, Any], bool]] = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


def criterion(name: str, value: Any, op: str, bound: Any) -> Criterion:
    return Criterion(name, value, op, bound, bool(OPS[op](value, bound)))


@dataclass
class ResultRecord:
    experiment: str
    params: dict
    rows: list[dict]
    criteria: list[Criterion]
    runtime: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)


def recheck(record: ResultRecord) -> bool:
    """Recompute every verdict from the recorded values alone."""
    return all(OPS[c.op](c.value, c.bound) == c.passed for c in record.criteria)


def decimal(x: Fraction | float) -> str:
    return f"{float(x):.12g}"


def _encode(x: Any) -> Any:
    if isinstance(x, Fraction):
        return {"p/q": f"{x.numerator}/{x.denominator}", "decimal": decimal(x)}
    if isinstance(x, (bool, str, type(None))):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [_encode(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _decode(obj: Any) -> Any:
    if isinstance(obj, dict) and set(obj) == {"p/q", "decimal"}:
        p, q = obj["p/q"].split("/")
        return Fraction(int(p), int(q))
    return obj


def to_document(record: ResultRecord) -> dict:
    return {
        "experiment": record.experiment,
        "params": _encode(record.params),
        "passed": record.passed,
        "criteria": [{"name": c.name, "value": _encode(c.value), "op": c.op,
                      "bound": _encode(c.bound), "passed": c.passed} for c in record.criteria],
        "rows": [_encode(r) for r in record.rows],
    }


def load_record(text: str) -> ResultRecord:
    """Inverse of the structured format."""
    doc = json.loads(text, object_hook=_decode)
    crit = [Criterion(c["name"], c["value"], c["op"], c["bound"], c["passed"])
            for c in doc["criteria"]]
    return ResultRecord(doc["experiment"], doc["params"], doc["rows"], crit)


def _cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return decimal(x)
    if isinstance(x, (list, tuple)):
        return ",".join(_cell(y) for y in x)
    return str(x).replace("\t", " ").replace("\n", " ")


def _show(x: Any) -> str:
    return decimal(x) if isinstance(x, Fraction) else _cell(x)


def _flat(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, Fraction):
            out[k] = f"{v.numerator}/{v.denominator}"
            out[f"{k}_decimal"] = decimal(v)
        else:
            out[k] = _cell(v)
    return out


def render(record: ResultRecord, fmt: str = "structured") -> str:
    if fmt == "structured":
        return json.dumps(to_document(record), indent=2, sort_keys=False) + "\n"
    if fmt != "rows":
        raise ValueError(f"unknown format {fmt!r}")
    flat = [_flat(r) for r in record.rows]
    header: list[str] = []
    for r in flat:
        header += [k for k in r if k not in header]
    buf = io.StringIO()
    buf.write("\t".join(header) + "\n")
    for r in flat:
        buf.write("\t".join(r.get(k, "") for k in header) + "\n")
    return buf.getvalue()


def emit(record: ResultRecord, fmt: str = "structured", path: str | None = None) -> str:
    """Render and write to ``path`` (stdout when None); returns the text."""
    text = render(record, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as e:
            raise OSError(f"cannot write {path}: {e.strerror}") from e
    return text


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class Experiment:
    eid: str
    title: str
    defaults: dict
    thresholds: dict
    budget_s: float
    run: Callable[[dict, dict], tuple[list[dict], list[Criterion]]]


def _e1(p, th):
    rc = co.RadoColoring()
    t = p["horizon"]
    arr = np.arange(1, t + 1, dtype=np.int64)
    rows, crit = [], []
    for c in (0, 1):
        for size in range(1, p["max_f"] + 1):
            f = list(range(1, size + 1))
            mask = np.ones(t, dtype=bool)
            for v in f:
                mask &= rc.color_many(v, arr) == c
            dens = Fraction(int(mask.sum()), t)
            target = Fraction(1, 2 ** size)
            rel = abs(dens - target) / target
            rows.append({"color": c, "F": f, "density": dens, "target": target, "rel_err": rel})
            crit.append(criterion(f"rel_err color={c} |F|={size}", rel, "<=", th["rel_err"]))
    return rows, crit


def _e2(p, th):
    rows, crit = [], []
    for r in p["moduli"]:
        rc = co.ResidueColoring(r)
        mism, checked, first = 0, 0, None
        class_ok = True
        for n in range(2, p["n_max"] + 1):
            cols = rc.color_many(n, np.arange(1, n, dtype=np.int64))
            for i in range(r):
                if n % r == i:
                    continue
                got = int((cols == i).sum())
                checked += 1
                if got != (n - 1) // r:
                    mism += 1
                    if first is None:
                        first = [n, i, got, (n - 1) // r]
                # independent count of the class members below n
                class_ok &= got == len(range(i if i else r, n, r))
        rows.append({"r": r, "checked": checked, "mismatches": mism,
                     "first_mismatch": first, "class_count_identity": class_ok})
        crit.append(criterion(f"floor((n-1)/r) identity r={r}", mism, "==", 0))
        crit.append(criterion(f"class-count identity r={r}", class_ok, "==", True))
    return rows, crit


def _tree_checks(tree: em.ResidueTree, coloring: co.ResidueColoring) -> bool:
    r, c, d = coloring.r, tree.color, tree.d
    if any(coloring.color(v, u) != c for v, u in tree.parent.items()):
        return False
    kids = tree.children()
    if any(len(k) > d for k in kids.values()):
        return False
    members = tree.members()
    if any(len(kids.get(int(v), ())) != d for v in members if v % r != c):
        return False
    seen = {tree.root}
    for v in members:
        path = []
        v = int(v)
        while v not in seen:
            path.append(v)
            v = tree.parent[v]
            if len(path) > len(members):
                return False
        seen.update(path)
    return True


def _e3(p, th):
    rows, crit = [], []
    t = p["horizon"]
    n = np.arange(1, t + 1, dtype=np.int64)
    for r, d in p["cases"]:
        rc = co.ResidueColoring(r)
        for c in range(r):
            tree = em.greedy_residue_tree(rc, c, d, t)
            members = tree.members()
            dens = Fraction(len(members), t)
            bound = Fraction(1, r) * (1 + Fraction(1, d))
            inside = np.zeros(t + 1, dtype=bool)
            inside[members] = True
            t_n = np.cumsum(inside[1:] & (n % r != c))
            counting = bool(np.all(d * t_n * r <= n - 1))
            ok = _tree_checks(tree, rc)
            rows.append({"r": r, "D": d, "color": c, "density": dens, "ceiling": bound,
                         "tree_valid": ok, "counting_all_n": counting})
            crit.append(criterion(f"density r={r} D={d} color={c}", dens, "<=",
                                  bound + th["slack"]))
            crit.append(criterion(f"counting D*t_n <= (n-1)/r r={r} D={d} color={c}",
                                  counting, "==", True))
            crit.append(criterion(f"monochromatic D-ary tree r={r} D={d} color={c}",
                                  ok, "==", True))
    return rows, crit


def _e4(p, th):
    rows, crit = [], []
    for d in p["ds"]:
        g = zoo.h_d_graph(d)
        n1, n3 = g.n[1], g.n[3]
        degen = an.degeneracy(an.FinitePrefixGraph.from_graph(g, n3))
        zr = an.zero_ruled_window_check(g, n1, n1, n3)
        kw = an.kwise_intersecting_check(g, d, 2, n1, n3)
        rows.append({"d": d, "n1": n1, "n3": n3, "degeneracy": degen, "zero_ruled": zr,
                     "kwise": kw})
        crit.append(criterion(f"degeneracy d={d}", degen, "==", d))
        crit.append(criterion(f"zero-ruled window d={d}", zr, "==", True))
        crit.append(criterion(f"{d}-wise intersecting d={d}", kw, "==", True))
    return rows, crit


def _report_row(name: str, pe: em.PartialEmbedding, rep: em.EmbeddingReport) -> dict:
    return {"run": name, "cycles": pe.steps_done, "embedded": len(pe.mapping),
            "valid": rep.valid, "mono": rep.mono, "coverage": rep.coverage,
            "frontier": rep.surjectivity_frontier}


def _e5(p, th):
    pe = em.embed_zero_ruled(zoo.bipartite_rado_graph(), (co.RadoColoring(), 1), p["steps"])
    rep = em.verify_embedding(pe)
    crit = [criterion("valid", rep.valid, "==", True),
            criterion("monochromatic", rep.mono, "==", True),
            criterion("covered host prefix", rep.coverage, ">=", p["steps"])]
    return [_report_row("zero-ruled brado -> rado[1]", pe, rep)], crit


def _closed_after_every_cycle(pe: em.PartialEmbedding, parent: Callable[[int], int | None]) -> bool:
    dom: set[int] = set()
    by_step: dict[int, list[int]] = {}
    for row in pe.trace:
        by_step.setdefault(row.step, []).append(row.guest)
    for step in sorted(by_step):
        dom.update(by_step[step])
        if any(parent(t) is not None and parent(t) not in dom for t in dom):
            return False
    return True


def _e6(p, th):
    rows, crit = [], []
    host = zoo.rado_graph()
    guest = zoo.IncreasingStar()
    deep = em.embed_deep_tree(guest, host, p["deep_steps"])
    rep = em.verify_embedding(deep)
    closed = _closed_after_every_cycle(deep, guest.parent)
    rows.append({**_report_row("deep-tree istar -> rado", deep, rep), "closed": closed})
    crit += [criterion("deep tree valid", rep.valid, "==", True),
             criterion("deep tree covered prefix", rep.coverage, ">=", p["deep_steps"]),
             criterion("deep tree connected after every cycle", closed, "==", True)]
    tinf = zoo.tree_graph(zoo.TreeSpec("tinf"))
    short = em.embed_short_tree(tinf, host, p["anchor"], p["short_rounds"])
    rep = em.verify_embedding(short)
    want = list(_first_neighbors(host, p["anchor"], p["short_rounds"]))
    covered = sum(1 for x in want if x in short.ran)
    rows.append({**_report_row("short-tree tinf -> rado", short, rep),
                 "anchor_neighbors_covered": covered})
    crit += [criterion("short tree valid", rep.valid, "==", True),
             criterion("anchor neighbors covered", covered, ">=", p["short_rounds"])]
    return rows, crit


def _first_neighbors(g: GraphOracle, v: int, k: int) -> list[int]:
    out = []
    for x in g.iter_neighbors(v):
        out.append(x)
        if len(out) == k:
            break
    return out


def _e7(p, th):
    n = p["n_terms"]
    vals = an.ruling_products(an.ceil_log2_sizes, n)
    dec = bool(np.all(np.diff(vals) < 0))
    final = float(vals[-1])
    exact4 = an.ruling_product(an.ceil_log2_sizes, 4).exact
    rows = [{"N": int(k), "product": float(vals[k - 1])}
            for k in (1, 2, 3, 4, 10, 100, 1000, n) if k <= n]
    crit = [criterion("strictly decreasing", dec, "==", True),
            criterion(f"product at N={n}", final, "<=", th["max_final"]),
            criterion("exact value at N=4", exact4, "==", Fraction(9, 32))]
    return rows, crit


def _e8(p, th):
    rows, crit = [], []
    t = p["horizon"]
    arr = np.arange(1, t + 1, dtype=np.int64)
    for k in p["ks"]:
        c = co.SelfIntersectColoring(k)
        res = (arr - 1) % (2 * k)
        is_a = res % 2 == 0
        b_inside, b_above, a_out = 0, 0, 0
        for v in range(1, t + 1):
            red = c.color_many(v, arr) == co.RED
            rv = (v - 1) % (2 * k)
            if rv % 2:
                # v in B: compare with its own B-class and with A above v
                b_inside += int((red & (res == rv)).sum())
                b_above += int((red & is_a & (arr > v)).sum())
            else:
                a_out += int((red & is_a & (res != rv)).sum())
        dens = [exact_density(cell) for cell in c.cells()[:k]]
        rows.append({"k": k, "red_inside_B_i": b_inside, "red_A_nbrs_above_b": b_above,
                     "red_A_nbrs_outside_A_i": a_out, "A_densities": dens})
        crit += [criterion(f"no red edge inside B_i k={k}", b_inside, "==", 0),
                 criterion(f"red A-neighbors of b below b k={k}", b_above, "==", 0),
                 criterion(f"red A-neighbors of a in A_i k={k}", a_out, "==", 0)]
        crit += [criterion(f"density of A_{j + 1} k={k}", x, "==", Fraction(1, 2 * k))
                 for j, x in enumerate(dens)]
    return rows, crit


def _e9(p, th):
    c = co.ForwardIntervalColoring("linear", p["stages"])
    top = c.scheme.a(8)
    pr = an.peel_deep_tree_sets(c, horizon=top)
    red_iv, blue_iv = c.cells()
    r_eq = bool(np.array_equal(pr.R.mask(top), red_iv.mask(top)))
    s_eq = bool(np.array_equal(pr.S.mask(top), blue_iv.mask(top)))
    cover = bool((pr.R.mask(top) | pr.S.mask(top))[1:].all())
    a5 = c.scheme.a(5)
    bad = an.short_path_proxy(c, pr.R.enumerate_upto(a5), co.RED, a5)
    rows = [{"a8": top, "stages_used": pr.stages_used, "R_is_red_intervals": r_eq,
             "S_is_blue_intervals": s_eq, "R_union_S_all": cover, "a5": a5,
             "proxy_failures": len(bad)}]
    crit = [criterion("stages used", pr.stages_used, "==", 1),
            criterion("R equals red intervals up to a_8", r_eq, "==", True),
            criterion("S equals blue intervals up to a_8", s_eq, "==", True),
            criterion("R union S covers [a_8]", cover, "==", True),
            criterion("red paths of length <= 2 in R up to a_5", len(bad), "==", 0)]
    return rows, crit


def tstar_rule_violations(c: co.TStarColoring, t: int) -> dict[str, int]:
    """Count pairs <= t breaking each of the five edge rules, from a fresh block table."""
    a = [1]
    while a[-1] <= t:
        a.append(len(a) * c.d * a[-1])
    block = np.zeros(t + 1, dtype=np.int64)
    for i in range(1, len(a)):
        block[a[i - 1]:min(a[i], t + 1)] = i
    arr = np.arange(1, t + 1, dtype=np.int64)
    bad = dict.fromkeys(("inside V0/V1 red", "inside V2/V3 blue", "V0-V1 blue",
                         "V2-V3 red", "cross rule by arrow"), 0)
    arrows = {(0, 2): co.RED, (0, 3): co.BLUE, (1, 2): co.BLUE, (1, 3): co.RED}
    for u in range(1, t + 1):
        cols = c.color_many(u, arr)[u:]
        s = int(block[u])
        ts = block[u + 1:]
        i, js = s % 4, ts % 4
        same = js == i
        if i in (0, 1):
            bad["inside V0/V1 red"] += int((same & (cols != co.RED)).sum())
            bad["V0-V1 blue"] += int(((js == 1 - i) & (cols != co.BLUE)).sum())
        else:
            bad["inside V2/V3 blue"] += int((same & (cols != co.BLUE)).sum())
            bad["V2-V3 red"] += int(((js == 5 - i) & (cols != co.RED)).sum())
        for j in (0, 1, 2, 3):
            if (i in (0, 1)) == (j in (0, 1)):
                continue
            lo_first = (i, j) if i in (0, 1) else (j, i)
            arrow = arrows[lo_first]
            sel = js == j
            # s is the V_{0,1} block index when i in (0,1)
            if i in (0, 1):
                want = np.where(s < ts, arrow, 1 - arrow)
            else:
                want = np.where(ts < s, arrow, 1 - arrow)
            bad["cross rule by arrow"] += int((sel & (cols != want)).sum())
    return bad


def tstar_adversary(c: co.TStarColoring, q: int) -> tuple[int, list[tuple[int, int]]]:
    """A blue tree centered in V_0 that crowds as much of V_2 into block 4q+2 as the
    degree bound allows: every V_1 vertex below a_{4q+1} joins the center and takes
    d children at the start of block 4q+2."""
    center = c.a(3)
    v1 = [u for u in range(1, c.a(4 * q + 1)) if c.v_index(u) == 1]
    edges = [(center, u) for u in v1]
    nxt = c.a(4 * q + 1)
    for u in v1:
        for _ in range(c.d):
            edges.append((u, nxt))
            nxt += 1
    return center, edges


def _e10(p, th):
    rows, crit = [], []
    guest = zoo.compatibility_graph(zoo.TreeSpec("dary", 2))
    host = zoo.multipartite_graph(zoo.MultipartiteSpec((1,), None))
    pe = em.embed_compat_multipartite(guest, host, p["steps"])
    rep = em.verify_embedding(pe)
    rows.append(_report_row("compat binary -> multi 1,inf*", pe, rep))
    crit += [criterion("compat embedding valid", rep.valid, "==", True),
             criterion("compat covered prefix", rep.coverage, ">=", p["steps"])]
    c = co.TStarColoring(p["d"])
    bad = tstar_rule_violations(c, p["rule_horizon"])
    rows.append({"run": f"tstar:d={p['d']} edge rules up to {p['rule_horizon']}", **bad})
    crit += [criterion(f"tstar {name}", n, "==", 0) for name, n in bad.items()]
    q = p["q"]
    center, edges = tstar_adversary(c, q)
    blue = all(c.color(u, v) == co.BLUE for u, v in edges)
    deg: dict[int, int] = {}
    for u, v in edges:
        for x in (u, v):
            if x != center:
                deg[x] = deg.get(x, 0) + 1
    degree_ok = max(deg.values()) <= p["d"] + 1
    lo, hi = c.a(4 * q + 1), c.a(4 * q + 2)
    verts = {x for e in edges for x in e}
    crowd = sum(1 for x in verts if lo <= x < hi and c.v_index(x) == 2)
    bound = p["d"] * c.a(4 * q + 1)
    center_v2 = [x for x in range(1, c.a(4)) if c.v_index(x) == 2 and x != center
                 and c.color(center, x) == co.BLUE]
    early = all(x < c.a(4 * q - 2) for x in center_v2) if q >= 1 else not center_v2
    rows.append({"run": f"tstar adversary q={q}", "center": center, "blue_tree": blue,
                 "max_degree_off_center": max(deg.values()), "V2_in_block": crowd,
                 "bound": bound, "center_blue_V2_early": early})
    crit += [criterion("adversary is a blue tree of bounded degree", blue and degree_ok,
                       "==", True),
             criterion("center's blue V_2 neighbors precede the block", early, "==", True),
             criterion(f"|V_2' in A_{4 * q + 2}| <= d*a_{4 * q + 1}", crowd, "<=", bound)]
    return rows, crit


EXPERIMENTS: dict[str, Experiment] = {e.eid: e for e in [
    Experiment("E1", "Rado coloring: common-neighborhood densities are 2^-|F|",
               {"horizon": 2 ** 20, "max_f": 4}, {"rel_err": Fraction(1, 10)}, 10, _e1),
    Experiment("E2", "residue coloring: floor((n-1)/r) neighbors of a foreign color",
               {"n_max": 10 ** 4, "moduli": [2, 3]}, {}, 5, _e2),
    Experiment("E3", "greedy monochromatic D-ary trees in residue colorings",
               {"horizon": 10 ** 5, "cases": [[2, 2], [2, 3], [3, 2]]},
               {"slack": Fraction(1, 50)}, 30, _e3),
    Experiment("E4", "H_d is d-degenerate, zero-ruled and d-wise intersecting",
               {"ds": [1, 2, 3]}, {}, 10, _e4),
    Experiment("E5", "zero-ruled engine: bipartite Rado graph onto Rado color 1",
               {"steps": 100}, {}, 20, _e5),
    Experiment("E6", "deep and short tree engines into the Rado graph",
               {"deep_steps": 50, "short_rounds": 30, "anchor": 1}, {}, 20, _e6),
    Experiment("E7", "ruling product with |F_n| = ceil(log2 n)",
               {"n_terms": 10 ** 4}, {"max_final": 0.05}, 1, _e7),
    Experiment("E8", "self-intersecting coloring: exact structure",
               {"horizon": 10 ** 4, "ks": [2, 3]}, {}, 10, _e8),
    Experiment("E9", "peeling the forward interval coloring",
               {"stages": 12}, {}, 10, _e9),
    Experiment("E10", "compatibility-graph engine and the T-star coloring",
               {"steps": 25, "d": 2, "rule_horizon": 1000, "q": 1}, {}, 20, _e10),
]}

# which experiment parameter the global --horizon / --steps flags set
FLAG_TARGETS = {
    "E1": {"horizon": "horizon"}, "E2": {"horizon": "n_max"}, "E3": {"horizon": "horizon"},
    "E5": {"steps": "steps"}, "E6": {"steps": "deep_steps"}, "E7": {"horizon": "n_terms"},
    "E8": {"horizon": "horizon"}, "E10": {"steps": "steps", "horizon": "rule_horizon"},
}


@dataclass(frozen=True)
class ExperimentSpec:
    eid: str
    params: dict = field(default_factory=dict)


def run_experiment(spec: ExperimentSpec) -> ResultRecord:
    if spec.eid not in EXPERIMENTS:
        raise KeyError(f"unregistered experiment {spec.eid!r}; known: "
                       f"{', '.join(EXPERIMENTS)}")
    exp = EXPERIMENTS[spec.eid]
    unknown = set(spec.params) - set(exp.defaults)
    if unknown:
        raise ValueError(f"{spec.eid} has no parameters {sorted(unknown)}; "
                         f"expected {sorted(exp.defaults)}")
    params = {**exp.defaults, **spec.params}
    start = time.perf_counter()
    rows, crit = exp.run(params, exp.thresholds)
    return ResultRecord(exp.eid, params, rows, crit, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# ad-hoc verbs


def _vertices(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("vertices must be positive integers")
    return out


def _density(args) -> ResultRecord:
    obj = parse_descriptor(args.target)
    horizon = args.horizon or 10 ** 5
    vs = args.vertices or [1]
    if isinstance(obj, ColoringOracle):
        sets = [obj.neighborhood(v, args.color) for v in vs]
    else:
        sets = [VertexSet(lambda x, v=v: obj.adjacent(v, x),
                          mask_fn=lambda t, v=v: np.concatenate(
                              [[False], obj.adjacent_many(v, np.arange(1, t + 1))]),
                          name=f"N({v})") for v in vs]
    target = intersection(*sets)
    schedule = geometric_schedule(horizon, start=min(1000, max(horizon // 8, 1)))
    if len(schedule) < 2:
        schedule = [max(horizon // 2, 1), horizon]
    prof = density_profile(target, schedule)
    rows = [{"horizon": t, "density": d} for t, d in zip(prof.horizons, prof.samples)]
    rows.append({"horizon": "ud_estimate", "density": prof.ud_estimate})
    rows.append({"horizon": "ld_estimate", "density": prof.ld_estimate})
    return ResultRecord("density", {"target": args.target, "vertices": vs, "color": args.color,
                                    "horizon": horizon}, rows, [])


def _verify(args) -> ResultRecord:
    obj = parse_descriptor(args.target)
    t = args.horizon or 300
    arr = np.arange(1, t + 1, dtype=np.int64)
    rows, crit = [], []
    if isinstance(obj, ColoringOracle):
        table = np.stack([obj.color_many(v, arr) for v in range(1, t + 1)])
        sym = bool(np.array_equal(table, table.T))
        off = ~np.eye(t, dtype=bool)
        total = bool(np.all((table[off] >= 0) & (table[off] < obj.colors)))
        spot = all(obj.color(u, v) == table[u - 1, v - 1]
                   for u in range(1, t + 1, 7) for v in range(1, t + 1, 5) if u != v)
        rows.append({"target": args.target, "horizon": t, "symmetric": sym, "total": total,
                     "scalar_agrees": spot})
        crit += [criterion("symmetric", sym, "==", True), criterion("total", total, "==", True),
                 criterion("scalar and vector colors agree", spot, "==", True)]
    else:
        verts = [v for v in range(1, t + 1) if obj.is_vertex(v)]
        adj = np.stack([obj.adjacent_many(v, arr) for v in range(1, t + 1)])
        sym = bool(np.array_equal(adj, adj.T))
        irreflexive = not bool(np.diag(adj).any())
        agree = all(obj.neighbors_upto(v, t) ==
                    [u for u in verts if u != v and obj.adjacent(u, v)] for v in verts[:60])
        rows.append({"target": args.target, "horizon": t, "symmetric": sym,
                     "irreflexive": irreflexive, "neighbors_agree": agree})
        crit += [criterion("symmetric", sym, "==", True),
                 criterion("irreflexive", irreflexive, "==", True),
                 criterion("neighbors_upto agrees with adjacent", agree, "==", True)]
    return ResultRecord("verify", {"target": args.target, "horizon": t}, rows, crit)


ENGINES = ("zero-ruled", "degenerate", "cascade", "deep-tree", "short-tree", "compat",
           "induced-paths")


def _embed(args) -> ResultRecord:
    guest = parse_descriptor(args.guest, want="graph")
    if args.color is not None:
        coloring = parse_descriptor(args.host, want="coloring")
        host: Any = (coloring, args.color)
    else:
        host = parse_descriptor(args.host, want="graph")
    steps = args.steps if args.steps is not None else 20
    e = args.engine
    if e == "zero-ruled":
        pe = em.embed_zero_ruled(guest, host, steps)
    elif e == "degenerate":
        pe = em.embed_degenerate_zero_ruled(guest, host, steps, d=args.d)
    elif e == "cascade":
        layers = [lambda v: v % 2 == 0, lambda v: v % 2 == 1]
        pe = em.embed_cascade(guest, host, layers, steps)
    elif e == "deep-tree":
        pe = em.embed_deep_tree(guest, host, steps)
    elif e == "short-tree":
        pe = em.embed_short_tree(guest, host, args.anchor, steps)
    elif e == "compat":
        pe = em.embed_compat_multipartite(guest, host, steps)
    else:
        pe = em.embed_induced_paths(guest, host, steps)
    rep = em.verify_embedding(pe)
    rows = [{"step": r.step, "guest": r.guest, "host": r.host, "rule": r.rule}
            for r in pe.trace]
    crit = [criterion("valid", rep.valid, "==", True)]
    if pe.color_constraint is not None:
        crit.append(criterion("monochromatic", rep.mono, "==", True))
    params = {"engine": e, "guest": args.guest, "host": args.host, "color": args.color,
              "steps": steps, "coverage": rep.coverage, "violations": list(rep.violations)}
    return ResultRecord("embed", params, rows, crit)


CHECKS = ("degeneracy", "chromatic", "dominating", "zero-ruled", "kwise", "self-kwise",
          "peel-deep", "peel-short", "cliques")


def _prefix(obj, color, n):
    if isinstance(obj, ColoringOracle):
        return an.FinitePrefixGraph.from_coloring(obj, color, n)
    return an.FinitePrefixGraph.from_graph(obj, n)


def _as_graph(obj, color):
    return obj.class_graph(color) if isinstance(obj, ColoringOracle) else obj


def _analyze(args) -> ResultRecord:
    obj = parse_descriptor(args.target)
    chk = args.check
    t = args.horizon
    row: dict[str, Any] = {"check": chk, "target": args.target}
    if chk == "degeneracy":
        row["value"] = an.degeneracy(_prefix(obj, args.color, t or 64))
    elif chk == "chromatic":
        row["value"] = an.chromatic_number(_prefix(obj, args.color, t or 12))
    elif chk == "dominating":
        row["value"] = an.dominating_set_exists(_prefix(obj, args.color, t or 12), args.s)
    elif chk == "zero-ruled":
        row["value"] = an.zero_ruled_window_check(_as_graph(obj, args.color), args.w, args.s,
                                                  t or 256)
    elif chk in ("kwise", "self-kwise"):
        fn = an.kwise_intersecting_check if chk == "kwise" else an.kwise_self_intersecting_check
        row["value"] = fn(_as_graph(obj, args.color), args.k, args.m, args.w, t or 1024)
    elif chk in ("peel-deep", "peel-short"):
        if not isinstance(obj, ColoringOracle):
            raise NotDecidable("peeling needs a coloring")
        horizon = t or 1000
        if chk == "peel-deep":
            pr = an.peel_deep_tree_sets(obj, horizon=horizon)
            row.update(stages=pr.stages_used, R=prefix_density(pr.R, horizon),
                       S=prefix_density(pr.S, horizon))
        else:
            sp = an.peel_short_tree_sets(obj, horizon=horizon)
            row.update(stages=sp.stages_used, anchor=sp.anchor, color=sp.color,
                       anchor_density=sp.anchor_density)
    else:
        if not isinstance(obj, ColoringOracle):
            raise NotDecidable("clique partition needs a coloring")
        cp = em.greedy_clique_partition(obj, t or 1000)
        row.update(cliques=len(cp.cliques), leftover=len(cp.leftover),
                   largest=max((len(m) for _, m in cp.cliques), default=0))
    params = {"check": chk, "target": args.target, "horizon": t, "color": args.color,
              "k": args.k, "m": args.m, "w": args.w, "s": args.s}
    return ResultRecord("analyze", params, [row], [])


def _list_record() -> ResultRecord:
    rows = [{"kind": "experiment", "name": e.eid, "about": e.title,
             "defaults": json.dumps(_encode(e.defaults), sort_keys=True)}
            for e in EXPERIMENTS.values()]
    rows += [{"kind": "coloring", "name": k, "about": v[1]} for k, v in COLORINGS.items()]
    rows += [{"kind": "graph", "name": k, "about": v[1]} for k, v in GRAPHS.items()]
    rows += [{"kind": "engine", "name": e} for e in ENGINES]
    rows += [{"kind": "check", "name": c} for c in CHECKS]
    return ResultRecord("list", {}, rows, [])


# ---------------------------------------------------------------------------
# CLI


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, default=None, help="horizon / prefix size")
    common.add_argument("--steps", type=int, default=None, help="engine cycles")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("rows", "structured"), default="rows")
    p = argparse.ArgumentParser(prog="ramseylab", parents=[common],
                                description="Infinite-graph Ramsey density laboratory.")
    sub = p.add_subparsers(dest="verb", required=True)
    d = sub.add_parser("density", parents=[common], help="density profile of a neighborhood")
    d.add_argument("target")
    d.add_argument("--vertices", type=_vertices, default=None)
    d.add_argument("--color", type=int, default=1)
    v = sub.add_parser("verify", parents=[common], help="oracle consistency checks")
    v.add_argument("target")
    e = sub.add_parser("embed", parents=[common], help="run an embedding engine")
    e.add_argument("engine", choices=ENGINES)
    e.add_argument("--guest", required=True)
    e.add_argument("--host", required=True)
    e.add_argument("--color", type=int, default=None,
                   help="embed into this color class of a coloring host")
    e.add_argument("--d", type=int, default=1)
    e.add_argument("--anchor", type=int, default=1)
    a = sub.add_parser("analyze", parents=[common], help="finite-prefix structural checks")
    a.add_argument("check", choices=CHECKS)
    a.add_argument("target")
    a.add_argument("--color", type=int, default=1)
    for flag, default in (("--k", 2), ("--m", 1), ("--w", 4), ("--s", 2)):
        a.add_argument(flag, type=int, default=default)
    r = sub.add_parser("reproduce", parents=[common], help="run a registered experiment")
    r.add_argument("eid")
    sub.add_parser("list", parents=[common], help="experiments, descriptors and engines")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        if args.verb == "reproduce":
            eid = args.eid.upper()
            if eid not in EXPERIMENTS:
                print(f"error: unregistered experiment {args.eid!r}; known: "
                      f"{', '.join(EXPERIMENTS)}", file=sys.stderr)
                return EXIT_USAGE
            overrides = {}
            for flag in ("horizon", "steps"):
                val = getattr(args, flag)
                if val is not None:
                    if flag not in FLAG_TARGETS.get(eid, {}):
                        print(f"error: {eid} does not take --{flag}", file=sys.stderr)
                        return EXIT_USAGE
                    overrides[FLAG_TARGETS[eid][flag]] = val
            record = run_experiment(ExperimentSpec(eid, overrides))
        elif args.verb == "list":
            record = _list_record()
        else:
            record = {"density": _density, "verify": _verify, "embed": _embed,
                      "analyze": _analyze}[args.verb](args)
    except DescriptorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (em.EmbeddingRefused, NotDecidable, WindowExhausted, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    try:
        emit(record, args.format, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    for c in record.criteria:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {_show(c.value)} {c.op} "
              f"{_show(c.bound)}", file=sys.stderr)
    if record.experiment in EXPERIMENTS:
        print(f"{record.experiment} runtime {record.runtime:.2f}s", file=sys.stderr)
    return EXIT_PASS if record.passed else EXIT_FAIL
