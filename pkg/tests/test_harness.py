import json
from fractions import Fraction

import pytest

from ramseylab import colorings as co
from ramseylab import zoo
from ramseylab.harness import (EXPERIMENTS, DescriptorError, ExperimentSpec, ResultRecord,
                               criterion, emit, load_record, main, parse_descriptor, recheck,
                               render, run_experiment, tstar_adversary, tstar_rule_violations)


# -- descriptors ---------------------------------------------------------------------


@pytest.mark.parametrize("text,cls,attrs", [
    ("rado", co.RadoColoring, {}),
    ("residue:r=3", co.ResidueColoring, {"r": 3}),
    ("residue", co.ResidueColoring, {"r": 2}),
    ("tstar:d=2", co.TStarColoring, {"d": 2}),
    ("rpart:m=1", co.ResiduePartitionColoring, {}),
    ("fwdint:f=square,stages=4", co.ForwardIntervalColoring, {}),
    ("digraph:n=2,arcs=RBRB", co.DigraphLiftColoring, {}),
    ("hd:d=2", zoo.HdGraph, {"d": 2}),
    ("tree:dary=3", zoo.DaryTree, {"d": 3}),
    ("tree:levels=2;3;4", zoo.LevelDegreeTree, {"degrees": (2, 3, 4)}),
    ("tree:istar", zoo.IncreasingStar, {}),
    ("tree:tinf", zoo.HdGraph, {"d": 1}),
    ("ctr:binary", zoo.CompatibilityGraph, {}),
    ("multi:1,1,inf*", zoo.MultipartiteGraph, {}),
    ("brado", zoo.BipartiteRadoGraph, {}),
])
def test_descriptor_examples(text, cls, attrs):
    obj = parse_descriptor(text)
    assert isinstance(obj, cls)
    for k, v in attrs.items():
        assert getattr(obj, k) == v


def test_rado_descriptor_depends_on_wanted_kind():
    assert isinstance(parse_descriptor("rado"), co.RadoColoring)
    assert isinstance(parse_descriptor("rado", want="graph"), zoo.RadoGraph)
    with pytest.raises(DescriptorError):
        parse_descriptor("hd:d=2", want="coloring")
    with pytest.raises(ValueError):
        parse_descriptor("rado", want="matrix")


def test_multi_descriptor_layout():
    g = parse_descriptor("multi:2,inf,inf")
    assert g.spec == zoo.MultipartiteSpec((2,), 2)


@pytest.mark.parametrize("text,column,fragment", [
    ("hd:d=0", 6, "must be >= 1"),
    ("hd:d=x", 6, "integer"),
    ("hd:q=2", 4, "unknown parameter"),
    ("hd:d=2,d=3", 8, "given twice"),
    ("bogus", 1, "unknown descriptor"),
    ("residue:", 9, "expected parameters"),
    ("residue:r=3,,", 13, "empty parameter"),
    ("tree:shrub", 6, "unknown tree kind"),
    ("multi:inf*,2", 7, "must come last"),
    ("multi:inf,2", 11, "must precede"),
    ("digraph:n=2,arcs=RRR", 18, "letters"),
    ("rado:x", 6, "no parameters"),
])
def test_descriptor_errors_point_at_column(text, column, fragment):
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(text)
    err = info.value
    assert err.position + 1 == column
    assert fragment in err.reason
    caret = str(err).splitlines()[-1]
    assert caret.index("^") - 2 == err.position


# -- records ---------------------------------------------------------------------------


def _record():
    rows = [{"n": 1, "density": Fraction(1, 3), "ok": True, "note": None},
            {"n": 2, "density": Fraction(2, 7), "ok": False, "note": "a\tb"}]
    crit = [criterion("n small", 2, "<=", 3), criterion("third", Fraction(1, 3), "==",
                                                        Fraction(1, 3))]
    return ResultRecord("demo", {"h": 10, "q": Fraction(1, 2)}, rows, crit, runtime=1.5)


def test_structured_round_trip():
    rec = _record()
    text = render(rec, "structured")
    back = load_record(text)
    assert back == rec
    assert back.passed and recheck(back)
    doc = json.loads(text)
    assert doc["rows"][0]["density"] == {"p/q": "1/3", "decimal": "0.333333333333"}
    assert "runtime" not in text


def test_rows_format_expands_fractions():
    lines = render(_record(), "rows").splitlines()
    assert lines[0].split("\t") == ["n", "density", "density_decimal", "ok", "note"]
    assert lines[1].split("\t") == ["1", "1/3", "0.333333333333", "true", ""]
    assert lines[2].split("\t")[-1] == "a b"
    with pytest.raises(ValueError):
        render(_record(), "xml")


def test_recheck_catches_tampering():
    rec = _record()
    rec.criteria[0] = rec.criteria[0].__class__("n small", 9, "<=", 3, True)
    assert not recheck(rec)


def test_emit_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    emit(run_experiment(ExperimentSpec("E7")), "structured", str(a))
    emit(run_experiment(ExperimentSpec("E7")), "structured", str(b))
    assert a.read_bytes() == b.read_bytes()
    with pytest.raises(OSError):
        emit(_record(), "rows", str(tmp_path / "missing" / "x.tsv"))


def test_run_experiment_validation():
    with pytest.raises(KeyError):
        run_experiment(ExperimentSpec("E99"))
    with pytest.raises(ValueError):
        run_experiment(ExperimentSpec("E7", {"bogus": 1}))
    assert set(EXPERIMENTS) == {f"E{i}" for i in range(1, 11)}


def test_experiment_overrides_reach_the_run():
    rec = run_experiment(ExperimentSpec("E7", {"n_terms": 64}))
    assert rec.params["n_terms"] == 64


# -- T-star helpers ----------------------------------------------------------------------


def test_tstar_rules_hold_on_prefix():
    assert set(tstar_rule_violations(co.TStarColoring(2), 400).values()) == {0}


def test_tstar_adversary_is_blue_tree():
    c = co.TStarColoring(2)
    center, edges = tstar_adversary(c, 1)
    assert all(c.color(u, v) == co.BLUE for u, v in edges)
    verts = {x for e in edges for x in e}
    assert len(verts) == len(edges) + 1 and center in verts


# -- CLI ----------------------------------------------------------------------------------


def test_cli_reproduce_pass(capsys, tmp_path):
    out = tmp_path / "e7.json"
    assert main(["reproduce", "E7", "--format", "structured", "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "PASS" in err and "FAIL" not in err
    assert load_record(out.read_text()).experiment == "E7"


def test_cli_usage_errors(capsys):
    assert main(["reproduce", "E99"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["density", "hd:d=0"]) == 2
    assert "column 6" in capsys.readouterr().err
    assert main(["reproduce", "E4", "--horizon", "5"]) == 2
    assert main(["list", "--out", "/nonexistent/dir/x.tsv"]) == 2


def test_cli_engine_failures_exit_one(capsys):
    assert main(["embed", "short-tree", "--guest", "tree:path", "--host", "complete"]) == 1
    assert "finite degree" in capsys.readouterr().err


def test_cli_embed_rows(capsys):
    assert main(["embed", "compat", "--guest", "ctr:binary", "--host", "multi:1,inf*",
                 "--steps", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split("\t") == ["step", "guest", "host", "rule"]
    assert out[1].split("\t") == ["0", "1", "1", "root"]


def test_cli_embed_into_color_class(capsys):
    assert main(["embed", "zero-ruled", "--guest", "brado", "--host", "rado", "--color", "1",
                 "--steps", "5"]) == 0
    assert "PASS monochromatic" in capsys.readouterr().err


def test_cli_analyze_and_density(capsys):
    assert main(["analyze", "chromatic", "hd:d=2", "--horizon", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1].split("\t")[2] == "3"
    assert main(["density", "rado", "--vertices", "1,2", "--horizon", "4096"]) == 0
    assert main(["verify", "residue:r=3", "--horizon", "200"]) == 0


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "E10" in out and "tstar" in out and "induced-paths" in out
