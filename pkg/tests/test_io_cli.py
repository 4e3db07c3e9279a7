from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivarity.cli import EXIT_DECOMPOSITION, EXIT_NOT_COREGULAR, EXIT_OK, EXIT_PARSE, SCHEMA, main
from quivarity.io import ParseError, parse_decomposition, parse_quiver_text, to_dot, to_quiver_text
from quivarity.quiver import DimensionVector, Quiver, QuiverSetting

TWO_LOOPS = """\
vertices:
  - {id: v, dim: 2}
arrows:
  - {from: v, to: v, count: 2}
"""

THREE_LOOPS = TWO_LOOPS.replace("count: 2", "count: 3")

TYPE_TWO = """\
vertices:
  - {id: a, dim: 1}
  - {id: b, dim: 5}
arrows:
  - {from: a, to: b, count: 2}
  - {from: b, to: a, count: 2}
"""


@pytest.fixture
def write(tmp_path):
    def _write(text: str, name: str = "q.yaml") -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# --- file format ----------------------------------------------------------


def test_parse_counts_expand():
    s = parse_quiver_text(TYPE_TWO)
    assert s == QuiverSetting.build({"a": 1, "b": 5}, [("a", "b")] * 2 + [("b", "a")] * 2)


def test_parse_json_document():
    s = parse_quiver_text('{"vertices": [{"id": "x", "dim": 3}], "arrows": []}')
    assert s == QuiverSetting.build({"x": 3})


@pytest.mark.parametrize(
    "text,line",
    [
        ("vertices:\n  - {id: a, dim: 1}\narrows:\n  - {from: a, to: z}\n", 4),
        ("vertices:\n  - {id: a, dim: -1}\n", 2),
        ("vertices:\n  - {id: a, dim: 1}\n  - {id: a, dim: 2}\n", 3),
        ("vertices:\n  - {id: a, dim: 1}\narrows:\n  - {from: a, to: a, count: 0}\n", 4),
        ("vertices: [\n", None),
        ("", 1),
        ("arrows: []\n", 1),
    ],
)
def test_parse_errors_carry_location(text, line):
    with pytest.raises(ParseError) as info:
        parse_quiver_text(text, "f.yaml")
    if line is not None:
        assert info.value.line == line
    assert str(info.value).startswith("f.yaml")


@st.composite
def settings_(draw):
    n = draw(st.integers(1, 4))
    verts = tuple(draw(st.lists(st.sampled_from(["a", "b", "x1", "v_2", "null", "7"]), min_size=n, max_size=n, unique=True)))
    arrows = draw(st.lists(st.tuples(st.sampled_from(verts), st.sampled_from(verts)), max_size=6))
    dims = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n))
    return QuiverSetting(Quiver(verts, tuple(arrows)), DimensionVector(zip(verts, dims)))


@settings(max_examples=100, deadline=None)
@given(settings_())
def test_roundtrip(s):
    text = to_quiver_text(s)
    assert parse_quiver_text(text) == s
    assert to_quiver_text(parse_quiver_text(text)) == text


def test_dot_is_stable():
    s = parse_quiver_text(TYPE_TWO)
    expected = (
        "digraph Q {\n"
        '  "a" [label="a/1"];\n'
        '  "b" [label="b/5"];\n'
        '  "a" -> "b";\n'
        '  "a" -> "b";\n'
        '  "b" -> "a";\n'
        '  "b" -> "a";\n'
        "}\n"
    )
    assert to_dot(s) == expected
    assert to_dot(parse_quiver_text(TYPE_TWO)) == expected


def test_parse_decomposition():
    s = QuiverSetting.build({"a": 2, "b": 1}, [("a", "b"), ("b", "a")])
    d = parse_decomposition("2x(1,0) + 1x(0,1)", s)
    assert d.total() == s.alpha
    assert str(d) == "2x(1,0) + 1x(0,1)"
    with pytest.raises(ValueError):
        parse_decomposition("2x(1,0,0)", s)
    with pytest.raises(ValueError):
        parse_decomposition("two of them", s)


# --- commands -------------------------------------------------------------


def test_classify_terminal(write, capsys):
    code, out, _ = run(["classify", write(TWO_LOOPS)], capsys)
    assert code == EXIT_OK
    assert "T3" in out and "1 - chi(alpha, alpha): 5" in out


def test_classify_not_coregular(write, capsys):
    code, _, _ = run(["classify", write(THREE_LOOPS)], capsys)
    assert code == EXIT_NOT_COREGULAR


def test_classify_parse_error(write, capsys):
    path = write("vertices:\n  - {id: a, dim: 1}\narrows:\n  - {from: a, to: z}\n")
    code, out, err = run(["classify", path], capsys)
    assert code == EXIT_PARSE
    assert ":4:" in err and out == ""


def test_missing_file(tmp_path, capsys):
    code, _, err = run(["classify", str(tmp_path / "none.yaml")], capsys)
    assert code == EXIT_PARSE and "cannot read" in err


def test_classify_json_schema(write, capsys):
    code, out, _ = run(["classify", "--json", write(TWO_LOOPS)], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["schema"] == SCHEMA
    assert doc["coregular"] is True
    assert doc["components"][0]["terminal"] == "T3"
    assert doc["dimension"] == 5 and doc["iss_dimension_formula"] == 5


def test_quiet(write, capsys):
    code, out, _ = run(["classify", "--quiet", write(THREE_LOOPS)], capsys)
    assert code == EXIT_NOT_COREGULAR and out == ""


def test_reduce_trace(write, tmp_path, capsys):
    dot = tmp_path / "final.dot"
    code, out, _ = run(["reduce", "--trace", "--dot", str(dot), write(TYPE_TWO)], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].strip().startswith("1. RI at b")
    assert lines[1].strip() == "2. RII at a: removed 4 loop(s)"
    assert "final: [a/1 | ]" in out
    assert dot.read_text() == 'digraph Q {\n  "a" [label="a/1"];\n}\n'


def test_reduce_json(write, capsys):
    _, out, _ = run(["reduce", "--json", write(TYPE_TWO)], capsys)
    doc = json.loads(out)
    assert [st["kind"] for st in doc["steps"]] == ["RI", "RII"]
    assert doc["steps"][1]["k"] == 4
    assert doc["polynomial_part"] == 4


def test_reduce_terminal_empty_trace(write, capsys):
    _, out, _ = run(["reduce", "--trace", write(TWO_LOOPS)], capsys)
    assert "(no step applies)" in out


def test_reduce_seeds_agree(write, capsys):
    path = write(TYPE_TWO)
    docs = []
    for seed in ("7", "11"):
        _, out, _ = run(["reduce", "--json", "--seed", seed, path], capsys)
        docs.append(json.loads(out))
    assert docs[0]["final"] == docs[1]["final"]
    assert docs[0]["strategy"] == "randomized"


def test_dim(write, capsys):
    code, out, _ = run(["dim", write(TWO_LOOPS)], capsys)
    assert code == EXIT_OK and out.strip() == "5"


def test_cycles(write, capsys):
    _, out, _ = run(["cycles", "--max-len", "5", write(TWO_LOOPS)], capsys)
    assert out.startswith("quasi-primitive cycles of length <= 5: 23")
    _, out, _ = run(["cycles", "--json", write(TWO_LOOPS)], capsys)
    doc = json.loads(out)
    assert doc["max_len"] == 4 and doc["count"] == len(doc["cycles"]) == 15


def test_local_enumerate(write, capsys):
    _, out, _ = run(["local", "--enumerate", "--json", write(TWO_LOOPS)], capsys)
    doc = json.loads(out)
    assert len(doc["decompositions"]) == 3
    assert all(e["coregular"] for e in doc["decompositions"])


def test_local_decomposition(write, capsys):
    code, out, _ = run(["local", "--decomposition", "1x(1) + 1x(1)", write(TWO_LOOPS)], capsys)
    assert code == EXIT_OK and "coregular: yes" in out


@pytest.mark.parametrize("text", ["3x(1)", "1x(1)", "2x(1,1)", "garbage"])
def test_local_invalid_decomposition(write, capsys, text):
    code, _, err = run(["local", "--decomposition", text, write(TWO_LOOPS)], capsys)
    assert code == EXIT_DECOMPOSITION and "invalid decomposition" in err


def test_simples(write, capsys):
    _, out, _ = run(["simples", "--json", "--cap", "2", write(TWO_LOOPS)], capsys)
    doc = json.loads(out)
    assert doc["exists"] and doc["class_count"] == "infinite" and doc["iss_dimension"] == 5
    assert doc["simple_dimension_vectors"] == [{"v": 1}, {"v": 2}]


def test_oracle(write, capsys):
    code, out, _ = run(["oracle", write(TWO_LOOPS)], capsys)
    assert code == EXIT_OK
    assert "numerical dimension estimate: 5" in out and "agrees" in out


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "quivarity", "dim", write(TWO_LOOPS)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"
