import json
import re

import pytest

from adet.cli import main
from adet.fixtures import (CUBIC_A, CUBIC_BA, SQUARE_BA, hexagon_pattern, single_edge_pattern,
                           square_pattern)
from adet.polyring import SparsePoly


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def test_compute_cubic(write, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["compute", "--input", write("in.json", {"B": CUBIC_BA}), "--output", str(out)]) == 0
    text = capsys.readouterr().out
    assert "- 27*v1^2*v4^2" in text
    assert "newton polygon check: passed" in text
    doc = json.loads(out.read_text())
    value = SparsePoly.from_json(doc["principal_A_determinant"])
    assert str(value) == doc["text"]
    assert all(isinstance(t["coeff"], str) for t in doc["principal_A_determinant"]["terms"])


def test_compute_from_points_keep_u_and_trace(write, tmp_path, capsys):
    trace = tmp_path / "trace"
    args = ["compute", "--input", write("a.json", {"A": CUBIC_A}), "--keep-u", "--trace", str(trace)]
    assert main(args) == 0
    assert "u-form = " in capsys.readouterr().out
    names = sorted(p.name for p in trace.iterdir())
    assert names[:3] == ["step-000.json", "step-001-clean.json", "step-001-merged.json"]


def test_compute_square_logs_newton(write, caplog, capsys):
    with caplog.at_level("INFO", logger="adet"):
        assert main(["-v", "compute", "--input", write("sq.json", {"B": SQUARE_BA})]) == 0
    assert "edge lengths [2, 2, 2, 2]" in capsys.readouterr().out
    assert any("Newton polygon check passed" in r.message for r in caplog.records)


@pytest.mark.parametrize("content, code", [
    ({"B": [[1, -1, 0], [2, -2, 0]]}, 2),
    ({"C": [[1]]}, 2),
    ("not json", 2),
    ({"B": [[1, "x"], [0, 1]]}, 2),
])
def test_compute_input_errors(write, content, code, capsys):
    assert main(["compute", "--input", write("bad.json", content)]) == code
    err = capsys.readouterr().err
    assert err.startswith("error:")
    if isinstance(content, dict) and "B" in content and content["B"][0][2:] == [0]:
        assert "WrongRank" in err


def test_missing_file_and_bad_arguments(capsys):
    assert main(["compute", "--input", "/nonexistent/x.json"]) == 2
    assert main(["frobnicate"]) == 2


def test_validate(write, capsys):
    assert main(["validate", "--pattern", write("h.json", hexagon_pattern().to_json())]) == 0
    sq = write("s.json", square_pattern().to_json())
    assert main(["validate", "--pattern", sq, "--level", "verygood"]) == 0
    broken = hexagon_pattern().to_json()
    broken["B"][0][1] = 2
    broken["B"][1][1] = 2
    assert main(["validate", "--pattern", write("b.json", broken)]) == 1
    assert "[FAIL] 2:" in capsys.readouterr().out
    assert main(["validate", "--pattern", write("x.json", {"B": [[1]]})]) == 2


def test_kasteleyn_command(write, capsys):
    path = write("h.json", hexagon_pattern().to_json())
    assert main(["kasteleyn", "--pattern", path]) == 0
    K = json.loads(capsys.readouterr().out)
    assert len(K["entries"]) == 3
    assert main(["kasteleyn", "--pattern", path, "--complement"]) == 0
    Kc = json.loads(capsys.readouterr().out)
    terms = [t for row in Kc["entries"] for entry in row for t in entry["terms"]]
    assert len(terms) == 12
    # each complemented term keeps its z and the four u's not on its crossing
    assert all(sorted(k[0] for k in t["monomial"]) == ["u"] * 4 + ["z"] for t in terms)


def test_oracle_command(capsys):
    assert main(["oracle", "cubic"]) == 0
    assert "27*v1^3*v4^3" in capsys.readouterr().out


@pytest.mark.parametrize("pattern, nodes, edges", [
    (hexagon_pattern(), 6, 12),
    (square_pattern(), 8, 16),
    (single_edge_pattern(), 2, 1),
])
def test_render_counts(write, tmp_path, pattern, nodes, edges, capsys):
    svg = tmp_path / "g.svg"
    assert main(["render", "--pattern", write("p.json", pattern.to_json()), "--svg", str(svg)]) == 0
    body = svg.read_text()
    assert len(re.findall(r"<circle ", body)) == nodes
    assert len(re.findall(r'class="black"[^>]*fill="black"', body)) == nodes // 2
    assert len(re.findall(r'class="white"[^>]*fill="white"', body)) == nodes // 2
    assert len(re.findall(r"<path ", body)) == edges


def test_reruns_are_byte_identical(write, tmp_path, capsys):
    src = write("in.json", {"B": CUBIC_BA})
    outs = []
    out, svg = tmp_path / "o.json", tmp_path / "g.svg"
    for _ in range(2):
        main(["compute", "--input", src, "--output", str(out)])
        main(["render", "--pattern", write("p.json", square_pattern().to_json()), "--svg", str(svg)])
        outs.append((out.read_bytes(), svg.read_bytes(), capsys.readouterr().out))
    assert outs[0] == outs[1]
