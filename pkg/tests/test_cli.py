import io
import json
import re

import pytest

from conftest import STACKED, THREE_RECT
from rectlevel.cli import CSV_HEADER, main
from rectlevel.geometry import Family
from rectlevel.instance_io import read_instance, write_instance


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def g3(tmp_path):
    path = tmp_path / "g3.rects"
    code, text = run("generate", "--kind", "grid", "--m", "3", "--out", str(path))
    assert code == 0
    assert text.strip() == f"grid n=6 file={path}"
    return path


def test_generate_grid_file(g3):
    lines = [l for l in g3.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "rects 1"
    assert len(lines[1:]) == 6


def test_generate_tightness_bad_divisibility(tmp_path, capsys):
    code, _ = run("generate", "--kind", "tightness", "--n", "30", "--p", "6", "--out", str(tmp_path / "t"))
    assert code == 2
    assert "4(p-2)=16 must divide n" in capsys.readouterr().err
    assert not (tmp_path / "t").exists()


def test_generate_missing_flag(tmp_path, capsys):
    assert run("generate", "--kind", "grid", "--out", str(tmp_path / "x"))[0] == 2
    assert "--m" in capsys.readouterr().err


def test_generate_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        run("generate", "--kind", "random", "--n", "30", "--seed", "5", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("RECTLEVEL_SEED", "5")
    run("generate", "--kind", "random", "--n", "30", "--out", str(tmp_path / "env"))
    run("generate", "--kind", "random", "--n", "30", "--seed", "5", "--out", str(tmp_path / "flag"))
    assert (tmp_path / "env").read_bytes() == (tmp_path / "flag").read_bytes()


def test_analyze_grid(g3, tmp_path):
    rep = tmp_path / "r.json"
    code, text = run("analyze", "--in", str(g3), "--k", "0", "--json", str(rep))
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["schema_version"] == 1
    assert doc["analysis"]["union_complexity"] == 36
    assert doc["packing"]["nu"] == 3
    assert "union_complexity=36" in text


def test_analyze_three_rect_stdout(tmp_path):
    path = tmp_path / "three.rects"
    write_instance(path, Family.from_coords(THREE_RECT))
    code, text = run("analyze", "--in", str(path), "--k", "0,1", "--engine", "both")
    assert code == 0
    doc = json.loads(text)
    assert doc["analysis"]["leq_k"] == {"0": 2, "1": 4}
    assert doc["engine"] == "both"


def test_analyze_numbers_match_library(g3):
    from rectlevel.bounds import InstanceAnalysis
    code, text = run("analyze", "--in", str(g3), "--k", "2")
    doc = json.loads(text)
    rep = InstanceAnalysis(read_instance(g3)).report(2)
    assert doc["classification"]["2"]["per_type_counts"] == rep.measured_X_leq_k_per_type
    assert doc["checks"]["2"]["bound_values"] == rep.bound_values


def _floats(obj):
    if isinstance(obj, float):
        yield obj
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from _floats(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _floats(v)


def test_report_is_byte_stable_and_integer_only(g3):
    _, a = run("analyze", "--in", str(g3), "--k", "0,1")
    _, b = run("analyze", "--in", str(g3), "--k", "0,1")
    assert a == b
    assert list(_floats(json.loads(a))) == []


def test_analyze_both_on_random_files(tmp_path):
    for seed in range(15):
        path = tmp_path / f"r{seed}.rects"
        run("generate", "--kind", "random", "--n", str(5 + 3 * seed), "--seed", str(seed), "--out", str(path))
        assert run("analyze", "--in", str(path), "--engine", "both", "--json", str(tmp_path / "o.json"))[0] == 0


def test_analyze_mismatch_exit_code(g3, monkeypatch, capsys):
    import rectlevel.cli as cli
    real = cli.analyze_sweep

    def broken(f):
        p = real(f)
        v = p.vertices[0]
        return type(p).from_vertices((v._replace(depth=v.depth + 1),) + p.vertices[1:])

    monkeypatch.setattr(cli, "analyze_sweep", broken)
    assert run("analyze", "--in", str(g3), "--engine", "both")[0] == 1
    assert "engine mismatch" in capsys.readouterr().err


def test_oracle_cap(g3, capsys):
    assert run("analyze", "--in", str(g3), "--engine", "oracle", "--oracle-cap", "3")[0] == 2


def test_verify_grid(g3, tmp_path):
    rep = tmp_path / "v.json"
    code, text = run("verify", "--in", str(g3), "--k", "0", "--json", str(rep))
    assert code == 0 and text.startswith("PASS")
    items = {c["name"]: c for c in json.loads(rep.read_text())["checks"]["0"]["items"]}
    assert items["theorem_2_5_leq_k"]["pass"] is True
    assert "36 <= 60" in items["theorem_2_5_leq_k"]["detail"]


def test_verify_tightness(tmp_path):
    path = tmp_path / "t.rects"
    run("generate", "--kind", "tightness", "--n", "32", "--p", "6", "--out", str(path))
    code, text = run("verify", "--in", str(path), "--k", "0,1,2,3")
    assert code == 0
    assert json.loads(text)["passed"] is True


def test_verify_failure_exit_and_dump(g3, monkeypatch):
    import rectlevel.bounds as bounds
    monkeypatch.setattr(bounds, "extremal_per_rect", lambda recs: {0: 10 ** 6})
    code, text = run("verify", "--in", str(g3))
    assert code == 1
    doc = json.loads(text)
    assert doc["passed"] is False
    assert doc["counterexample_dump"]["instance"][0] == list(read_instance(g3)[0].coords)


def test_verify_corrupted_file(tmp_path, capsys):
    path = tmp_path / "bad.rects"
    path.write_text("rects 1\n0 0 2 2\n2 3 4 5\n")
    assert run("verify", "--in", str(path))[0] == 2
    assert "x=2" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run("verify", "--in", str(tmp_path / "nope"))[0] == 2


def test_bench_rows(tmp_path):
    csv = tmp_path / "b.csv"
    code, _ = run("bench", "--kind", "random", "--sizes", "100,200,400", "--seed", "1",
                  "--csv", str(csv), "--oracle-cap", "150")
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    rows = [l.split(",") for l in lines[1:]]
    assert [(r[0], r[2]) for r in rows] == [("100", "sweep"), ("100", "oracle"), ("200", "sweep"), ("400", "sweep")]
    assert rows[0][1] == rows[1][1]


def test_bench_vertex_column_deterministic():
    _, a = run("bench", "--sizes", "300,600", "--seed", "4", "--oracle-cap", "0")
    _, b = run("bench", "--sizes", "300,600", "--seed", "4", "--oracle-cap", "0")
    col = lambda t: [l.split(",")[1] for l in t.splitlines()[1:]]
    assert col(a) == col(b)
    assert len(a.splitlines()) == 3


def test_bench_rejects_descending():
    assert run("bench", "--sizes", "400,100")[0] == 2


def test_render_grid(g3, tmp_path):
    svg = tmp_path / "g3.svg"
    assert run("render", "--in", str(g3), "--out", str(svg), "--k", "0")[0] == 0
    text = svg.read_text()
    assert text.startswith("<?xml")
    assert len(re.findall(r"<rect ", text)) == 6
    assert len(re.findall(r"<circle ", text)) == 36
    import xml.dom.minidom
    xml.dom.minidom.parseString(text)


def test_render_lines_and_determinism(tmp_path):
    path = tmp_path / "s.rects"
    write_instance(path, Family.from_coords(STACKED))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run("render", "--in", str(path), "--out", str(a), "--show-lines")
    run("render", "--in", str(path), "--out", str(b), "--show-lines")
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    block = text.split('<g class="lines-horizontal">')[1].split("</g>")[0]
    lines = re.findall(r'<line x1="[^"]+" y1="(\d+)" x2="[^"]+" y2="(\d+)"[^>]*stroke-dasharray', block)
    # drawing flips y: line at y maps to 0 + 8 - y
    assert sorted(8 - int(y1) for y1, y2 in lines) == [2, 5, 8]
    assert all(y1 == y2 for y1, y2 in lines)


def test_render_unwritable(g3, tmp_path):
    assert run("render", "--in", str(g3), "--out", str(tmp_path / "no" / "dir.svg"))[0] == 2
