import json
import subprocess
import sys

import pytest

from cvtq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    lines = out.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_centroid_example1(capsys):
    code, out, _ = run(capsys, "centroid", "example1")
    rep = report(out)
    assert code == 0
    assert rep["centers"][0] == pytest.approx([0.38898453, 0.12966151], abs=1e-8)
    assert rep["mismatch"] is False


def test_centroid_nonuniform_flags_mismatch(capsys, tmp_path):
    f = tmp_path / "sq.json"
    f.write_text(json.dumps({
        "format": "cvtq-region/1",
        "shape": {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
        "density": {"type": "polynomial", "terms": [{"coef": 4, "px": 1, "py": 1}]},
    }))
    code, out, _ = run(capsys, "centroid", str(f))
    rep = report(out)
    assert rep["expected_vector"] == pytest.approx([0.6666667, 0.6666667], abs=1e-7)
    assert rep["centroid"] == [0.5, 0.5]
    assert rep["mismatch"] is True


def test_optimal_rhombus(capsys):
    code, out, err = run(capsys, "optimal", "prop4-rhombus", "--n", "2")
    rep = report(out)
    assert code == 0 and rep["is_cvt"]
    assert rep["distortion"] == pytest.approx(0.0718274, abs=1e-6)
    assert rep["seed"] == 42
    assert "distortion" in err


def test_optimal_exact_grid(capsys):
    code, out, _ = run(capsys, "optimal", "grid4", "--n", "5", "--exact")
    rep = report(out)
    assert rep["distortion"] == 0.4375 and rep["multiplicity"] == 12
    assert rep["method"] == "branch-and-bound"


def test_optimal_exact_triangle_one(capsys):
    _, out, _ = run(capsys, "optimal", "triangle9", "--n", "1", "--exact")
    rep = report(out)
    assert rep["centers"] == [[0.5, 0.288675135]]
    assert rep["distortion"] == pytest.approx(0.185185, abs=1e-6)


def test_exact_on_region_is_unsupported(capsys):
    code, out, err = run(capsys, "optimal", "prop2-disc", "--n", "2", "--exact")
    assert code == 3 and out == "" and "point sets" in err


def test_discrete_lloyd_mode(capsys):
    code, out, _ = run(capsys, "optimal", "grid4", "--n", "4", "--restarts", "8")
    rep = report(out)
    assert code == 0 and rep["distortion"] >= 0.5 and rep["is_cvt"]


def test_determinism_byte_identical(capsys):
    _, a, _ = run(capsys, "optimal", "prop4-rhombus", "--n", "3", "--restarts", "4", "--seed", "7")
    _, b, _ = run(capsys, "optimal", "prop4-rhombus", "--n", "3", "--restarts", "4", "--seed", "7")
    assert a == b


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("CVTQ_SEED", "9")
    _, out, _ = run(capsys, "optimal", "prop4-rhombus", "--n", "2", "--restarts", "2")
    assert report(out)["seed"] == 9
    _, out, _ = run(capsys, "optimal", "prop4-rhombus", "--n", "2", "--restarts", "2", "--seed", "3")
    assert report(out)["seed"] == 3
    monkeypatch.setenv("CVTQ_SEED", "abc")
    code, _, _ = run(capsys, "optimal", "prop4-rhombus", "--n", "2")
    assert code == 2


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["optimal", "grid4", "--n", "2", "--bogus"])
    assert e.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "cvtq-region/1",\n "shape": [1,')
    code, _, err = run(capsys, "centroid", str(bad))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "optimal", "grid4", "--n", "20", "--exact")
    assert code == 2
    code, _, _ = run(capsys, "optimal", "grid4", "--n", "0")
    assert code == 2


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "centroid", str(tmp_path / "nope.json"))
    assert code == 4


def test_help_lists_every_flag(capsys):
    for sub, flags in {"optimal": ["--n", "--restarts", "--seed", "--exact", "--parallel"],
                       "render": ["--centers", "--n", "--out", "--restarts", "--seed"],
                       "reproduce": ["--table"]}.items():
        with pytest.raises(SystemExit) as e:
            main([sub, "--help"])
        assert e.value.code == 0
        text = capsys.readouterr().out
        for f in flags:
            assert f in text
        assert "default" in text


@pytest.mark.parametrize("table,rows", [("prop4", 2), ("prop3", 2), ("discrete", 10)])
def test_reproduce_tables(capsys, table, rows):
    code, out, err = run(capsys, "reproduce", "--table", table)
    assert code == 0
    assert out.count("PASS") == rows and "FAIL" not in out
    assert f"{rows}/{rows}" in err


def test_reproduce_all(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0 and "FAIL" not in out


def test_reproduce_failure_exit_code(capsys, monkeypatch):
    from cvtq import reproduce

    monkeypatch.setitem(reproduce._BUILDERS, "prop3", lambda: [reproduce.Row("prop3", "broken", 1.0, 2.0, 1e-9)])
    code, out, _ = run(capsys, "reproduce", "--table", "prop3")
    assert code == 1 and "FAIL" in out


def test_render_writes_svg(capsys, tmp_path):
    out_file = tmp_path / "rh.svg"
    code, out, _ = run(capsys, "render", "prop4-rhombus", "--n", "2", "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    assert text.count('class="cell"') == 2 and text.count('class="center"') == 2
    assert report(out)["out"] == str(out_file)


def test_render_explicit_centers_and_errors(capsys, tmp_path):
    code, _, _ = run(capsys, "render", "grid4", "--centers", "1,1;3,3", "--out", str(tmp_path / "g.svg"))
    assert code == 0
    code, _, _ = run(capsys, "render", "grid4", "--centers", "1;3,3", "--out", str(tmp_path / "g.svg"))
    assert code == 2
    code, _, _ = run(capsys, "render", "prop2-disc", "--centers", "0,0.4;0,-0.4",
                     "--out", str(tmp_path / "missing" / "d.svg"))
    assert code == 4


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cvtq", "optimal", "triangle9", "--n", "3", "--exact"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["multiplicity"] == 1
