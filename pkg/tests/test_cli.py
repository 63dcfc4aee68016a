import io
import json

import pytest

from surflink.cli import main
from surflink.diagram import dump_sld
from surflink.generators import classical, weave


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, d in {"weave22": weave(2, 2), "trefoil": classical("trefoil"),
                    "kink": classical("kink")}.items():
        p = tmp_path / f"{name}.sld"
        p.write_text(dump_sld(d))
        paths[name] = str(p)
    broken = tmp_path / "broken.sld"
    broken.write_text('{"version": "sld-1", "crossings": [{"id": "x"}],\n "pairings": [], "orientations": []}')
    paths["broken"] = str(broken)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_weave_thickened(files, capsys):
    code, out, _ = run(capsys, "analyze", files["weave22"], "--thickened-surface")
    assert code == 0
    assert "thm33" in out and "2 + 2 = 4 − 0] ✓" in out
    assert "7.32772" in out
    assert "a_{m-1} = -2" in out and "t_F = 4" in out


def test_analyze_json_is_stable(files, capsys):
    code, a, _ = run(capsys, "analyze", files["weave22"], "--json", "--chi-m", "0", "--chi-boundary", "0")
    _, b, _ = run(capsys, "analyze", files["weave22"], "--json", "--chi-m", "0",
                  "--chi-boundary", "0", "--threads", "4")
    assert code == 0 and a == b
    doc = json.loads(a)
    assert doc["version"] == "report-1"
    assert doc["guts_and_volume"]["chi_guts_A"] == -2
    assert doc["theorems"]["checks"]["thm33"]["status"] == "verified"


def test_analyze_trefoil_is_gated(files, capsys):
    code, out, _ = run(capsys, "analyze", files["trefoil"])
    assert code == 2
    assert "not applicable: genus >= 1 required" in out


def test_analyze_broken(files, capsys):
    code, _, err = run(capsys, "analyze", files["broken"])
    assert code == 1 and "crossings[0]" in err


def test_analyze_stdin(files, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(open(files["weave22"]).read()))
    code, out, _ = run(capsys, "analyze", "-")
    assert code == 0 and "c = 4" in out


def test_max_crossings(files, capsys):
    code, _, err = run(capsys, "analyze", files["weave22"], "--max-crossings", "3")
    assert code == 1 and "state cap 3" in err


def test_chi_flags_must_pair(files, capsys):
    code, _, err = run(capsys, "analyze", files["weave22"], "--chi-m", "0")
    assert code == 1 and "together" in err


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", "thm33", files["weave22"])
    assert code == 0 and "2 + 2 = 4 − 0 ✓" in out
    code, out, _ = run(capsys, "verify", "lemma32", files["kink"])
    assert code == 2 and "hypotheses not verified" in out
    code, out, _ = run(capsys, "verify", "all", "--corpus", "weave:2..3x2..3")
    assert code == 0 and out.strip().endswith("pass")


def test_verify_needs_one_source(files, capsys):
    code, _, err = run(capsys, "verify", "all")
    assert code == 1
    with pytest.raises(SystemExit):
        main(["verify", "lemma99", files["weave22"]])


def test_bracket(files, capsys):
    code, out, _ = run(capsys, "bracket", files["weave22"], "--group-by-multicurve")
    lines = [l for l in out.splitlines() if l.startswith("<D>_")]
    assert code == 0 and len(lines) >= 2
    assert any(l.startswith("<D>_0 =") for l in lines)
    assert any("(1,0) (1,0)" in l for l in lines)
    code, out, _ = run(capsys, "bracket", files["trefoil"], "--group-by-multicurve")
    assert len([l for l in out.splitlines() if l.startswith("<D>_")]) == 1


def test_generate(tmp_path, capsys):
    out = tmp_path / "w.sld"
    code, _, _ = run(capsys, "generate", "weave", "2", "2", "--out", str(out))
    assert code == 0 and json.loads(out.read_text())["version"] == "sld-1"
    code, text, _ = run(capsys, "generate", "classical", "trefoil")
    assert code == 0 and json.loads(text)["expected_genus"] == 0
    code, _, err = run(capsys, "generate", "weave", "3", "3")
    assert code == 1 and "error" in err
    code, text, _ = run(capsys, "generate", "perturb", "add_kink", str(out))
    assert code == 0 and len(json.loads(text)["crossings"]) == 5
