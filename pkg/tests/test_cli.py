import json
import subprocess
import sys

import pytest

from bikeigebra.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys, fixtures):
    for name in ("x2", "x4a", "x4b", "x8"):
        code, out, _ = run(capsys, "verify", fixtures / f"{name}.tvb")
        assert code == 0
        assert "violations=0 status=ok" in out
    code, out, _ = run(capsys, "verify", fixtures / "broken.tvb")
    assert code == 1
    assert "rii.i witness=(2,1) left=1 right=2" in out


def test_verify_single_axiom_and_json(capsys, fixtures):
    code, out, _ = run(capsys, "verify", fixtures / "x4c.tvb", "--axiom", "tii.ii", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "FAIL" and len(doc["violations"]) == 4
    assert {v["axiom"] for v in doc["violations"]} == {"tii.ii"}
    code, _, err = run(capsys, "verify", fixtures / "x2.tvb", "--axiom", "nope")
    assert code == 2 and "unknown axiom" in err


def test_verify_parse_error_has_position(capsys, tmp_path):
    bad = tmp_path / "bad.tvb"
    bad.write_text("1 1 | 1 1 | 1 1 | 1 - | 2\n2 2 | 2 x | 2 2 | - 2 | 1\n")
    code, _, err = run(capsys, "verify", bad)
    assert code == 2
    assert "line 2" in err


def test_color(capsys, fixtures):
    code, out, _ = run(capsys, "color", fixtures / "L1-long.eqs", fixtures / "x2.tvb")
    assert (code, out) == (0, "count=0\n")
    code, out, _ = run(capsys, "color", fixtures / "unknot.dgm", fixtures / "x2.tvb")
    assert out == "count=2\n"
    code, out, _ = run(capsys, "color", fixtures / "theta.dgm", fixtures / "x4a.tvb", "--oracle", "--list")
    lines = out.splitlines()
    assert lines[:3] == ["count=16", "oracle=16", "a=1,b=1,c=3"]
    assert len(lines) == 18


def test_color_json_is_stable(capsys, fixtures):
    args = ("color", fixtures / "theta.dgm", fixtures / "x4a.tvb", "--json", "--list")
    first = run(capsys, *args)[1]
    second = run(capsys, *args, "--threads", "2")[1]
    assert first == second
    assert json.loads(first)["count"] == 16


def test_color_refuses_unverified(capsys, fixtures):
    code, _, err = run(capsys, "color", fixtures / "theta.dgm", fixtures / "broken.tvb")
    assert code == 1 and "axiom" in err
    code, out, _ = run(capsys, "color", fixtures / "theta.dgm", fixtures / "broken.tvb", "--no-verify")
    assert code == 0 and out.startswith("count=")


def test_color_format_override(capsys, fixtures):
    code, _, err = run(capsys, "color", fixtures / "theta.dgm", fixtures / "x2.tvb", "--format", "equations")
    assert code == 2 and "SYNTAX" in err


def test_oracle(capsys, fixtures, monkeypatch):
    code, out, _ = run(capsys, "oracle", fixtures / "L1-reduced.eqs", fixtures / "x4a.tvb")
    assert (code, out) == (0, "count=2\n")
    monkeypatch.setenv("BIKEIGEBRA_BUDGET", "10")
    code, _, err = run(capsys, "oracle", fixtures / "L1-long.eqs", fixtures / "x2.tvb")
    assert code == 2 and "BUDGET_EXCEEDED" in err


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--order", "1")
    assert code == 0
    assert out.splitlines()[-1] == "order=1 raw=2 iso=2"
    code, out, _ = run(capsys, "search", "--order", "2", "--iso")
    assert out.splitlines()[-1] == "order=2 raw=14 iso=12"
    assert out.count("# n=2 key=") == 12
    target = tmp_path / "census.txt"
    code, out, _ = run(capsys, "search", "--order", "2", "--out", target)
    assert out == "order=2 raw=14 iso=12\n"
    assert target.read_text().count("# n=2") == 14


def test_search_json_deterministic(capsys):
    a = run(capsys, "search", "--order", "2", "--json")[1]
    b = run(capsys, "search", "--order", "2", "--json", "--threads", "2")[1]
    assert a == b
    assert json.loads(a)["raw"] == 14


def test_search_bound(capsys):
    code, _, err = run(capsys, "search", "--order", "6")
    assert code == 2 and "force" in err
    code, _, _ = run(capsys, "search", "--order", "2", "--stage", "bikei", "--require-undefined")
    assert code == 2


def test_moves(capsys, fixtures):
    code, out, _ = run(capsys, "moves", fixtures / "broken.tvb")
    assert code == 1
    assert "rII boundary=16 status=FAIL mismatches=4" in out
    code, out, _ = run(capsys, "moves", fixtures / "x2.tvb", "--move", "tV")
    assert (code, out) == (0, "tV boundary=32 status=ok mismatches=0\n")
    code, _, err = run(capsys, "moves", fixtures / "x2.tvb", "--move", "bogus")
    assert code == 2 and "bogus" in err
    code, out, _ = run(capsys, "moves", fixtures / "x4c.tvb", "--move", "tII", "--verbose")
    assert code == 1 and out.count("  boundary=") == 8


def test_moves_json(capsys, fixtures):
    code, out, _ = run(capsys, "moves", fixtures / "x4a.tvb", "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["reports"]) == 15
    assert all(r["status"] == "ok" for r in doc["reports"])


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2
    code, _, _ = run(capsys, "verify", "/nonexistent/file.tvb")
    assert code == 2


def test_module_entry_point(fixtures):
    proc = subprocess.run(
        [sys.executable, "-m", "bikeigebra", "verify", str(fixtures / "x2.tvb")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "status=ok" in proc.stdout
