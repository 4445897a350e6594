import json
import subprocess
import sys

import pytest

from lochodge import filtrations
from lochodge.cli import main


@pytest.fixture
def node_file(tmp_path):
    p = tmp_path / "node.ideal"
    p.write_text("vars 2\nx1*x2\n")
    return str(p)


def test_lcd_json(node_file, capsys):
    assert main(["lcd", node_file, "--jobs", "1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["payload"]["lcd"] == 1


def test_output_file(node_file, tmp_path):
    out = tmp_path / "r.md"
    assert main(["betti", node_file, "--format", "md", "-o", str(out)]) == 0
    assert out.read_text().startswith("# lochodge betti")


def test_exit_code_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars 2\nx5\n")
    assert main(["lcd", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["lcd", str(tmp_path / "missing.ideal")]) == 2
    assert main(["filt", str(bad), "--box", "0"]) == 2


def test_exit_code_on_cap(node_file, capsys, monkeypatch):
    # finished images are cached per process; start cold like a fresh invocation
    monkeypatch.setattr(filtrations, "_EXT_CACHE", {})
    assert main(["ext", node_file, "--box", "3", "--tcap", "1", "--jobs", "1"]) == 3
    assert "cap exceeded" in capsys.readouterr().err


def test_assert_flag(tmp_path, node_file, capsys):
    assert main(["filt", node_file, "--box", "3", "--assert", "--jobs", "1"]) == 0
    # a supplied Hodge ideal only yields observations, so --assert stays green
    h = tmp_path / "h.ideal"
    h.write_text("vars 2\nx1\n")
    assert main(["jk", node_file, "--hodge-ideal", str(h), "--assert"]) == 0


def test_corpus_command(capsys):
    assert main(["corpus", "--seed", "3", "--count", "4", "--n", "4", "--jobs", "1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["payload"]["count"] == len(d["payload"]["members"]) == 4
    assert all(m["lcd"] == m["pd"] for m in d["payload"]["members"])


def test_console_script_runs(node_file):
    r = subprocess.run([sys.executable, "-m", "lochodge.cli", "lcd", node_file, "--format", "csv"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("verdict,holds,kind,scope")
