import json
import subprocess
import sys

import pytest

from twoint.cli import main
from twoint.engine import dumps, decide
from twoint.syntax import parse_sequent


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide(capsys):
    code, out, _ = run(capsys, "decide", "p & q ; =>+ p &' q", "--copy", "&:full")
    assert code == 0 and out.startswith("DERIVABLE") and "[And'R+]" in out
    code, out, _ = run(capsys, "decide", "; =>+ bot")
    assert code == 1 and out.startswith("UNDERIVABLE")


def test_decide_outputs(capsys):
    code, out, _ = run(capsys, "decide", "p ; q =>+ p -< q", "--proof", "json", "--oracle")
    assert code == 0
    doc = json.loads(out.split("\n", 1)[1])
    assert doc["rule"] == "CoimpR+"
    code, out, _ = run(capsys, "decide", "p ; q =>+ p -< q", "--proof", "latex")
    assert r"\begin{prooftree}" in out
    code, out, _ = run(capsys, "--ascii", "decide", "p ; q =>+ p -< q")
    assert "p ; q =>+ p -< q" in out and "⊢" not in out
    code, out, _ = run(capsys, "decide", "p ; q =>+ p -< q", "--procedure", "forward")
    assert code == 0


def test_partial_copies(capsys):
    args = ["--copy", "&:proof-only", "--copy", "&:dual-only"]
    assert run(capsys, "decide", "p & q ; =>+ p &' q", *args)[0] == 0
    assert run(capsys, "decide", "p & q ; =>+ p &'' q", *args)[0] == 1


@pytest.mark.parametrize("argv", [
    ["decide"], ["frobnicate"], ["decide", "p ; =>+ p", "--proof", "pdf"],
    ["decide", "p ; =>+ p", "--copy", "&"], ["decide", "p ; =>+ p", "--copy", "&:sometimes"],
    ["identity", "p", "*"], [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "decide", "p =>+ p")[0] == 2
    assert run(capsys, "decide", "; =>+ p &' q", "--copy", "|:full")[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{\"sequent\": 3}")
    assert run(capsys, "check", str(bad))[0] == 2
    code, _, err = run(capsys, "decide", "; =>+ ((p -> q) -> p) -> p", "--max-sequents", "2")
    assert code == 2 and "limit" in err


def test_check(capsys, tmp_path):
    d = decide(parse_sequent("p & q ; =>+ q & p")).proof
    good = tmp_path / "good.json"
    good.write_text(dumps(d))
    code, out, _ = run(capsys, "check", str(good))
    assert code == 0 and out.startswith("OK")
    doc = json.loads(dumps(d))
    doc["premises"][0]["sequent"] = "p & q ; =>+ p"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1 and out.startswith("INVALID")


def test_nd_check(capsys, tmp_path):
    from importlib.resources import files
    path = files("twoint") / "data" / "and_prime_to_and.json"
    code, out, _ = run(capsys, "--ascii", "nd-check", str(path), "--copy", "&:proof-only")
    assert code == 0 and "p &' q ; =>+ p & q" in out
    doc = json.loads(path.read_text())
    doc["premises"][1]["line"] = "dual"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "nd-check", str(bad))[0] == 1


def test_unique(capsys):
    code, out, _ = run(capsys, "unique", "and", "--partial")
    assert code == 0 and "8 derivable / 4 underivable" in out
    code, out, _ = run(capsys, "unique", "top", "--json")
    assert code == 0 and json.loads(out)["unique"]


def test_dual(capsys):
    code, out, _ = run(capsys, "--ascii", "dual", "p ; q =>+ p -< q", "--decide")
    assert code == 0
    assert out.splitlines()[0] == "q ; p =>- q -> p"
    assert "original: DERIVABLE" in out and "dual:     DERIVABLE" in out
    code, out, _ = run(capsys, "dual", "p & q ; =>+ p &' q", "--copy", "&:proof-only", "--decide")
    assert code == 0 and "UNDERIVABLE" not in out


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "p -< q", "+", "--proof", "json")
    assert code == 0 and json.loads(out)["rule"] == "CoimpLa"


def test_deterministic(capsys):
    a = run(capsys, "unique", "coimp", "--json")[1]
    b = run(capsys, "unique", "coimp", "--json")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twoint", "decide", "; =>+ bot"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "UNDERIVABLE" in proc.stdout
