import io
import json
import subprocess
import sys

import pytest

from valfun.cli import EXAMPLES, run
from valfun.fixtures import Fixture, monic_singular_to_json, qst


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_check_exit_codes():
    assert call("check", "--field", "t-adic-Q", "--fn", "t/(x^2+t)")[0] == 0
    code, out, _ = call("check", "--field", "t-adic-Q", "--fn", "1/x", "--set", "ring")
    assert code == 1 and "witness: t" in out


def test_check_unknown_exit_code(tmp_path):
    from valfun.fields import QQ, MonomialField
    from valfun.values import LexInt

    Z = LexInt(1)
    F = MonomialField(QQ, [("t", Z.element(1)), ("c", Z.element(0)), ("e", Z.element(0))], Z)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(F.to_json()))
    assert call("check", "--field", str(path), "--fn", "t/(x^2-c)")[0] == 2


def test_usage_errors():
    assert call()[0] == 64
    assert call("frobnicate")[0] == 64
    code, _, err = call("check", "--field", "padic2", "--fn", "x +* 2")
    assert code == 64 and "column" in err
    assert call("check", "--field", "padic2", "--fn", "x", "--set", "bogus")[0] == 64
    code, _, err = call("example", "nope")
    assert code == 64 and "t-over-x2-plus-t" in err


def test_classify_not_prufer():
    code, out, _ = call("classify", "--residue", "algclosed", "--group", "quad_sqrt2")
    assert code == 1 and "not Prüfer" in out
    code, out, _ = call("--format", "json", "classify", "--residue", "finite:2", "--group", "quad_sqrt2")
    assert code == 0
    body = json.loads(out)
    assert body["prufer"] and body["rootless pair"] == ["x^2 + x + 1", "x^3 + x + 1"]


def test_minval_and_svg(tmp_path):
    svg = tmp_path / "m.svg"
    code, out, _ = call("minval", "--field", "padic2", "--poly", "2*x^2+x+4", "--svg", str(svg))
    assert code == 0 and "[-1, 2]: 1*g + 0" in out
    first = svg.read_bytes()
    assert first.startswith(b"<?xml")
    call("minval", "--field", "padic2", "--poly", "2*x^2+x+4", "--svg", str(svg))
    assert svg.read_bytes() == first
    code, out, _ = call("minval", "--field", "lex2-F3", "--poly", "s*x+t", "--svg", str(tmp_path / "n.svg"))
    assert "skipped" in out and not (tmp_path / "n.svg").exists()


def test_locpoly_val_witness():
    code, out, _ = call("locpoly", "--field", "padic2", "--poly", "2*x^2+x+4", "--at", "4")
    assert code == 0 and "loc: x + 1" in out and "d: 1" in out
    code, out, _ = call("--format", "json", "val", "--field", "lex2-F3", "--elem", "s^2*t + s*t^3")
    assert json.loads(out)["value"] == "(1,3)"
    code, out, _ = call("witness", "--field", "quad-F2", "--fn", "(x-1)^2", "--alpha", "0")
    assert code == 0 and "a: s + 1" in out
    code, out, _ = call("witness", "--field", "padic2", "--fn", "x", "--alpha", "0")
    assert code == 1 and "SlopeConditionError" in out


def test_diamond_verify_from_file(tmp_path):
    path = tmp_path / "qst.json"
    path.write_text(Fixture(monic_singular=monic_singular_to_json(qst())).dumps())
    code, out, _ = call("diamond-verify", "--fixture", str(path), "--samples", "20", "--seed", "4")
    assert code == 0 and "failures: 0" in out


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_examples_pass(name):
    assert call("example", name)[0] == 0


def test_same_seed_same_bytes(monkeypatch):
    args = ("--format", "json", "diamond-verify", "--fixture", "F3-st", "--samples", "30")
    monkeypatch.setenv("VALFUN_SEED", "11")
    a = call(*args)[1]
    b = call(*args)[1]
    assert a == b and json.loads(a)["seed"] == 11
    c = call(*args, "--seed", "11")[1]
    assert c == a


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "valfun", "example", "--list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "f3st-diamond" in proc.stdout
