from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from appl.cli import run

from conftest import CORPUS

IRR = "interval(irreducible)"


def call(*argv: str) -> tuple:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv: str) -> tuple:
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


# ---------------------------------------------------------------- eval


def test_eval_text():
    assert call("eval", "--domain", IRR, "--cmd", "(x<>0?);(x=0?)", "--input", "[-1,1]")[:2] == (0, "empty (exact)\n")
    code, out, _ = call("eval", "--domain", "interval:simple", "--cmd", "(x<>0?);(x=0?)", "--input", "[-1,1]")
    assert (code, out) == (0, "[0,0] (exact)\n")


def test_eval_program_file_with_comments(tmp_path):
    prog = tmp_path / "p.cmd"
    prog.write_text("# a loop\n(x:=x+2)*\n")
    code, out, _ = call("eval", "--domain", IRR, "--program", str(prog), "--input", "[0,0]")
    assert (code, out) == (0, "[0,+inf) (exact)\n")


def test_eval_widened_is_inconclusive():
    code, out, _ = call("eval", "--domain", "interval(simple)", "--cmd", "(inc x)*", "--input", "[0,0]")
    assert code == 2 and "widened" in out


def test_eval_json_fields():
    code, payload = call_json("eval", "--domain", IRR, "--cmd", "inc x", "--input", "[0,0]")
    assert code == 0
    assert payload["value"] == "[1,1]" and payload["exactness"] == "exact"
    assert payload["command"] == "eval" and "schema" in payload and "flags" in payload


def test_json_is_deterministic():
    argv = ("laws", "--domain", "collecting(x:0..2)", "--samples", "5", "--seed", "3")
    assert call(*argv, "--format", "json")[1] == call(*argv, "--format", "json")[1]


# ---------------------------------------------------------------- triples and scripts


def test_check_triple_codes():
    base = ("check-triple", "--domain", IRR, "--cmd", "(x<>0?);(x=0?)", "--pre", "[-1,1]")
    code, out, _ = call(*base, "--post", "empty")
    assert code == 0 and out.startswith("VALID")
    code, out, _ = call("check-triple", "--domain", "interval(simple)", "--cmd", "(x<>0?);(x=0?)",
                        "--pre", "[-1,1]", "--post", "empty")
    assert code == 1 and "computed post: [0,0]" in out
    code, _, _ = call("check-triple", "--domain", "interval(simple)", "--cmd", "(inc x)*",
                      "--pre", "[0,0]", "--post", "[0,+inf)")
    assert code == 2


def test_check_derivation_codes():
    assert call("check-derivation", str(CORPUS / "intervals_hole.appl"))[0] == 0
    code, payload = call_json("check-derivation", str(CORPUS / "negative" / "intervals_hole_simple.appl"))
    assert code == 1
    assert payload["failure"]["path"] == "proof/join" and payload["failure"]["condition"] == "density"


def test_check_derivation_mode_and_trace():
    code, out, _ = call("check-derivation", str(CORPUS / "abstract_hole.appl"),
                        "--mode", "abstract", "interval-over-powerset(x:-1..1)", "--trace")
    assert code == 0 and "proof/join/0.seq" in out
    assert call("check-derivation", str(CORPUS / "abstract_hole.appl"), "--mode", "sideways")[0] == 3


def test_prove_output_is_checkable(tmp_path):
    code, out, _ = call("prove", "--domain", IRR, "--cmd", "(x<>0?);(x=0?)", "--pre", "[-1,1]")
    assert code == 0
    path = tmp_path / "p.appl"
    path.write_text(out)
    assert call("check-derivation", str(path))[0] == 0


# ---------------------------------------------------------------- certification and laws


def test_certify_bca():
    gi = "interval-over-powerset(x:-3..3)"
    code, out, _ = call("certify-bca", "--gi", gi, "--cmd", "(x<>0?);(x=0?)", "--input", "[-1,1]")
    assert code == 0 and out.startswith("CERTIFIED  empty")
    code, payload = call_json("certify-bca", "--gi", gi, "--cmd", "(inc x + dec x);(x=0?)", "--input", "[0,0]")
    assert code == 1 and payload["verdict"] == "NotCertified"


def test_laws_table():
    code, out, _ = call("laws", "--domain", "interval(irreducible)", "--samples", "10", "--seed", "7")
    assert code == 0
    assert "seed 7" in out and "left-expansion" in out and "FAIL" not in out


# ---------------------------------------------------------------- errors


@pytest.mark.parametrize(
    "argv, code",
    [
        (("eval", "--domain", "nonsense", "--cmd", "1", "--input", "x"), 3),
        (("eval", "--domain", IRR, "--cmd", "inc", "--input", "[0,0]"), 3),
        (("eval", "--domain", IRR, "--cmd", "inc x", "--input", "[0,"), 3),
        (("eval", "--domain", "collecting(x:0..2)", "--cmd", "inc x", "--input", "{9}"), 3),
        (("eval", "--domain", IRR, "--cmd", "inc x"), 3),
        (("bogus",), 3),
        (("check-derivation", "/nonexistent/file.appl"), 3),
        (("laws", "--domain", IRR, "--samples", "0"), 3),
        (("eval", "--domain", IRR, "--cmd", "(x<>0?)", "--input", "[0,+inf)"), 4),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_json_error_payload():
    code, payload = call_json("eval", "--domain", "nonsense", "--cmd", "1", "--input", "x")
    assert code == 3 and payload["verdict"] == "error" and payload["error"]["kind"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "appl", "eval", "--domain", IRR, "--cmd", "inc x", "--input", "[0,0]"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "[1,1] (exact)"
