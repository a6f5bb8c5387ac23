import contextlib
import io
import json
import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

import gradedhopf
from gradedhopf.cli import main

DATA = Path(gradedhopf.__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("GRADEDHOPF_REGEN_GOLDEN") == "1"

COMMANDS = {
    "check_jacobi_sl2": ["check-jacobi", "sl2.json"],
    "check_jacobi_gl11": ["check-jacobi", "gl1_1.json"],
    "check_jacobi_broken": ["check-jacobi", "sl2_broken.json"],
    "check_jacobi_missing": ["check-jacobi", "nope.json"],
    "pbw_ef": ["pbw", "e*f", "--algebra", "sl2.json"],
    "pbw_nested": ["pbw", "[h,[h,e]] + (e+f)^2", "--algebra", "sl2.json"],
    "pbw_super": ["pbw", "[t,t] + t*x*t - 1/3*y*x", "--algebra", "heisenberg_odd.json"],
    "pbw_syntax_error": ["pbw", "e +", "--algebra", "sl2.json"],
    "pbw_unknown": ["pbw", "e*g", "--algebra", "sl2.json"],
    "bch_heisenberg": ["bch", "--order", "2", "--algebra", "heisenberg.json", "x", "y"],
    "bch_sl2": ["bch", "--order", "3", "--algebra", "sl2.json", "e", "f"],
    "bch_free": ["bch", "--order", "4", "--free"],
    "hopf_sl2": ["hopf-check", "--algebra", "sl2.json", "--max-len", "3"],
    "hopf_super_json": ["hopf-check", "--algebra", "heisenberg_odd.json", "--max-len", "2", "--json"],
    "hc_build_heisenberg": ["hc-build", "heisenberg_center.json", "--order", "2"],
    "hc_check_heisenberg": ["hc-check", "heisenberg_center.json", "--order", "2"],
    "hc_check_sl2": ["hc-check", "sl2_cartan.json", "--order", "2"],
    "algebroid_weyl": ["algebroid-check", "weyl.json", "--order", "3"],
    "algebroid_plane_hc": ["algebroid-check", "heisenberg_plane.json", "--order", "2"],
    "algebroid_plane_tables": ["algebroid-check", "heisenberg_plane.json", "--order", "2", "--h", ""],
    "algebroid_bad_anchor": ["algebroid-check", "bad_anchor.json", "--order", "2"],
    "jets_line": ["jets", "z*j(z^2) - 2*j(z)", "--dim", "1", "--order", "3"],
    "jets_plane": ["jets", "z1*j(z1*z2)", "--dim", "2", "--order", "2"],
}

EXIT = {"check_jacobi_broken": 1, "check_jacobi_missing": 2, "pbw_syntax_error": 2, "pbw_unknown": 2,
        "algebroid_bad_anchor": 2}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(DATA)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    finally:
        os.chdir(old)
    return "%s--- stderr\n%s--- exit %d\n" % (out.getvalue(), err.getvalue(), code), code


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_golden(name):
    text, code = run(COMMANDS[name])
    path = GOLDEN / (name + ".txt")
    if REGEN:
        path.write_text(text)
    assert code == EXIT.get(name, 0)
    assert text == path.read_text()
    # byte-identical on a second run
    assert run(COMMANDS[name])[0] == text


def test_spec_examples():
    assert run(COMMANDS["pbw_ef"])[0].startswith("f*e + 2*h\n")
    assert run(COMMANDS["bch_heisenberg"])[0].startswith("x + y + 1/2*z\n")
    assert run(COMMANDS["check_jacobi_sl2"])[1] == 0


def test_json_report_parses():
    text, code = run(COMMANDS["hopf_super_json"])
    data = json.loads(text.split("--- stderr")[0])
    assert data["passed"] and len(data["results"]) == 7


def test_order_flags_are_required():
    with pytest.raises(SystemExit) as exc:
        main(["hc-check", str(DATA / "heisenberg_center.json")])
    assert exc.value.code == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gradedhopf.cli", "pbw", "e*f", "--algebra", str(DATA / "sl2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "f*e + 2*h\n"
    proc = subprocess.run([sys.executable, "-m", "gradedhopf.cli", "pbw", "e +", "--algebra", str(DATA / "sl2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "position 4" in proc.stderr


def test_cli_roundtrip_random_elements():
    from gradedhopf.lie import sl2_graded

    from helpers import random_uelement

    rng = random.Random(99)
    alg = sl2_graded()
    for _ in range(100):
        a = random_uelement(alg, rng, 3, 5)
        # "--" keeps a leading minus sign from being read as an option
        text, code = run(["pbw", "--algebra", "sl2.json", "--", str(a)])
        assert code == 0 and text.split("\n")[0] == str(a)
