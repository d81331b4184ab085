"""Golden-file tests for the command line.

Set STABCAP_REGEN_GOLDEN=1 to rewrite the files in tests/golden after an
intentional output change, then review the diff.
"""

import json
import os
from pathlib import Path

import pytest

from stabcap import certfile
from stabcap.building import construct_theorem_curve
from stabcap.cli import main

import certs

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("STABCAP_REGEN_GOLDEN") == "1"

CASES = {
    "c0_rational": "c0 5",
    "c0_sqrt": "c0 10",
    "c0_integer_root": "c0 9",
    "c0_transitional": "c0 7",
    "c0_staircase": "c0 staircase --steps 3",
    "c0_json": "c0 9/2 --json",
    "c0_transitional_json": "c0 55/8 --json",
    "ck_exact": "ck 8",
    "ck_fib_ratio": "ck 55/8",
    "ck_bounds": "ck 7 --k 3 --json",
    "index_curve": "index curve --m 3 --x 8+ --short 8",
    "index_curve_long": "index curve --m 3 --x 7+ --long 1 --json",
    "index_orbit_long": "index orbit --orbit long --mult 11 --param 34/5+",
    "index_orbit_short": "index orbit --orbit short --mult 75 --param 34/5+ --json",
    "ech_grading_i": "ech grading --mult 20 --param 13/2+",
    "ech_grading_ii": "ech grading --mult 76 --param 76/11+",
    "ech_grading_json": "ech grading --mult 75 --param 34/5+ --json",
    "ech_partition_neg": "ech partition --k 21 --theta 1/7- --sign neg",
    "ech_partition_glu": "ech partition --k 7 --theta 2/11 --sign neg --json",
    "ech_partition_pos": "ech partition --k 21 --theta 1/7- --sign pos",
    "ech_cylinder_partition": "ech cylinder --top 20@13/2+ --bottom 21@7+",
    "ech_cylinder_negative": "ech cylinder --top 75@34/5+ --bottom 76@76/11+ --json",
    "ech_cylinder_ok": "ech cylinder --top 7@5+ --bottom 8@8+",
    "glue_delta": "glue delta --theta 1/6 5 7",
    "glue_delta_diag": "glue delta --theta 1/6 2 2 --json",
    "glue_coeff": "glue coeff --parts 5,2 --theta 1/6",
    "glue_coeff_three": "glue coeff --parts 13,5,2 --theta 2/13-",
    "stab_bound": "stab check --m 8 --x 7+ --t 21",
    "stab_bound_json": "stab check --m 29 --x 76/11+ --t 76 --json",
    "stab_decomposition": "stab check --m 4 --x 5+ --t 10",
    "stab_rational": "stab check --m 3 --x 8 --t 8",
    "cert_build": "cert build --m 3",
    "cert_count": "cert count --m 6",
    "cert_count_json": "cert count --m 3 --json",
    "cert_verify": "cert verify m3.json",
    "cert_verify_json": "cert verify m4.json --json",
    "cert_verify_tampered": "cert verify tampered.json",
    "cert_verify_trivial_cover": "cert verify trivial_cover.json",
    "cert_verify_cylinder": "cert verify three_part_cylinder.json",
    "cert_verify_malformed": "cert verify malformed.json",
}


def _tampered() -> str:
    data = certfile.to_dict(construct_theorem_curve(3))
    data["levels"][1][0]["pos_ends"][1]["mult"] = 3
    return json.dumps(data, indent=2) + "\n"


INPUTS = {
    "m3.json": lambda: certfile.dumps(construct_theorem_curve(3)),
    "m4.json": lambda: certfile.dumps(construct_theorem_curve(4)),
    "tampered.json": _tampered,
    "trivial_cover.json": lambda: certfile.dumps(certs.trivial_cover_glue()),
    "three_part_cylinder.json": lambda: certfile.dumps(certs.three_part_cylinder()),
    "malformed.json": lambda: '{"format": "stabcap-building/1", "levels": []}\n',
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def in_golden(monkeypatch):
    monkeypatch.chdir(GOLDEN)


@pytest.mark.parametrize("name", sorted(INPUTS))
def test_input_files_current(name):
    path = GOLDEN / name
    if REGEN:
        path.write_text(INPUTS[name]())
    assert path.read_text() == INPUTS[name]()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, in_golden):
    code, out, err = run(CASES[name].split(), capsys)
    text = f"$ stabcap {CASES[name]}\n{out}[exit {code}]\n"
    if err:
        text += f"[stderr]\n{err}"
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize(
    "argv, code",
    [
        ("ech grading --mult 76 --param 76/11+", 0),
        ("stab check --m 8 --x 7+ --t 21", 0),
        ("stab check --m 4 --x 5+ --t 10", 1),
        ("stab check --m 2 --x 5+ --t 9", 1),
        ("ech cylinder --top 20@13/2+ --bottom 21@7+", 1),
        ("c0 7", 2),
        ("c0 5 --steps 3", 2),
        ("glue coeff --parts 2,5 --theta 1/6", 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv.split(), capsys)[0] == code


@pytest.mark.parametrize(
    "argv, flag",
    [
        ("ech grading --mult 0 --param 2+", "--mult"),
        ("ech grading --mult 3 --param 2++", "--param"),
        ("stab check --m 8 --x 7+ --t 21 --bogus", "--bogus"),
        ("index orbit --orbit mid --mult 2 --param 3", "--orbit"),
        ("ck 7+", "x"),
        ("glue coeff --parts 5,x --theta 1/6", "--parts"),
    ],
)
def test_usage_errors_name_the_flag(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv.split())
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_json_is_deterministic(capsys):
    argv = "stab check --m 29 --x 76/11+ --t 76 --json".split()
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first
    assert json.loads(first)["lower_bound"] == "76/29"


def test_cert_build_round_trips(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(["cert", "build", "--m", "5", "--out", str(out)], capsys)[0] == 0
    assert certfile.loads(out.read_text()) == construct_theorem_curve(5)
    assert certfile.dumps(certfile.loads(out.read_text())) == out.read_text()
    code, text, _ = run(["cert", "verify", str(out), "--json"], capsys)
    assert code == 0 and json.loads(text)["passed"]


def test_staircase_csv_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    run(["c0", "staircase", "--steps", "4", "--csv", str(out)], capsys)
    lines = out.read_text().splitlines()
    assert lines[0] == "lo,hi,kind,parameter" and len(lines) == 1 + 9


def test_tampered_verify_names_check(capsys, in_golden):
    code, out, _ = run(["cert", "verify", "tampered.json"], capsys)
    assert code == 1
    assert "[FAIL] (a) ends_match" in out


def test_missing_file(capsys, tmp_path):
    code, _, err = run(["cert", "verify", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "DomainError" in err
