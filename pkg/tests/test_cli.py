import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from pslrack.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads(resources.files("pslrack").joinpath("schemas", f"{name}.json").read_text())


@pytest.mark.parametrize("argv", [
    ["classes", "7"],
    ["classes", "9", "--verify"],
    ["subracks", "5", "split:a=4", "--verify", "--mode", "powerset"],
    ["subracks", "8"],
    ["minimal", "7", "--verify"],
    ["ass", "9"],
    ["h2", "5"],
    ["fpgroup", "a6cover", "--classes", "--quotient", "6"],
    ["fpgroup", "a6cover-schur"],
    ["verify", "2-5", "--only", "group_order", "class_sizes"],
])
def test_json_matches_schema(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema(argv[0]))
    assert doc["command"] == argv[0]


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "subracks", "9", "--json")
    _, b, _ = run(capsys, "subracks", "9", "--json")
    assert a == b


def test_verified_status(capsys):
    _, out, _ = run(capsys, "minimal", "5", "--verify", "--json")
    assert json.loads(out)["oracle_status"] == "oracle-verified"
    _, out, _ = run(capsys, "classes", "5", "--json")
    assert json.loads(out)["oracle_status"] == "symbolic-only"


@pytest.mark.parametrize("argv", [["classes", "6"], ["classes", "1"], ["ass", "3"],
                                  ["subracks", "5", "nosuch"], ["fpgroup", "/no/such/file"]])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith(f"pslrack {argv[0]}: error:")


def test_identity_class_rejected(capsys):
    code, _, err = run(capsys, "subracks", "5", "identity")
    assert code == 2 and "identity" in err


def test_csv(capsys):
    code, out, _ = run(capsys, "classes", "5", "--csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("class_id,")
    assert len(lines) == 6


def test_text_table(capsys):
    _, out, _ = run(capsys, "classes", "4")
    assert "PSL(2,4)" in out and "oracle status: symbolic-only" in out


def test_field_block(capsys):
    _, out, _ = run(capsys, "classes", "8", "--json")
    assert json.loads(out)["field"] == {"p": 2, "n": 3, "q": 8, "modulus": json.loads(out)["field"]["modulus"]}
    _, out, _ = run(capsys, "fpgroup", "a6cover", "--json")
    assert json.loads(out)["field"] is None


def test_fpgroup_file_and_stdin(tmp_path, capsys):
    f = tmp_path / "a5.txt"
    f.write_text("# alternating group of degree 5\na, b | a^2, b^3, (ab)^5\n")
    code, out, _ = run(capsys, "fpgroup", str(f), "--json")
    assert code == 0 and json.loads(out)["result"]["cosets"] == 60
    proc = subprocess.run([sys.executable, "-m", "pslrack.cli", "fpgroup", "-", "--json"],
                          input="a | a^5", capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["cosets"] == 5


def test_fpgroup_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("a, b | a^2, c")
    code, _, err = run(capsys, "fpgroup", str(f))
    assert code == 2 and "position" in err


def test_fpgroup_coset_limit(capsys):
    code, _, err = run(capsys, "fpgroup", "a6cover", "--limit", "100", "--strategy", "hlt")
    assert code == 2


def test_verify_exit_status(capsys, monkeypatch):
    import pslrack.checks as checks

    code, _, _ = run(capsys, "verify", "4,5")
    assert code == 0

    def broken(F):
        return checks.Check("group_order", False, "forced")

    broken.__name__ = "check_group_order"
    monkeypatch.setattr(checks, "CHECKS", [broken])
    code, out, _ = run(capsys, "verify", "5", "--json")
    assert code == 1 and json.loads(out)["oracle_status"] == "oracle-failed"


def test_verify_range_skips_non_prime_powers(capsys):
    _, out, _ = run(capsys, "verify", "5-7", "--only", "group_order", "--json")
    assert [f["q"] for f in json.loads(out)["result"]["fields"]] == [5, 7]
