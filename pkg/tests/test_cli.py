import json
import shutil
import subprocess

import pytest

from symjac.cli import jsonable, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_command(capsys):
    code, out, _ = run(capsys, "bracket", "Y[a1,a2,b2]", "Y[b1,a2,b2]", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 2 and data["normal_form"]


def test_json_is_deterministic(capsys):
    first = run(capsys, "star", "Y[a1,b1,a2]", "Y[b1,a1,b2]", "--json")[1]
    second = run(capsys, "star", "Y[a1,b1,a2]", "Y[b1,a1,b2]", "--json")[1]
    assert first == second
    assert json.loads(first)["normal_form"]
    assert jsonable({2: 1, 10: 2}) == {"10": 2, "2": 1}


def test_zero_normal_form(capsys):
    code, out, _ = run(capsys, "normalize", "Y[a1,b1,a2] + Y[b1,a1,a2]", "--json")
    assert code == 0 and json.loads(out)["zero"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "Y[a1,b1")
    assert code == 1 and "byte" in err


def test_genus_cap_exit_code(capsys):
    code, _, err = run(capsys, "dim", "--genus", "9", "--degree", "1")
    assert code == 2 and "cap" in err
    code, _, _ = run(capsys, "verify", "ker-b2", "--genus", "4")
    assert code == 2


def test_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 1 and "unknown check" in err


def test_dim_and_export(capsys):
    code, out, _ = run(capsys, "dim", "-g", "3", "-d", "2", "--json")
    assert code == 0
    assert json.loads(out)["degrees"]["2"]["dimension"] == 127
    code, out, _ = run(capsys, "dim", "-g", "3", "-d", "2", "--space", "I", "--json")
    assert json.loads(out)["degrees"]["2"]["dimension"] == 112
    code, out, _ = run(capsys, "export", "-g", "2", "-d", "1")
    data = json.loads(out)
    assert len(data["basis"]) == 4 and data["relations"]["rows"] == 0


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "t1", "--genus", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["report"]["theta_coefficient"] == "-3/2"
    code, out, _ = run(capsys, "verify", "l2l3", "--genus", "5")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "weight-square", "--genus", "2", "--samples", "5")
    assert code == 0


def test_decompose_and_weight(capsys):
    code, out, _ = run(capsys, "decompose", "--target", "lambda=1,1,1", "-g", "3")
    assert code == 0 and "G[w1] + G[w3]" in out
    code, out, _ = run(capsys, "weight", "Theta")
    assert code == 0 and out.strip() == "t^2*(12)"
    code, out, _ = run(capsys, "weight", "Y[a1,b1,a2]", "--lie", "abelian2")
    assert code == 0 and out.strip() == "0"
    code, _, _ = run(capsys, "decompose", "--target", "nonsense")
    assert code == 1


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


@pytest.mark.skipif(shutil.which("symjac") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["symjac", "verify", "t2", "--genus", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout
