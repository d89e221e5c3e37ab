import json
import subprocess
import sys

import pytest

from realfn.cli import main

Z3M3IZ = {"numerator": [{"re": "0", "im": "0"}, {"re": "0", "im": "-3"},
                        {"re": "0", "im": "0"}, {"re": "1", "im": "0"}],
          "denominator": [{"re": "1", "im": "0"}], "tau": "conj", "mode": "float"}
Z3M3Z = dict(Z3M3IZ, numerator=[{"re": "0", "im": "0"}, {"re": "-3", "im": "0"},
                                {"re": "0", "im": "0"}, {"re": "1", "im": "0"}])
IDENTITY = dict(Z3M3IZ, numerator=[{"re": "0", "im": "0"}, {"re": "1", "im": "0"}],
                tau="antipodal")


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("mode", ["float", "exact"])
def test_cmd_test_examples(tmp_path, capsys, mode):
    code, out, _ = run(["test", write(tmp_path, "a.json", Z3M3Z), "--mode", mode], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "real"
    code, out, _ = run(["test", write(tmp_path, "b.json", IDENTITY), "--mode", mode], capsys)
    assert code == 0
    v = json.loads(out)
    assert v["verdict"] == "pseudoreal" and v["lambda_sign"] == -1
    code, out, _ = run(["test", write(tmp_path, "c.json", Z3M3IZ), "--mode", mode], capsys)
    v = json.loads(out)
    assert v["verdict"] == "not_equivalent" and "g" not in v
    assert v["stability"]["kind"] == "failure"


def test_json_out_and_tau_override(tmp_path, capsys):
    out_path = tmp_path / "v.json"
    code, out, _ = run(["test", write(tmp_path, "a.json", Z3M3IZ), "--tau", "antipodal",
                        "--json-out", str(out_path)], capsys)
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["verdict"] == "not_equivalent"


def test_scramble_round_trips(tmp_path, capsys):
    code, out, _ = run(["scramble", "--seed", "1", "--degree", "3", "--tau", "conj"], capsys)
    assert code == 0
    inst = json.loads(out)
    assert inst["ground_truth"]["class"] == "real"
    code, out, _ = run(["test", write(tmp_path, "s.json", inst)], capsys)
    assert json.loads(out)["verdict"] == "real"

    code, out, _ = run(["scramble", "--seed", "7", "--degree", "1", "--tau", "antipodal",
                        "--class", "pseudoreal"], capsys)
    code, out, _ = run(["test", write(tmp_path, "p.json", json.loads(out))], capsys)
    assert json.loads(out)["verdict"] == "pseudoreal"


def test_scramble_rejects_even_pseudoreal(capsys):
    code, _, err = run(["scramble", "--degree", "2", "--tau", "antipodal",
                        "--class", "pseudoreal"], capsys)
    assert code == 2 and "odd" in err


def test_selfcheck(capsys):
    code, out, _ = run(["selfcheck", "--count", "10", "--max-degree", "4", "--seed", "0"], capsys)
    assert code == 0
    assert "conj: 10/10 agree" in out and "antipodal: 10/10 agree" in out


def test_selfcheck_exact(capsys):
    code, out, _ = run(["selfcheck", "--count", "3", "--max-degree", "3", "--mode", "exact"],
                       capsys)
    assert code == 0 and "PASS" in out


def test_selfcheck_mismatch_exit_code(capsys, monkeypatch):
    from realfn import cli
    monkeypatch.setattr(cli, "divisor_criterion", lambda f, tau, tol: (False, None))
    code, out, _ = run(["selfcheck", "--count", "2", "--max-degree", "3"], capsys)
    assert code == 1 and "FAIL" in out


def test_divisor_command(tmp_path, capsys):
    code, out, _ = run(["divisor", write(tmp_path, "a.json", Z3M3Z)], capsys)
    d = json.loads(out)
    assert code == 0 and d["tau_stable"] is True
    assert [e["multiplicity"] for e in d["sigma_divisor"]] == [2, 2, 1, 1, 3]
    assert len(d["critical_values"]) == 3


def test_monodromy_commands(tmp_path, capsys):
    z4 = write(tmp_path, "z4.json", {"degree": 4, "sigma": [[[1, 2, 3, 4]], [[1, 4, 3, 2]]]})
    code, out, _ = run(["monodromy", "quotient", z4, "--words", "[[1, 1]]"], capsys)
    d = json.loads(out)
    assert code == 0 and d["blocks"] == [[1, 3], [2, 4]]
    assert d["quotient"] == {"degree": 2, "sigma": [[[1, 2]], [[1, 2]]]}
    code, out, _ = run(["monodromy", "quotient", z4, "--blocks", "[[1, 2], [3, 4]]"], capsys)
    assert code == 2
    torus = write(tmp_path, "t.json", {"degree": 2, "sigma": [[[1, 2]]] * 4})
    code, out, _ = run(["monodromy", "genus", torus], capsys)
    assert json.loads(out)["genus"] == 1
    code, out, _ = run(["monodromy", "passport", torus, "--pairing", "[2, 1, 4, 3]"], capsys)
    assert json.loads(out)["stable"] is True
    bad = write(tmp_path, "bad.json", {"degree": 2, "sigma": [[[1, 2]], []]})
    code, _, err = run(["monodromy", "validate", bad], capsys)
    assert code == 2 and "identity" in err


@pytest.mark.parametrize("content", ["not json", json.dumps({"numerator": [], "tau": "conj"}),
                                     json.dumps(dict(Z3M3Z, tau="nope"))])
def test_invalid_input_exit_code(tmp_path, capsys, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, _, err = run(["test", str(p)], capsys)
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys):
    assert run(["test", "/nonexistent/instance.json"], capsys)[0] == 2


def test_numerical_failure_exit_code(tmp_path, capsys, monkeypatch):
    from realfn import cli
    from realfn.errors import NumericalFailure

    def boom(*args):
        raise NumericalFailure("cluster ambiguity")
    monkeypatch.setattr(cli, "reality_test", boom)
    code, _, err = run(["test", write(tmp_path, "a.json", Z3M3Z)], capsys)
    assert code == 3 and "numerical failure" in err


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "a.json", Z3M3Z)
    res = subprocess.run([sys.executable, "-m", "realfn", "test", path],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "real"
