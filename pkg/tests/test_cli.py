import json
import subprocess
import sys

import pytest

from surgery_forms import fixtures
from surgery_forms.cli import main
from surgery_forms.forms import make_E8, make_psi_n
from surgery_forms.matrix import RingMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_psi_n(capsys):
    code, out, _ = run(capsys, "construct", "psi_n", "--n", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["form"] == "quadratic" and obj["parity"] == 1
    m = RingMatrix.from_json(obj["matrix"])
    assert m.shape == (16, 16) and m == make_psi_n(1).psi


def test_construct_is_deterministic(capsys):
    _, a, _ = run(capsys, "construct", "psi_n", "--n", "2")
    _, b, _ = run(capsys, "construct", "psi_n", "--n", "2")
    assert a == b


def test_construct_e8_and_alpha(capsys):
    _, out, _ = run(capsys, "construct", "e8")
    assert RingMatrix.from_json(json.loads(out)) == fixtures.matrix("e8")
    _, out, _ = run(capsys, "construct", "alpha", "--i", "1", "--n", "1")
    assert RingMatrix.from_json(json.loads(out)["matrix"]) == fixtures.matrix("alpha_t2")


def test_construct_complexes(capsys):
    _, out, _ = run(capsys, "construct", "t2-complex")
    obj = json.loads(out)
    assert obj["ranks"] == [1, 2, 1] and len(obj["phi0"]) == 3
    _, out, _ = run(capsys, "construct", "t2n-complex", "--n", "2")
    assert json.loads(out)["ranks"] == [1, 4, 6, 4, 1]


def test_construct_guards(capsys):
    assert run(capsys, "construct", "psi_n", "--n", "5")[0] == 2
    assert run(capsys, "construct", "psi_n")[0] == 2
    assert run(capsys, "construct", "alpha", "--i", "3", "--n", "2")[0] == 2


@pytest.mark.parametrize("check", ["symmetrize-e8", "signature-e8", "nilpotent-alpha", "instant-t2",
                                   "transfer-example", "unimodular-lambda", "rank"])
def test_verify_passes(capsys, check):
    code, out, _ = run(capsys, "verify", check)
    assert code == 0
    assert json.loads(out.splitlines()[-1])["passed"] is True


def test_verify_roundtrip_small(capsys):
    code, out, _ = run(capsys, "verify", "roundtrip-control", "--k", "5", "--delta-sq", "1/10")
    assert code == 0


def test_verify_expensive_gate(capsys):
    assert run(capsys, "verify", "unimodular-lambda", "--n", "2")[0] == 2


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    raw = fixtures.load_raw()
    bad = json.loads(json.dumps(raw))
    bad["e8"]["entries"][0][0] = {"k": 0, "terms": [{"e": [], "c": 3}]}
    (tmp_path / fixtures.FILENAME).write_text(json.dumps(bad))
    monkeypatch.setenv(fixtures.ENV_VAR, str(tmp_path))
    assert run(capsys, "verify", "symmetrize-e8")[0] == 1


def test_missing_fixture_exit_code(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(fixtures.ENV_VAR, str(tmp_path / "nowhere"))
    assert run(capsys, "verify", "symmetrize-e8")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "construct", "psi_n", "--frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_transfer_verb(capsys, tmp_path):
    src = tmp_path / "a.json"
    main(["construct", "alpha", "--out", str(src)])
    code, out, _ = run(capsys, "transfer", "--k", "2,1", "--input", str(src))
    assert code == 0
    obj = json.loads(out)
    assert obj["rows"] == 4 and obj["parity"] == 1
    assert obj["basis"][1] == {"i": 1, "c": [1, 0]}
    m = RingMatrix.from_json(obj)
    assert m.permute(fixtures.value("transfer", "basis_permutation")) == fixtures.matrix("transfer", "alpha")


def test_control_forget_radius(capsys, tmp_path):
    src, geo = tmp_path / "p.json", tmp_path / "g.json"
    src.write_text(json.dumps({"form": "quadratic", "parity": 0,
                               "matrix": RingMatrix.parse([["1-z1"]], 2).to_json()}))
    assert main(["control", "--k", "4", "--x0", "0,0", "--input", str(src), "--out", str(geo)]) == 0
    assert json.loads(geo.read_text())["n2"] == 2
    code, out, _ = run(capsys, "radius", "--input", str(geo))
    assert json.loads(out)["radius_sq"] == "1/16"
    code, out, _ = run(capsys, "forget", "--delta-sq", "1/9", "--input", str(geo))
    assert code == 0 and json.loads(out)["rows"] == 16
    assert run(capsys, "forget", "--delta-sq", "1/20", "--input", str(geo))[0] == 2


def test_signature_verb(capsys, tmp_path):
    code, out, _ = run(capsys, "signature")
    assert json.loads(out) == {"signature": 8}
    src = tmp_path / "e.json"
    src.write_text(json.dumps(make_E8().to_json()))
    assert json.loads(run(capsys, "signature", "--input", str(src))[1])["signature"] == 8
    src.write_text(json.dumps({"form": "quadratic", "parity": 0, "matrix": make_psi_n(2).psi.to_json()}))
    assert run(capsys, "signature", "--input", str(src))[0] == 2
    assert json.loads(run(capsys, "signature", "--input", str(src), "--augment")[1])["signature"] == 0


def test_selftest_json(capsys):
    code, out, _ = run(capsys, "selftest", "--json")
    assert code == 0
    rows = json.loads(out)
    assert [r["id"] for r in rows] == ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"]
    assert all(r["passed"] for r in rows)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surgery_forms", "signature"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"signature": 8}
