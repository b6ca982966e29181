import json
import subprocess
import sys

import pytest

from smslab import A
from smslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_pipe_parse():
    cmd = [sys.executable, "-m", "smslab.cli"]
    ex = subprocess.run(cmd + ["example", "A", "--n", "2"], capture_output=True, text=True)
    assert ex.returncode == 0
    parsed = subprocess.run(cmd + ["parse"], input=ex.stdout, capture_output=True, text=True)
    assert parsed.returncode == 0 and parsed.stdout.startswith("algebra A2 {")
    again = subprocess.run(cmd + ["parse"], input=parsed.stdout, capture_output=True, text=True)
    assert again.stdout == parsed.stdout


def test_verify_range(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "r<n", "--algebra", "A2", "--range", "3..5")
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["verdict"] == "pass" and rep["checked"] == 6


def test_check_theorem1(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--theorem", "1", "--set", "quasi-simples",
                       "--algebra", "A2", "--out-dir", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    path = data["certificate_path"]
    code, out, _ = run(capsys, "replay", path)
    assert code == 0 and json.loads(out)["ok"]


def test_certify_theorem2(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--ladder", "theorem2", "--descent", "2,1",
                       "--algebra", "A2", "--out-dir", str(tmp_path))
    assert code == 0
    assert json.loads(out)["certified"]


def test_replay_rejects_mutation(capsys, tmp_path):
    run(capsys, "certify", "--ladder", "theorem1", "--algebra", "A2", "--out-dir", str(tmp_path))
    path = next(tmp_path.glob("*.json"))
    raw = bytearray(path.read_bytes())
    raw[len(raw) // 2] ^= 4
    bad = tmp_path / "bad.json"
    bad.write_bytes(bytes(raw))
    code, _, _ = run(capsys, "replay", str(bad))
    assert code == 1


def test_tube_exports(capsys):
    code, out, _ = run(capsys, "tube", "--algebra", "A2", "--depth", "4")
    data = json.loads(out)
    assert code == 0 and data["rank"] == 2
    assert sum("coords" in n for n in data["nodes"]) == 8
    code, out, _ = run(capsys, "tube", "--algebra", "kronecker", "--seed", "band:a b^-1:1",
                       "--depth", "4", "--format", "dot")
    assert code == 0 and out.count("style=dashed") == 4


def test_tube_not_quasi_serial(capsys):
    code, out, _ = run(capsys, "tube", "--algebra", "A2", "--seed", "S2")
    assert code == 1 and json.loads(out)["quasi_serial"] is False


def test_knit_local2_dot(capsys):
    code, out, _ = run(capsys, "knit", "--algebra", "local(2)", "--format", "dot")
    assert code == 0
    assert out.count("peripheries=2") == 1 and out.count("style=dashed") == 1


def test_sms_enumerate(capsys):
    code, out, _ = run(capsys, "sms", "enumerate", "--algebra", "nakayama(2,2)")
    assert code == 0 and len(json.loads(out)["systems"]) == 1


def test_semibrick_and_sthom(capsys):
    code, out, _ = run(capsys, "semibrick", "--algebra", "A2", "S1", "S2", "S3")
    assert code == 0 and json.loads(out)["is_semibrick"]
    code, _, _ = run(capsys, "semibrick", "--algebra", "A2", "S1", "S1")
    assert code == 1
    code, out, _ = run(capsys, "sthom", "--algebra", "A2", "S1", "tau:S1", "--format", "text")
    assert code == 0 and out.strip() == "0"


def test_closure_ell(capsys):
    code, out, _ = run(capsys, "closure", "--algebra", "nakayama(2,3)", "S1", "S2",
                       "--target", "omega:S1")
    assert code == 0 and json.loads(out)["ell"] == 2


def test_seed_module_json(capsys, tmp_path):
    f = tmp_path / "seed.json"
    f.write_text(json.dumps(A(2).simple(0).to_json()))
    code, out, _ = run(capsys, "tube", "--algebra", "A2", "--seed-module", str(f))
    assert code == 0 and json.loads(out)["seed_coords"] == [1, 1]


def test_field_env(capsys, monkeypatch):
    monkeypatch.setenv("SMSLAB_FIELD", "7")
    code, out, _ = run(capsys, "info", "--algebra", "A2")
    assert code == 0 and json.loads(out)["field"] == 7
    monkeypatch.setenv("SMSLAB_FIELD", "8")
    with pytest.raises(SystemExit) as e:
        main(["info", "--algebra", "A2"])
    assert e.value.code == 2


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--lemma", "nope", "--algebra", "A2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    bad = tmp_path / "bad.dsl"
    bad.write_text("algebra x { field 5; vertices 1 }")
    code, _, err = run(capsys, "info", "--algebra", str(bad))
    assert code == 2 and "DslSyntaxError" in err


def test_inconclusive_exit(capsys):
    code, _, err = run(capsys, "closure", "--algebra", "nakayama(3,3)", "S1", "S2",
                       "--sweep-cap", "1")
    assert code == 3 and "CapExceeded" in err
