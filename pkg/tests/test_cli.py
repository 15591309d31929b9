import json
import subprocess
import sys

import jsonschema
import pytest

from braidlab.cli import main
from braidlab.params import dump_params, random_param_set
from braidlab.schemas import BY_COMMAND


@pytest.fixture
def files(tmp_path):
    paths = {}
    for N, extra in [(2, {}), (3, {}), (4, {"imaginary": True})]:
        path = tmp_path / f"p{N}.json"
        path.write_text(dump_params(random_param_set(N, 42, **extra)))
        paths[N] = str(path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    doc = json.loads(out) if out.strip() else None
    if doc is not None:
        jsonschema.validate(doc, BY_COMMAND[argv[0]])
    return code, doc, err


def test_gen_params(capsys):
    code, doc, _ = run(capsys, "gen-params", "--N", "3", "--seed", "1", "--boltzmann")
    assert code == 0 and doc["N"] == 3 and len(doc["entries"]) == 6


@pytest.mark.parametrize("kind", ["braid", "ybe"])
def test_check_braid(capsys, files, kind):
    code, doc, _ = run(capsys, "check", kind, "--params", files[3], "--theta", "0.3", "--theta2", "0.7")
    assert code == 0 and doc["passed"] and doc["residuals"]["scaled"] <= 1e-10


def test_check_unitarity(capsys, files):
    code, doc, _ = run(capsys, "check", "unitarity", "--params", files[4], "--theta", "1.7")
    assert code == 0
    code, doc, _ = run(capsys, "check", "unitarity", "--params", files[2], "--theta", "1.7")
    assert code == 1 and not doc["passed"]


def test_check_commute_and_projectors(capsys, files):
    code, doc, _ = run(capsys, "check", "commute", "--params", files[2], "--r", "3")
    assert code == 0 and doc["r"] == 3
    code, doc, _ = run(capsys, "check", "projectors", "--N", "5")
    assert code == 0 and doc["residuals"]["completeness"] == 0


def test_transfer(capsys, files):
    code, doc, _ = run(capsys, "transfer", "--params", files[2], "--r", "3", "--theta", "0.4", "--theta-im", "0.1")
    assert code == 0 and doc["dim"] == 8 and doc["theta"] == {"re": 0.4, "im": 0.1}


def test_spectrum_compare(capsys, files):
    code, doc, _ = run(capsys, "spectrum", "--params", files[2], "--r", "4", "--theta", "0.5", "--oracle", "--compare")
    assert code == 0 and doc["matched"] is True
    assert len(doc["values"]) == len(doc["oracle"]) == 16
    assert sum(rec["multiplicity"] for rec in doc["records"]) == 16


def test_census(capsys, files):
    code, doc, _ = run(capsys, "census", "--params", files[2], "--r", "5")
    assert code == 0 and doc["fermat_total"] == 6


@pytest.mark.parametrize("extra", [[], ["--conserved", "2"]])
def test_spin_chain(capsys, files, extra):
    code, doc, _ = run(capsys, "spin-chain", "--params", files[2], "--r", "3", *extra)
    assert code == 0 and doc["boundary"] == "closed" and doc["sites"] == 3


def test_spin_chain_open_conserved_is_usage_error(capsys, files):
    code, _, err = run(capsys, "spin-chain", "--params", files[2], "--r", "3", "--boundary", "open", "--conserved", "1")
    assert code == 2 and "closed" in err


def test_potential(capsys, files):
    code, doc, _ = run(capsys, "potential", "--params", files[3], "--theta", "0.3", "--lambda-re", "2")
    assert code == 0 and doc["checks"]["reconstruction_residual"] <= 1e-10


def test_potential_excluded_lambda(capsys, files):
    code, doc, err = run(capsys, "potential", "--params", files[3], "--theta", "0.3", "--lambda-re", "1")
    assert code == 2 and doc is None
    assert "offending value (1+0j)" in err


def test_resource_error(capsys, files):
    code, doc, err = run(capsys, "transfer", "--params", files[2], "--r", "20", "--theta", "0.1")
    assert code == 3 and doc is None and "budget" in err


def test_bad_params_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"N": 2, "entries": [], "junk": 1}')
    code, _, err = run(capsys, "transfer", "--params", str(bad), "--r", "2", "--theta", "0.1")
    assert code == 2 and "unknown keys" in err


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["census", "--bogus"])
    assert info.value.code == 2


def test_deterministic_subprocess(files):
    argv = [sys.executable, "-m", "braidlab", "spectrum", "--params", files[3], "--r", "3", "--theta", "0.7"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["N"] == 3
