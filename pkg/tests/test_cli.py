"""Command-line interface: document schemas, exit codes, grids, and
byte-level determinism."""

import io
import json
import sys

import pytest

from qpl.cli import RunSpec, main


def run_cli(argv):
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = main(argv)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def run_json(argv):
    code, out = run_cli(argv)
    return code, json.loads(out)


def test_bernoulli_exact():
    code, doc = run_json(["bernoulli", "--n", "4"])
    assert code == 0
    assert doc["schema"] == "qpl/1"
    assert doc["value"] == "-1/30"
    assert doc["precision"] == "exact"


def test_bernoulli_chi_requires_p():
    with pytest.raises(SystemExit) as info:
        run_cli(["bernoulli", "--n", "2", "--chi", "omega^2"])
    assert info.value.code == 2


def test_qbernoulli_kinds():
    code, doc = run_json(["qbernoulli", "--p", "5", "--n", "2"])
    assert code == 0
    assert doc["kind"] == "carlitz"
    assert doc["params"]["q_exact"] == "6"
    assert isinstance(doc["value"]["digits"], list)
    code, doc = run_json(
        ["qbernoulli", "--p", "5", "--n", "3", "--r", "2", "--z", "1/2"])
    assert code == 0
    assert doc["kind"] == "multiple"


def test_lp_pole_is_an_error_document():
    code, doc = run_json(["lp", "--p", "5", "--chi", "omega^2", "--s", "1"])
    assert code == 1
    assert doc["error"]["type"] == "PoleError"


def test_lp_s_r_routes_to_near_pole():
    code, doc = run_json(["lp", "--p", "5", "--chi", "omega^2", "--s", "r",
                          "--convention", "carlitz"])
    code2, doc2 = run_json(["lp-at-r", "--p", "5", "--chi", "omega^2",
                            "--convention", "carlitz"])
    assert code == code2 == 0
    assert doc["converged"] is True
    assert doc["value"] == doc2["value"]
    # The default convention's series does not converge at s = r.
    code, doc = run_json(["lp", "--p", "5", "--chi", "omega^2", "--s", "r"])
    assert code == 1
    assert doc["error"]["type"] == "DivergenceDetected"


def test_lp_table_csv():
    code, out = run_cli(["lp-table", "--p", "5", "--chi", "omega^2",
                         "--n-max", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,q,prec,r,chi,z,n,valuation,digits,value"
    assert len(lines) == 5
    assert lines[1].startswith("5,6,12,1,omega^2,0,0,")
    again = run_cli(["lp-table", "--p", "5", "--chi", "omega^2",
                     "--n-max", "3"])[1]
    assert again == out


def test_kummer_classical():
    code, doc = run_json(["kummer-verify", "--theorem", "classical",
                          "--p", "5", "--n", "2", "--c", "4", "--k", "1"])
    assert code == 0
    assert (doc["passed"], doc["failed"], doc["inconclusive"]) == (1, 0, 0)
    assert doc["reports"][0]["witness"] == {"fraction": "-1/63"}


def test_kummer_single_cell():
    code, doc = run_json(["kummer-verify", "--theorem", "53", "--p", "5",
                          "--chi", "omega^2", "--n-list", "1,2,3",
                          "--c", "4", "--k", "1", "--z", "5"])
    assert code == 0
    assert (doc["total"], doc["passed"]) == (6, 6)


def test_kummer_grid_counts():
    expected = {
        "53": (240, 200, 40, 0),
        "54": (16, 2, 14, 0),
        "binop": (240, 200, 40, 0),
    }
    for theorem, counts in expected.items():
        code, doc = run_json(["kummer-verify", "--theorem", theorem,
                              "--grid", "default", "--p", "5"])
        assert code == 3
        got = (doc["total"], doc["passed"], doc["failed"],
               doc["inconclusive"])
        assert got == counts, theorem


def test_kummer_grid_parallel_identical():
    base = run_cli(["kummer-verify", "--theorem", "54", "--grid", "default",
                    "--p", "5"])
    parallel = run_cli(["kummer-verify", "--theorem", "54", "--grid",
                        "default", "--p", "5", "--jobs", "2"])
    assert base == parallel


def test_kummer_usage_errors():
    with pytest.raises(SystemExit) as info:
        run_cli(["kummer-verify", "--theorem", "53", "--p", "5"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        run_cli(["kummer-verify", "--grid", "default", "--p", "5"])
    assert info.value.code == 2


def test_oracle_certify():
    code, doc = run_json(["oracle-certify", "--r-max", "1"])
    assert code == 0
    assert doc["certificate"]["normalization"] == "n+r"
    assert doc["certificate"]["single_beta"] == "pure_sum"
    code, doc = run_json(["oracle-certify", "--r-max", "3"])
    assert code == 1
    assert doc["error"]["type"] == "NoConsistentNormalization"
    assert len(doc["error"]["residuals"]) == 4


def test_identity_check():
    code, doc = run_json(["identity-check", "--cases", "40", "--seed", "3"])
    assert code == 0
    assert doc["failures"] == 0
    assert [s["name"] for s in doc["suites"]] == [
        "teichmuller", "logexp", "qpow", "precision", "operators"]
    assert all(s["cases"] == 40 for s in doc["suites"])
    again = run_cli(["identity-check", "--cases", "40", "--seed", "3"])[1]
    assert json.loads(again) == doc


def test_precision_env(monkeypatch):
    monkeypatch.setenv("QPL_PRECISION", "9")
    code, doc = run_json(["qbernoulli", "--p", "5", "--n", "1"])
    assert code == 0
    assert doc["params"]["prec"] == 9


def test_runspec_round_trip():
    spec = RunSpec(subcommand="kummer-verify", p=5, theorem="53",
                   chi="omega^2", n_list=(1, 2, 3), c=4, k=1, z="5")
    assert RunSpec.from_dict(spec.to_dict()) == spec
