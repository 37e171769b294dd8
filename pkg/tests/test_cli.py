import json
import logging
import os

import pytest
from click.testing import CliRunner

from genus2_torsion import curve, errors, weil
from genus2_torsion.cli import cli

current_path = os.path.dirname(os.path.realpath(__file__))
X5_PLUS_1 = os.path.join(current_path, "data", "curve_x5_plus_1.json")


def data_file(name):
    return os.path.join(current_path, "data", name)


@pytest.fixture
def runner():
    return CliRunner()


def invoke_json(runner, *args):
    result = runner.invoke(cli, ["--json", *args])
    return result, json.loads(result.output)


@pytest.mark.parametrize(
    "args, exit_code, shapes",
    [
        # (X² + X + 3)² at ℓ = 5
        (["--p", "3", "--s", "2", "--t", "7", "--ell", "5"], 0, ["bicyclic"]),
        (["--p", "3", "--s", "2", "--t", "7", "--ell", "5", "--m", "4"], 0, ["full"]),
        # ℓ = 5 found by factoring P(1) = 10
        (["--p", "3", "--s", "0", "--t", "0"], 0, ["cyclic"]),
        # two distinct quadratic factors
        (["--p", "5", "--s", "0", "--t", "1"], 2, ["inconclusive"]),
        # 3 | 7 - 1 and 3 ∤ 4τ
        (["--p", "7", "--s", "0", "--t", "1", "--ell", "3"], 2, []),
        (["--p", "6", "--s", "0", "--t", "0"], 1, []),
    ],
)
def test_analyze(runner, args, exit_code, shapes):
    result, data = invoke_json(runner, "analyze", *args)
    assert result.exit_code == exit_code
    assert data["exit_code"] == exit_code
    assert [entry["shape"] for entry in data["torsion"]] == shapes
    assert data["request"]["mode"] == "analyze"


def test_analyze_reports(runner):
    _, data = invoke_json(runner, "analyze", "--p", "3", "--s", "0", "--t", "0")
    assert data["weil"]["order"] == 10
    assert data["weil"]["four_tau"] == 24
    assert data["checks"]["two_torsion_field"] == {"degree": 4}
    _, data = invoke_json(runner, "analyze", "--p", "6", "--s", "0", "--t", "0")
    assert data["error"]["type"] == "NotPrime"
    _, data = invoke_json(runner, "analyze", "--p", "7", "--s", "0", "--t", "1", "--ell", "3")
    assert data["warnings"]


@pytest.mark.parametrize(
    "args, exit_code, case",
    [
        (["--p", "3", "--s", "0", "--t", "3", "--ell", "13"], 0, "x4+qx2+q2"),
        (["--p", "3", "--s", "0", "--t", "0"], 0, "x4+q2"),
        # ordinary
        (["--p", "3", "--s", "2", "--t", "7"], 0, None),
        # 5 | P(1) while q = 19² ≡ 1 mod 5
        (["--p", "19", "--a", "2", "--s", "-19", "--t", "361", "--ell", "5"], 3, "trace-sqrt-q"),
        # ℓ = 2 is excluded for X⁴ + q²
        (["--p", "3", "--s", "0", "--t", "0", "--ell", "2"], 0, "x4+q2"),
    ],
)
def test_ss(runner, args, exit_code, case):
    result, data = invoke_json(runner, "ss", *args)
    assert result.exit_code == exit_code
    assert data["supersingular"]["case"] == case


@pytest.mark.parametrize(
    "args, label",
    [
        (["--p", "3", "--s", "0", "--t", "3"], "II"),
        (["--p", "3", "--s", "0", "--t", "0", "--ell", "5"], "I"),
        (["--p", "7", "--a", "2", "--s", "14", "--t", "147"], "IX"),
        (["--p", "3", "--s", "2", "--t", "7"], None),
    ],
)
def test_ss_case_label(runner, args, label):
    _, data = invoke_json(runner, "ss", *args)
    assert data["supersingular"]["label"] == label


def test_ss_bounds(runner):
    _, data = invoke_json(runner, "ss", "--p", "3", "--s", "0", "--t", "3", "--ell", "13")
    assert data["supersingular"]["bounds"] == {"exponent": 6, "rank_bound": 2}
    assert data["supersingular"]["exponent"] == 6
    _, data = invoke_json(runner, "ss", "--p", "3", "--s", "0", "--t", "0", "--ell", "2")
    assert data["supersingular"]["exceptional"]
    assert "bounds" not in data["supersingular"]


def test_curve_verify(runner):
    result, data = invoke_json(
        runner, "curve", "--file", X5_PLUS_1, "--ell", "5", "--max-ext", "4"
    )
    assert result.exit_code == 0
    assert data["agreement"] == "agree"
    assert [entry["oracle_rank"] for entry in data["torsion"]] == [1, 2, 1, 4]
    assert all(entry["agreement"] == "agree" for entry in data["torsion"])
    assert data["oracle"]["structure"] == [10]
    assert data["oracle"]["kappa"] == {"5": 4}
    assert data["checks"]["two_torsion_field"] == {"degree": 4, "splitting": 4}


@pytest.mark.parametrize(
    "name, error",
    [
        ("curve_singular.json", "Singular"),
        ("curve_malformed.json", "CurveFileError"),
        ("curve_missing.json", "CurveFileError"),
    ],
)
def test_curve_verify_bad_file(runner, name, error):
    result, data = invoke_json(runner, "curve", "--file", data_file(name))
    assert result.exit_code == 1
    assert data["error"]["type"] == error


def test_curve_verify_mismatch(runner, mocker):
    torsion = mocker.patch("genus2_torsion.report.ell_torsion")
    torsion.return_value.rank = 3
    torsion.return_value.mode = "enumeration"
    result, data = invoke_json(
        runner, "curve", "--file", X5_PLUS_1, "--ell", "5"
    )
    assert result.exit_code == 3
    assert data["agreement"] == "mismatch"
    assert data["torsion"][0]["agreement"] == "mismatch"


def test_curve_verify_refuted_kappa(runner, mocker):
    mocker.patch(
        "genus2_torsion.report.full_embedding_degree_measured",
        side_effect=errors.ExceedsCap("5-torsion not full over F_81"),
    )
    result, data = invoke_json(
        runner, "curve", "--file", X5_PLUS_1, "--ell", "5", "--max-ext", "4"
    )
    assert result.exit_code == 3
    assert data["agreement"] == "mismatch"
    assert data["oracle"]["kappa"] == {"5": None}
    assert data["torsion"][-1]["oracle_rank"] == 4


def test_pairing(runner):
    result, data = invoke_json(
        runner, "pairing", "--file", X5_PLUS_1, "--ell", "5", "--degree", "4"
    )
    assert result.exit_code == 0
    pairing = data["pairing"]
    assert pairing["nondegenerate"]
    assert pairing["rank"] == 4
    assert pairing["bilinear"] and pairing["antisymmetric"]
    assert pairing["eigenspace"] == {"u_rank": 1, "v_rank": 1, "sum_rank": 2, "direct_sum": True}
    assert "certificate" in pairing


def test_pairing_without_roots_of_unity(runner):
    result, data = invoke_json(
        runner, "pairing", "--file", X5_PLUS_1, "--ell", "5", "--degree", "1"
    )
    assert result.exit_code == 1
    assert data["error"]["type"] == "MuEllNotInField"


def test_search_writes_curves(runner, tmp_path):
    out = tmp_path / "curves"
    result, data = invoke_json(
        runner, "search", "--p", "3", "--s", "2", "--t", "7", "--out", str(out)
    )
    assert result.exit_code == 0
    assert len(data["curves"]) == 1
    loaded = curve.curve_load(str(out / "curve-0.json"))
    assert curve.weil_polynomial_of(loaded) == weil.WeilPolynomial(3, 2, 7)


def test_search_without_hits(runner, mocker):
    search = mocker.patch("genus2_torsion.report.search_curves", return_value=[])
    result, data = invoke_json(runner, "search", "--p", "3", "--s", "2", "--t", "7")
    assert result.exit_code == 0
    assert data["curves"] == []
    assert data["warnings"]
    search.assert_called_once_with(3, weil.WeilPolynomial(3, 2, 7), 1)


def test_example9(runner):
    result, data = invoke_json(runner, "example9")
    assert result.exit_code == 0
    assert data["agreement"] == "agree"
    assert all(check["ok"] for check in data["checks"].values())
    assert data["oracle"]["ranks"] == [2, 2, 2, 4]
    assert data["torsion"][0]["kappa"]["exact"] == 4
    assert data["pairing"]["nondegenerate"]


def test_example9_without_curve(runner, mocker):
    mocker.patch("genus2_torsion.report.search_curves", return_value=[])
    result, data = invoke_json(runner, "example9")
    assert result.exit_code == 3
    assert data["checks"]["curve_found"]["ok"] is False


def test_table_output(runner):
    result = runner.invoke(cli, ["analyze", "--p", "3", "--s", "2", "--t", "7", "--ell", "5"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert any(line.startswith("torsion[0].shape") and "bicyclic" in line for line in lines)
    assert any(line.startswith("exit_code") for line in lines)


@pytest.mark.parametrize(
    "flags, level",
    [
        ([], logging.WARNING),
        (["-v"], logging.DEBUG),
        (["-vv"], logging.G2_TRACE),
        (["-vvv"], logging.G2_TRACE),
    ],
)
def test_verbosity(runner, flags, level):
    runner.invoke(cli, [*flags, "ss", "--p", "3", "--s", "2", "--t", "7"])
    assert logging.getLogger("genus2_torsion").level == level
    logging.getLogger("genus2_torsion").setLevel(logging.WARNING)
