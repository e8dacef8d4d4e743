import json

import numpy as np
import pytest

from otk.catalog import example_pair_plane_rotation, regular_diag_pair, scenario_ids
from otk.cli import main
from otk.matcore import save_matrix
from otk.properties import PropertyResult
from otk.schaffer import DilationWindow, halmos_block, verify_power_dilation


@pytest.fixture
def mats(tmp_path):
    """Matrix files the subcommands exercise."""
    T, A = example_pair_plane_rotation()
    D1, D2 = regular_diag_pair()
    paths = {}
    for name, M in {
        "T": T,
        "A": A,
        "D1": D1,
        "D2": D2,
        "TU": halmos_block(T).block,
        "AU": halmos_block(A).block,
        "negI": -np.eye(2, dtype=complex),
        "eye": np.eye(2, dtype=complex),
    }.items():
        p = tmp_path / f"{name}.json"
        save_matrix(str(p), M)
        paths[name] = str(p)
    return paths


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_check_orth_true_exit_zero(mats, capsys):
    code, rep = run(capsys, ["check", "orth", mats["T"], mats["A"], "--assert"])
    assert code == 0
    assert rep["command"] == "check orth"
    assert rep["result"]["orthogonal"] == "true"
    assert set(rep["inputs"]) == {"left", "right"}


def test_check_halmos_false_exit_two(mats, capsys):
    code, rep = run(capsys, ["check", "halmos", mats["T"], mats["A"], "--assert"])
    assert code == 2
    assert rep["result"]["epsilon_min"] == pytest.approx(0.5, abs=1e-4)


def test_check_approx_band_exits(mats, capsys):
    code, _ = run(capsys, ["check", "approx", mats["TU"], mats["AU"], "--eps", "0.6", "--assert"])
    assert code == 0
    code, _ = run(capsys, ["check", "approx", mats["TU"], mats["AU"], "--eps", "0.25", "--assert"])
    assert code == 2
    # inside the undecided band around epsilon_min = 1/2
    eps = repr(0.5 - 1.5e-7)
    code, rep = run(capsys, ["check", "approx", mats["TU"], mats["AU"], "--eps", eps, "--assert"])
    assert code == 3
    assert rep["result"]["verdict"] == "inconclusive"


def test_check_approx_requires_eps(mats, capsys):
    assert main(["check", "approx", mats["T"], mats["A"]]) == 1


def test_check_brehmer_and_regular(mats, capsys):
    code, rep = run(capsys, ["check", "brehmer", mats["D1"], mats["D2"], "--assert"])
    assert code == 0 and rep["result"]["passes"] is True
    code, rep = run(capsys, ["check", "regular", mats["D1"], mats["D2"], "--assert"])
    assert code == 0 and rep["result"]["predicate"] is True


def test_check_st_criterion(mats, capsys):
    code, rep = run(capsys, ["check", "st-criterion", mats["T"], mats["negI"], "--assert"])
    # ||T|| = 1/sqrt(2) sits exactly on the threshold 1 - 2||Ty||^2 = 0
    assert code == 0
    assert rep["result"]["method"] == "st-criterion"


def test_check_arity_and_missing_file_errors(mats, capsys):
    assert main(["check", "orth", mats["T"]]) == 1
    assert main(["check", "orth", mats["T"], str(mats["T"]) + ".nope"]) == 1


def test_usage_error_exits_one(capsys):
    assert main(["check", "bogus-kind", "x.json", "y.json"]) == 1
    assert main(["not-a-command"]) == 1


def test_byte_stable_reports(mats, capsys):
    main(["check", "orth", mats["T"], mats["A"]])
    first = capsys.readouterr().out
    main(["check", "orth", mats["T"], mats["A"]])
    second = capsys.readouterr().out
    assert first == second


def test_json_out_duplicates_stdout(mats, capsys, tmp_path):
    out = tmp_path / "report.json"
    main(["check", "orth", mats["T"], mats["A"], "--json", str(out)])
    stdout = capsys.readouterr().out
    assert out.read_text() == stdout


def test_seed_resolution(mats, capsys, monkeypatch):
    monkeypatch.setenv("OTK_SEED", "99")
    _, rep = run(capsys, ["check", "orth", mats["T"], mats["A"]])
    assert rep["seed"] == 99
    _, rep = run(capsys, ["check", "orth", mats["T"], mats["A"], "--seed", "5"])
    assert rep["seed"] == 5
    monkeypatch.delenv("OTK_SEED")
    _, rep = run(capsys, ["check", "orth", mats["T"], mats["A"]])
    assert rep["seed"] == 7


def test_dilate_schaffer_round_trip(mats, capsys, tmp_path):
    out = tmp_path / "window.json"
    code, rep = run(capsys, ["dilate", "schaffer", mats["T"], "--slots", "8", "--out", str(out), "--assert"])
    assert code == 0
    assert rep["verify"]["passed"] is True
    # reload the exported window and verify: residuals must match exactly
    w = DilationWindow.from_json_dict(json.loads(out.read_text()))
    T, _ = example_pair_plane_rotation()
    rerun = verify_power_dilation(w, T, tol=1e-9)
    assert list(rerun.residuals) == rep["verify"]["residuals"]


def test_dilate_hat_rejects_non_orthogonal(mats, capsys):
    assert main(["dilate", "hat", mats["D1"], mats["D2"]]) == 1


def test_dilate_hat_on_orthogonal_pair(mats, capsys):
    code, rep = run(capsys, ["dilate", "hat", mats["T"], mats["A"], "--assert"])
    assert code == 0
    val = rep["witness"]["value"]
    assert abs(complex(val[0], val[1])) <= 1e-7


def test_dilate_ando_bundle(mats, capsys):
    code, rep = run(capsys, ["dilate", "ando", mats["T"], mats["negI"], "--slots", "9", "--assert"])
    assert code == 0
    assert rep["bundle"]["passed"] is True
    assert rep["bundle"]["witness"]["beta"] == pytest.approx(-1.0)


def test_dilate_rho_example(mats, capsys, tmp_path):
    out = tmp_path / "rho.json"
    code, rep = run(capsys, ["dilate", "rho-example", "--rho", "2", "--slots", "16", "--out", str(out), "--assert"])
    assert code == 0
    assert rep["bundle"]["report"]["passed"] is True
    assert out.exists()


def test_dilate_forced_and_generalized(mats, capsys):
    code, rep = run(capsys, ["dilate", "forced", mats["T"], mats["T"], "--k0", "1", "--assert"])
    assert code == 0
    code, rep = run(capsys, ["dilate", "generalized", mats["T"], "--slots", "6", "--assert"])
    assert code == 0
    assert rep["verify"]["passed"] is True


def test_reproduce_every_scenario(capsys):
    for sid in scenario_ids():
        code, rep = run(capsys, ["reproduce", sid, "--assert"])
        assert code == 0, sid
        assert rep["result"]["passed"] is True
        assert all(c["passed"] for c in rep["result"]["checks"])


def test_reproduce_unknown_id_errors(capsys):
    assert main(["reproduce", "no-such-example"]) == 1


def test_numrange_outputs(mats, capsys, tmp_path):
    csv = tmp_path / "poly.csv"
    svg = tmp_path / "poly.svg"
    code, rep = run(capsys, ["numrange", mats["eye"], "--csv", str(csv), "--svg", str(svg)])
    assert code == 0
    assert rep["degenerate"] is True and rep["degenerate_kind"] == "point"
    assert csv.read_text().startswith("angle,re,im")
    assert "<svg" in svg.read_text()


def test_numrange_maximal_containment(mats, capsys):
    code, rep = run(capsys, ["numrange", mats["D2"], "--maximal"])
    assert code == 0
    assert rep["kind"] == "maximal"
    assert rep["contained_in_classical"] is True


def test_numrange_zero_membership_assert(mats, capsys):
    # W(I) = {1}: zero outside -> exit 2 under --assert
    assert main(["numrange", mats["eye"], "--assert"]) == 2


def test_property_run_small(capsys):
    code, rep = run(capsys, ["property-run", "rho", "--trials", "2", "--assert"])
    assert code == 0
    assert rep["all_passed"] is True
    names = {r["name"] for r in rep["results"]}
    assert "first-power-identity" in names


def test_property_run_bad_dims(capsys):
    assert main(["property-run", "bj", "--dims", "0,2"]) == 1


def test_property_failure_dumps_inputs(capsys, tmp_path, monkeypatch):
    fake = PropertyResult(
        name="always-fails",
        trials=1,
        passes=0,
        failures=[
            {
                "trial": 0,
                "message": "synthetic failure",
                "inputs": {"T": {"rows": 1, "cols": 1, "data": [[1.0, 0.0]]}},
            }
        ],
    )
    monkeypatch.setattr("otk.cli.run_suite", lambda *a, **k: [fake])
    dump = tmp_path / "dumps"
    code, rep = run(
        capsys,
        ["property-run", "bj", "--trials", "1", "--dump-dir", str(dump), "--assert"],
    )
    assert code == 2
    files = list(dump.glob("*.json"))
    assert len(files) == 1
    assert json.loads(files[0].read_text())["rows"] == 1
    assert rep["dumped_inputs"] == [str(files[0])]
