import json

import pytest

from leetile.cli import main

ACCEPT_ARGS = ["verify", "--group", "Z13", "--n", "2", "--t", "0;1;12;5;8"]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, _ = run(capsys, argv + ["--json"])
    return code, json.loads(out)


def test_sphere(capsys):
    code, out, _ = run(capsys, ["sphere", "--n", "3", "--r", "2"])
    assert code == 0
    assert out.strip() == "25"


def test_sphere_list(capsys):
    code, out, _ = run(capsys, ["sphere", "--n", "1", "--r", "2", "--list"])
    assert code == 0
    assert out.splitlines() == ["5", "-2", "-1", "0", "1", "2"]


def test_sphere_json(capsys):
    code, data = run_json(capsys, ["sphere", "--n", "2", "--r", "2", "--list"])
    assert code == 0
    assert data["size"] == 13
    assert len(data["points"]) == 13


def test_groups(capsys):
    code, out, _ = run(capsys, ["groups", "--order", "25"])
    assert code == 0
    assert out.splitlines() == ["Z25", "Z5xZ5"]


def test_verify_accept(capsys):
    code, out, _ = run(capsys, ACCEPT_ARGS)
    assert code == 0
    assert out.splitlines()[0] == "accept"


def test_verify_reject(capsys):
    code, out, _ = run(capsys, ["verify", "--group", "Z13", "--n", "2", "--t", "0;1;12;2;11"])
    assert code == 1
    assert "quadratic-identity" in out


def test_verify_json_round_trip(capsys):
    from leetile import VerificationReport

    code, data = run_json(capsys, ACCEPT_ARGS)
    assert code == 0
    report = VerificationReport.from_dict(data)
    assert report.accepted


def test_verify_malformed_tuple(capsys):
    code, _, err = run(capsys, ["verify", "--group", "Z13", "--n", "2", "--t", "0;zz"])
    assert code == 2
    assert "error" in err


def test_verify_requires_one_mode(capsys):
    code, _, err = run(capsys, ["verify", "--r", "2"])
    assert code == 2


def test_verify_basis_file(capsys, tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("2\n13 -5\n0 1\n")
    code, out, _ = run(capsys, ["verify", "--basis", str(path), "--r", "2"])
    assert code == 0
    assert out.splitlines()[0] == "accept"


def test_verify_basis_reject(capsys, tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("2\n13 -1\n0 1\n")
    code, out, _ = run(capsys, ["verify", "--basis", str(path), "--r", "2"])
    assert code == 1
    assert "collision" in out


def test_profile_json(capsys):
    code, data = run_json(
        capsys, ["profile", "--group", "Z13", "--n", "2", "--t", "0;1;12;5;8", "--k", "2"]
    )
    assert code == 0
    assert data["profile"]["histogram"] == {"0": 0, "1": 5, "2": 4, "3": 4}
    assert data["identities"]["all_passed"]


def test_profile_k4_delta(capsys):
    code, data = run_json(
        capsys, ["profile", "--group", "Z13", "--n", "2", "--t", "0;1;12;5;8", "--k", "4"]
    )
    assert code == 0
    assert data["delta"] == {"n": 2, "delta": 0, "delta_raw": 4}


def test_profile_rejected_candidate(capsys):
    code, out, _ = run(
        capsys, ["profile", "--group", "Z13", "--n", "2", "--t", "0;1;12;2;11", "--k", "2"]
    )
    assert code == 1


def test_search_json(capsys):
    code, data = run_json(capsys, ["search", "--n", "2"])
    assert code == 0
    (outcome,) = data["outcomes"]
    assert outcome["group_spec"] == "Z13"
    assert outcome["exhausted"]
    assert outcome["solutions"] == [[[0], [1], [5], [8], [12]]]


def test_search_no_reduction(capsys):
    code, data = run_json(capsys, ["search", "--n", "1", "--no-reduction"])
    assert code == 0
    (outcome,) = data["outcomes"]
    assert len(outcome["solutions"]) == 2


def test_search_text_and_json_agree(capsys):
    code_t, out, _ = run(capsys, ["search", "--n", "2"])
    code_j, data = run_json(capsys, ["search", "--n", "2"])
    assert code_t == code_j == 0
    assert "Z13: 1 solution(s)" in out
    assert "0;1;5;8;12" in out
    assert len(data["outcomes"][0]["solutions"]) == 1


def test_certify_single_json(capsys):
    code, data = run_json(capsys, ["certify", "--n", "16"])
    assert code == 0
    assert data["evaluated_value"] == 12
    assert data["justification"] == "inequality"


def test_certify_range(capsys):
    code, out, _ = run(capsys, ["certify", "--range", "3:100"])
    assert code == 0
    assert "certified 98 of 98" in out


def test_certify_range_json_round_trip(capsys):
    from leetile import CertificationSummary

    code, data = run_json(capsys, ["certify", "--range", "3:20"])
    assert code == 0
    summary = CertificationSummary.from_dict(data)
    assert summary.complete


def test_certify_bad_range(capsys):
    code, _, err = run(capsys, ["certify", "--range", "3-100"])
    assert code == 2


def test_factor_bound_env(capsys, monkeypatch):
    # a semiprime with both factors above the bound squared is rejected
    monkeypatch.setenv("LEETILE_FACTOR_BOUND", "100")
    order = 1_000_003 * 1_000_033
    code, _, err = run(capsys, ["groups", "--order", str(order)])
    assert code == 2
    assert "too large to factor" in err
    monkeypatch.setenv("LEETILE_FACTOR_BOUND", "not-a-number")
    code, _, err = run(capsys, ["groups", "--order", "25"])
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
