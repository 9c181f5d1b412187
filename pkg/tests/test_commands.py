import json

import pytest

import config
import main
from src.commands import RunConfig


def run(argv, capsys):
    code = main.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog(capsys):
    code, out, _ = run(["catalog"], capsys)
    assert code == 0
    assert "affine_space" in [model["entry"] for model in json.loads(out)["models"]]


def test_compute_unordered(capsys):
    code, out, _ = run(["compute", "--catalog", "affine_space:1", "--punctures", "1",
                        "--space", "unordered", "--n-max", "2"], capsys)
    assert code == 0
    document = json.loads(out)
    assert {"n": 2, "i": 1, "p": 1, "q": 1, "dim": 2} in document["rows"]
    assert document["label"] == "Conf(affine_space:1 - 1 pts, n)"


def test_compute_csv_to_file(tmp_path, capsys):
    target = tmp_path / "out" / "table.csv"
    code, out, _ = run(["compute", "--catalog", "affine_space:1", "--punctures", "1", "--n-max", "2",
                        "--format", "csv", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert "2,1,1,1,2,pass" in target.read_text().splitlines()


def test_compute_from_model_file(tmp_path, capsys, line):
    path = tmp_path / "line.json"
    path.write_text(json.dumps(line.to_dict()))
    code, out, _ = run(["compute", "--model", str(path), "--n-max", "2", "--space", "ordered"], capsys)
    assert code == 0
    assert json.loads(out)["betti"]["2"] == [1, 1]


def test_malformed_model_file(tmp_path, capsys, elliptic_curve):
    document = elliptic_curve.to_dict()
    document["classes"][1]["degree"] = "zero"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(document))
    code, _, err = run(["compute", "--model", str(path), "--n-max", "1"], capsys)
    assert code == 2
    assert "classes[1].degree" in err


@pytest.mark.parametrize("argv", [
    ["compute", "--catalog", "no_such_model"],
    ["compute", "--catalog", "affine_space:1", "--n-max", "-1"],
    ["compute", "--catalog", "affine_space:1", "--punctures", "-2"],
    ["verify", "napolitano", "--catalog", "p2_minus_curve", "--n-max", "2"],
    ["verify", "splitting-hodge", "--catalog", "elliptic", "--n-max", "2"],
    ["verify", "theorem-c", "--catalog", "proj_line", "--punctures", "0", "--n-max", "2"],
])
def test_input_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("Error") or "\nError" in err


def test_missing_model_source():
    with pytest.raises(SystemExit):
        main.main(["compute", "--n-max", "2"])


def test_uncertified_model(capsys):
    code, _, err = run(["compute", "--catalog", "conf2_elliptic_open", "--n-max", "1"], capsys)
    assert code == 1
    assert "CertificateError" in err

    code, out, err = run(["compute", "--catalog", "conf2_elliptic_open", "--n-max", "1",
                          "--allow-uncertified"], capsys)
    assert code == 0
    assert json.loads(out)["warnings"]
    assert "Warning: uncertified" in err


def test_uncertified_table_csv_is_marked(capsys):
    code, out, err = run(["compute", "--catalog", "conf2_elliptic_open", "--n-max", "1",
                          "--allow-uncertified", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,i,p,q,dim,certificate"
    assert all(line.endswith(",none") for line in lines[1:])
    assert "Warning: uncertified" in err


@pytest.mark.parametrize("identity", [
    "splitting-hodge", "splitting-betti", "napolitano", "vakilwood", "compact-support",
])
def test_identities_on_the_line(identity, capsys):
    code, out, _ = run(["verify", identity, "--catalog", "affine_space:1", "--n-max", "3"], capsys)
    assert code == 0
    document = json.loads(out)
    assert document["pass"] is True
    assert document["identity"] == identity
    assert document["certificate"]["verdict"] == "pass"


def test_character_identity(capsys):
    code, out, _ = run(["verify", "theorem-c", "--catalog", "affine_space:1", "--punctures", "1",
                        "--n-max", "3"], capsys)
    assert code == 0
    assert json.loads(out)["verdicts"][0]["pass"] is True


def test_phi_after_rebasing(capsys):
    code, out, _ = run(["verify", "phi", "--catalog", "elliptic", "--punctures", "2",
                        "--n-max", "2"], capsys)
    assert code == 0
    document = json.loads(out)
    assert document["effective_base"]["name"] == "elliptic-pt"
    assert document["punctures"] == 1
    identities = [verdict["identity"] for verdict in document["verdicts"]]
    assert identities.count("phi-bijective") == identities.count("phi-commutes") == 3


def test_phi_on_a_compact_base(capsys):
    code, out, _ = run(["verify", "phi", "--catalog", "elliptic", "--n-max", "2"], capsys)
    assert code == 0
    document = json.loads(out)
    assert [verdict["identity"] for verdict in document["verdicts"]] == ["phi-bijective"] * 3
    assert any("compact" in warning for warning in document["warnings"])


def test_phi_on_a_noncompact_base(capsys):
    code, out, _ = run(["verify", "phi", "--catalog", "affine_space:1", "--n-max", "2"], capsys)
    assert code == 0
    identities = [verdict["identity"] for verdict in json.loads(out)["verdicts"]]
    assert identities.count("phi-commutes") == 3


def test_purity(capsys):
    code, out, _ = run(["verify", "purity", "--catalog", "affine_space:1", "--n-max", "3"], capsys)
    assert code == 0
    details = json.loads(out)["verdicts"][0]["details"]
    assert [row["weights"] for row in details if row["n"] == 3] == [[0], [2]]


def test_purity_with_weight_rule(capsys):
    argv = ["verify", "purity", "--catalog", "affine_space:1", "--n-max", "3"]
    code, out, _ = run(argv + ["--weights", "linear:2"], capsys)
    assert code == 0
    assert json.loads(out)["verdicts"][0]["inputs"]["weights"] == "linear:2"

    code, out, _ = run(argv + ["--weights", "floor:3/2"], capsys)
    assert code == 1
    failure = json.loads(out)["verdicts"][0]["first_failure"]
    assert (failure["i"], failure["weights"], failure["expected"]) == (1, [2], "1")


@pytest.mark.parametrize("extra", [
    ["purity", "--weights", "ceiling:2"],
    ["purity", "--weights", "floor:x"],
    ["splitting-hodge", "--weights", "linear:2"],
])
def test_bad_weight_rules(extra, capsys):
    code, _, err = run(["verify"] + extra + ["--catalog", "affine_space:1", "--n-max", "1"], capsys)
    assert code == 2
    assert "--weights" in err


def test_compute_writes_history(tmp_path, capsys):
    history = tmp_path / "run.json"
    summary = tmp_path / "run.txt"
    code, _, _ = run(["compute", "--catalog", "affine_space:1", "--n-max", "2",
                      "--history", str(history), "--history-summary", str(summary)], capsys)
    assert code == 0
    data = json.loads(history.read_text())
    assert data["status"]["n"] == 2
    assert len(data["history"]) == 3
    assert "== n = 2 ==" in summary.read_text()

    code, _, err = run(["compute", "--catalog", "affine_space:1", "--n-max", "1",
                        "--history", str(tmp_path / "missing" / "run.json")], capsys)
    assert code == 2
    assert "cannot export run history" in err


def test_verify_is_deterministic(capsys):
    argv = ["verify", "vakilwood", "--catalog", "torus:1", "--n-max", "2"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


@pytest.mark.slow
def test_splitting_on_the_elliptic_curve(capsys):
    code, out, _ = run(["verify", "splitting-hodge", "--catalog", "elliptic", "--punctures", "1",
                        "--n-max", "3"], capsys)
    assert code == 0
    assert json.loads(out)["punctures"] == 0


@pytest.mark.slow
@pytest.mark.parametrize("spec", ["curve_open:0,1", "curve_open:1,1", "torus:1", "p2_minus_curve:1"])
def test_splitting_across_the_catalog(spec, capsys):
    code, out, _ = run(["verify", "splitting-hodge", "--catalog", spec, "--n-max", "3"], capsys)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_default_truncations(line, elliptic_curve):
    assert RunConfig().verify_truncation(line) == config.TRUNCATION_GENUS_ZERO
    assert RunConfig().verify_truncation(elliptic_curve) == config.TRUNCATION_GENUS_POSITIVE
    assert RunConfig(n_max=2).verify_truncation(line) == 2
    assert RunConfig().compute_n_max() == config.DEFAULT_N_MAX
