import json

from graphcensus.cli import main


def run_cli(capsys, *argv):
    assert main(list(argv)) == 0
    return capsys.readouterr().out


def test_exact_verb(capsys):
    out = run_cli(capsys, "exact", "--kind", "multi", "--n", "3", "--m", "3", "--family", "c3")
    data = json.loads(out)
    assert data == {"value_numerator": "48", "value_denominator": "1"}


def test_exact_expected_and_t(capsys):
    out = run_cli(
        capsys, "exact", "--kind", "multi", "--n", "2", "--m", "1",
        "--family", "edge", "--expected",
    )
    assert json.loads(out) == {"value_numerator": "1", "value_denominator": "2"}
    out = run_cli(
        capsys, "exact", "--kind", "multi", "--n", "2", "--m", "1",
        "--family", "edge", "--t", "0",
    )
    assert json.loads(out)["value_numerator"] == "2"


def test_exact_weighted_total(capsys):
    out = run_cli(
        capsys, "exact", "--n", "2", "--m", "1", "--delta", "finite:1,1",
    )
    assert json.loads(out)["value_numerator"] == "2"


def test_oracle_verb(capsys):
    out = run_cli(capsys, "oracle", "--n", "2", "--m", "1", "--family", "loop")
    data = json.loads(out)
    assert data["by_t"] == {"0": "2", "1": "2"}
    assert data["total"] == "4"


def test_sample_verb(capsys, tmp_path):
    path = tmp_path / "hosts.jsonl"
    assert main([
        "sample", "--kind", "multi", "--n", "3", "--m", "2",
        "--seed", "1", "--count", "3", "--out", str(path),
    ]) == 0
    lines = path.read_text().strip().split("\n")
    assert len(lines) == 3
    for line in lines:
        data = json.loads(line)
        assert data["kind"] == "multigraph" and data["n"] == 3 and len(data["edges"]) == 2


def test_sample_weighted(capsys):
    out = run_cli(
        capsys, "sample", "--n", "2", "--m", "1", "--delta", "finite:1,1",
        "--seed", "3", "--count", "4",
    )
    for line in out.strip().split("\n"):
        edges = json.loads(line)["edges"]
        assert edges[0][0] != edges[0][1]  # no loops under 1+x


def test_predict_verb(capsys):
    out = run_cli(capsys, "predict", "--theorem", "lambda-simple", "--shape", "c3", "--c", "1/2")
    data = json.loads(out)
    assert data["value"] == {"numerator": 1, "denominator": 6}
    assert data["formula_id"] == "poisson-strictly-balanced-simple"
    out = run_cli(
        capsys, "predict", "--theorem", "cycles-finite", "--l", "3",
        "--n", "3000", "--m", "2250", "--delta", "finite:1,1,1,1",
    )
    data = json.loads(out)
    assert 0.2 < data["value"] < 0.3
    assert data["convention"] == "half"


def test_experiment_run_and_sweep(tmp_path):
    cfg = {
        "model": "uniform-multi",
        "n": 20,
        "m_rule": {"c": 0.5, "alpha": 1.0},
        "pattern": "loop",
        "replicates": 200,
        "seed": 6,
        "workers": 1,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "report.json"
    assert main(["experiment", "run", "--config", str(cfg_path), "--out", str(out_path)]) == 0
    report = json.loads(out_path.read_text())
    assert report["replicates"] == 200
    csv_path = tmp_path / "report.csv"
    assert main([
        "experiment", "sweep", "--config", str(cfg_path),
        "--sizes", "10,20", "--out", str(csv_path),
    ]) == 0
    lines = csv_path.read_text().strip().split("\n")
    assert len(lines) == 3


def test_graph_json_pattern(capsys):
    shape_json = '{"kind": "multigraph", "n": 2, "edges": [[1, 2]]}'
    out = run_cli(capsys, "exact", "--n", "2", "--m", "1", "--family", shape_json)
    assert json.loads(out)["value_numerator"] == "2"
