import json

import pydot
import pytest

from walkslab.harness import ExperimentConfig, dumps_report, emit_walk_dot, histogram_csv, run_experiment, verify_witness
from walkslab.harness.cli import main
from walkslab.harness.experiments import ConfigError, pattern_search
from walkslab.ordinal import parse

P = parse

GOLDEN_TRACE = {
    "alpha": "w+1",
    "beta": "w^(2)",
    "upper": ["w^(2)", "w*2"],
    "step_maxima": ["w", "w"],
    "lower": ["w", "w"],
    "lower_set": ["w"],
    "weights": [2, 2],
    "rho1": 2,
}

# frozen from the first verified run: seed 7, 40 families of 2 + 2 below w^3
GOLDEN_PATTERN_K2 = {
    "00": {"frequency": 0.637614679, "hits": 139},
    "01": {"frequency": 0.128440367, "hits": 28},
    "10": {"frequency": 0.169724771, "hits": 37},
    "11": {"frequency": 0.064220183, "hits": 14},
}


def run_cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_cli_trace_golden(capsys):
    status, out, _ = run_cli(capsys, "trace", "--alpha", "w+1", "--beta", "w^(2)", "--format", "json")
    assert status == 0
    assert json.loads(out) == GOLDEN_TRACE


def test_cli_color_golden(capsys):
    status, out, _ = run_cli(capsys, "color", "o", "--alpha", "3", "--beta", "w*2")
    assert status == 0 and out == "0\n"
    for which in ("ostar", "c", "f"):
        status, out, _ = run_cli(capsys, "color", which, "--alpha", "3", "--beta", "w*2", "--format", "json")
        assert status == 0 and which in json.loads(out)


def test_cli_errors(capsys):
    status, _, err = run_cli(capsys, "trace", "--alpha", "w", "--beta", "3")
    assert status == 1 and "alpha must be below beta" in err
    status, _, err = run_cli(capsys, "rho1", "--alpha", "w+", "--beta", "3")
    assert status == 1
    status, _, _ = run_cli(capsys, "frobnicate")
    assert status == 2
    status, _, _ = run_cli(capsys, "trace", "--alpha", "1")
    assert status == 2
    status, _, err = run_cli(capsys, "experiment", "facts", "--size", "0")
    assert status == 1


def test_cli_other_commands(capsys, tmp_path):
    assert run_cli(capsys, "rho1", "--alpha", "w+1", "--beta", "w^(2)")[1] == "2\n"
    assert run_cli(capsys, "osc", "--alpha", "w^(w)+w", "--beta", "w^(w)*2+1")[1] == "1\n"
    status, out, _ = run_cli(capsys, "mu", "--alpha", "w+1", "--beta", "w^(2)", "--format", "json")
    assert status == 0 and list(json.loads(out)["mu"]) == ["w"]
    status, out, _ = run_cli(capsys, "neighborhood", "--alpha", "w", "--beta", "w")
    assert (status, out) == (0, "true\n")
    status, out, _ = run_cli(capsys, "tree-node", "--beta", "w^(2)", "--probes", "1,5,w+3")
    assert status == 0 and set(json.loads(out)["values"]) == {"1", "5", "w+3"}
    target = tmp_path / "walk.dot"
    assert run_cli(capsys, "dot", "--alpha", "w+1", "--beta", "w^(2)", "--out", str(target))[0] == 0
    assert target.read_text().startswith("digraph")


def test_cli_experiment_formats(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    status, _, _ = run_cli(capsys, "experiment", "osc", "--size", "30", "--seed", "2", "--out", str(out_json))
    assert status == 0
    report = json.loads(out_json.read_text())
    assert report["prng"] == "numpy.random.Philox"
    assert report["timing_ms"] is None
    status, out, _ = run_cli(capsys, "experiment", "osc", "--size", "30", "--seed", "2", "--format", "csv")
    assert status == 0 and out.splitlines()[0] == "table,value,count"
    status, out, _ = run_cli(capsys, "experiment", "square", "--size", "80", "--target", "2", "--format", "text")
    assert status == 0 and "exact_discreteness" in out


def test_cache_dir_is_invisible(capsys, tmp_path, monkeypatch):
    args = ("color", "o", "--alpha", "w+3", "--beta", "w^(2)*2+1")
    plain = run_cli(capsys, *args)
    monkeypatch.setenv("WALKSLAB_CACHE_DIR", str(tmp_path))
    first = run_cli(capsys, *args)
    second = run_cli(capsys, *args)
    assert plain == first == second
    assert (tmp_path / "values.json").exists()


def test_dot_parses():
    text = emit_walk_dot(P("w+1"), P("w^(2)"))
    (graph,) = pydot.graph_from_dot_data(text)
    nodes = [n.get_name() for n in graph.get_nodes() if n.get_name()[1:].isdigit()]
    assert nodes == ["n0", "n1"]
    edges = graph.get_edges()
    assert [(e.get_source(), e.get_destination()) for e in edges] == [("n0", "n1")]
    assert "w^(2)" in graph.get_node("n0")[0].get_label()
    assert "arrives at w+1" in graph.get_node("n1")[0].get_label()


def test_dot_rejects_bad_pairs():
    with pytest.raises(ValueError):
        emit_walk_dot(P("w"), P("w"))


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="nope")
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="pattern_search", k=2, l=1, pi=[0, 1])
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="osc_coverage", universe="1")


@pytest.mark.parametrize("kind", ["fact_suite", "osc_coverage", "pattern_search", "tree_stats", "square_discrete"])
def test_reports_deterministic(kind):
    size = {"fact_suite": 300, "osc_coverage": 40, "pattern_search": 20, "tree_stats": 30, "square_discrete": 150}[kind]
    runs = [
        dumps_report(run_experiment(ExperimentConfig(kind=kind, size=size, seed=4, k=2, l=2, pi=[0, 1], workers=w)))
        for w in (1, 1, 2)
    ]
    assert runs[0] == runs[1] == runs[2]
    report = json.loads(runs[0])
    assert report["schema_version"] == "1.0"
    assert all(v["status"] == "pass" for v in report["verdicts"])


def test_seed_changes_samples_not_verdicts():
    a = run_experiment(ExperimentConfig(kind="fact_suite", size=200, seed=1))
    b = run_experiment(ExperimentConfig(kind="fact_suite", size=200, seed=2))
    assert [v["status"] for v in a["verdicts"]] == [v["status"] for v in b["verdicts"]]
    assert a["statistics"] != b["statistics"] or a["witnesses"] != b["witnesses"]


def test_pattern_golden():
    report = run_experiment(
        ExperimentConfig(kind="pattern_search", universe="w^(3)", size=40, seed=7, k=2, l=2, pi=[0, 1])
    )
    assert report["statistics"]["patterns"] == GOLDEN_PATTERN_K2
    assert all(verify_witness(w) for w in report["witnesses"])


def test_pattern_edge_cases():
    assert pattern_search([], [], [0], [[0]]) == {"admissible_pairs": 0, "patterns": {"0": {"hits": 0, "frequency": 0.0}}, "witnesses": []}
    report = run_experiment(ExperimentConfig(kind="pattern_search", size=30, seed=3, chi=[0]))
    for w in report["witnesses"]:
        assert w["chi"] == [0] and verify_witness(w)


def test_witness_verification_rejects_forgery():
    good = {"kind": "osc", "alpha": "w^(w)+w", "beta": "w^(w)*2+1", "osc": 1, "osc_star": 0}
    assert verify_witness(good)
    assert not verify_witness(dict(good, osc=2))
    with pytest.raises(ValueError):
        verify_witness({"kind": "mystery"})


def test_histogram_csv_requires_tables():
    with pytest.raises(ValueError):
        histogram_csv({"statistics": {}})


def test_timing_opt_in():
    report = run_experiment(ExperimentConfig(kind="osc_coverage", size=20, record_timing=True))
    assert isinstance(report["timing_ms"], (int, float))
    assert "workers" not in report["config"]
