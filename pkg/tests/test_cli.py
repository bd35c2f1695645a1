import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from hypercover.__main__ import app
from hypercover.generators import (
    gen_fano,
    gen_projective,
    gen_random_regular_uniform,
    multiply_edges,
)
from hypercover.hypergraph import CoverPartition
from hypercover.io import format_hyg, read_hyg, read_levelling_sidecar, read_partition, write_hyg

runner = CliRunner()


@pytest.fixture
def no_config(tmp_path: Path) -> list:
    return ["--config-path", str(tmp_path / "absent.yaml")]


@pytest.fixture
def k4_file(tmp_path: Path) -> Path:
    path = tmp_path / "k4.hyg"
    path.write_text(
        "hyg 1\nvertices 4\nedge 1 0 1\nedge 1 0 2\nedge 1 0 3\n"
        "edge 1 1 2\nedge 1 1 3\nedge 1 2 3\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def triangle_file(write_text) -> Path:
    return write_text("k3.hyg", "hyg 1\nvertices 3\nedge 1 0 1\nedge 1 0 2\nedge 1 1 2\n")


def run(args, code=0):
    result = runner.invoke(app, [str(a) for a in args])
    assert result.exit_code == code, result.output
    return result


def run_json(args, code=0) -> dict:
    return json.loads(run(["--json", *args], code).output)


def test_version():
    assert "0.1.0" in run(["--version"]).output


def test_gen_writes_canonical_file(tmp_path, no_config):
    out = tmp_path / "fano.hyg"
    run(["gen", "fano", "-o", out, *no_config])
    assert out.read_text(encoding="utf-8") == format_hyg(gen_fano())


def test_gen_prints_to_stdout_when_quiet(no_config):
    result = run(["--quiet", "gen", "pg", "--t", 2, "--q", 3, *no_config])
    assert result.output == format_hyg(gen_projective(2, 3))


def test_gen_reports_missing_parameter(no_config):
    record = run_json(["gen", "cube", *no_config], code=2)
    assert record["status"] == "error"
    assert "--d" in record["results"]["error"]


def test_gen_transformer_reads_input(tmp_path, no_config):
    source = write_hyg(gen_fano(), tmp_path / "fano.hyg")
    out = tmp_path / "fano3.hyg"
    run(["gen", "multiply", "--input", source, "--s", 3, "-o", out, *no_config])
    assert read_hyg(out).is_regular(9)


def test_cover_then_verify(tmp_path, k4_file, no_config):
    partition = tmp_path / "k4.json"
    args = ["cover", k4_file, "--algo", "multigraph", "--k", 2, "-o", partition, *no_config]
    record = run_json(args)
    assert record["results"]["valid"] is True
    assert read_partition(partition).k == 2
    assert run_json(["verify", k4_file, partition, *no_config])["results"]["valid"] is True


def test_cover_below_threshold_exits_one(triangle_file, no_config):
    run(["cover", triangle_file, "--algo", "graph", "--k", 2, *no_config], code=1)


def test_cover_rejects_an_invalid_partition(monkeypatch, k4_file, no_config):
    def single_class(H, k):
        return CoverPartition(k, {inst: 0 for inst in H.instances()})

    monkeypatch.setattr("hypercover.__main__.cover_graph_k", single_class)
    record = run_json(["cover", k4_file, "--algo", "graph", "--k", 2, *no_config], code=1)
    assert record["status"] == "error"
    assert record["results"]["witness"] == {"class": 1, "vertex": 0}
    assert "valid" not in record["results"]


def test_cover_unknown_algorithm(k4_file, no_config):
    run(["cover", k4_file, "--algo", "magic", *no_config], code=2)


def test_malformed_instance_exits_two(write_text, no_config):
    bad = write_text("bad.hyg", "hyg 1\nvertices 2\nedge 1 0 7\n")
    record = run_json(["cover", bad, "--algo", "hall", "--k", 1, *no_config], code=2)
    assert "line 3" in record["results"]["error"]


def test_verify_reports_witness(triangle_file, write_text, no_config):
    partition = write_text("p.json", '{"k": 2, "classes": [[[0, 0]], [[1, 0], [2, 0]]]}')
    record = run_json(["verify", triangle_file, partition, *no_config], code=1)
    assert record["results"]["witness"] == {"class": 0, "vertex": 2}


def test_verify_partial_partition_exits_two(triangle_file, write_text, no_config):
    partition = write_text("p.json", '{"k": 1, "classes": [[[0, 0]]]}')
    run(["verify", triangle_file, partition, *no_config], code=2)


def test_exact_covering_number(tmp_path, no_config):
    fano = write_hyg(gen_fano(), tmp_path / "fano.hyg")
    witness = tmp_path / "witness.json"
    record = run_json(["exact", fano, "-o", witness, *no_config])
    assert record["results"]["status"] == "exact"
    assert record["results"]["covering_number"] == 1
    assert witness.exists()


def test_exact_decision_without_split_exits_one(tmp_path, no_config):
    fano = write_hyg(gen_fano(), tmp_path / "fano.hyg")
    record = run_json(["exact", fano, "--k", 2, *no_config], code=1)
    assert record["results"]["status"] == "infeasible"


def test_exact_budget_exits_three(k4_file, no_config):
    record = run_json(["exact", k4_file, "--k", 3, "--budget", 1, *no_config], code=3)
    assert record["results"]["status"] == "unknown"


def test_split2_algorithm(tmp_path, no_config):
    doubled = write_hyg(multiply_edges(gen_fano(), 2), tmp_path / "fano2.hyg")
    record = run_json(["cover", doubled, "--algo", "split2", "--k", 2, *no_config])
    assert record["results"]["class_sizes"] == [7, 7]


def test_split2_on_simple_three_uniform_instance(tmp_path, no_config):
    instance = write_hyg(
        gen_random_regular_uniform(9, 3, 8, 1, simple=True), tmp_path / "r3d8.hyg"
    )
    record = run_json(["cover", instance, "--algo", "split2", "--k", 2, *no_config])
    assert record["results"]["valid"] is True


@pytest.mark.parametrize("flag", ["--paper-exact-balance", "--strict-balance"])
def test_lll_balance_flag_and_alias(tmp_path, no_config, flag):
    instance = write_hyg(multiply_edges(gen_fano(), 4), tmp_path / "fano4.hyg")
    args = ["cover", instance, "--algo", "lll", "--k", 2, "--seed", 3, flag, *no_config]
    assert run_json(args)["results"]["valid"] is True


def test_lll_records_are_deterministic(tmp_path, no_config):
    instance = write_hyg(multiply_edges(gen_fano(), 4), tmp_path / "fano4.hyg")
    args = ["cover", instance, "--algo", "lll", "--k", 2, "--seed", 42, *no_config]
    first = run_json(args)
    second = run_json(args)
    first.pop("timings")
    second.pop("timings")
    assert first == second
    assert first["results"]["case"] == 1


def test_table_csv(tmp_path, no_config):
    out = tmp_path / "pg.csv"
    run(["table", "pg-bounds", "--min", 2, "--max", 2, "--format", "csv", "-o", out, *no_config])
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("t,q,points,r,d,edges")
    assert lines[1:] == ["2,2,7,3,3,7,3,3,2,2,-", "2,3,13,4,4,13,4,3,4,4,5"]


def test_table_csv_to_stdout(no_config):
    args = ["--quiet", "table", "pg-bounds", "--min", 2, "--max", 2, "--format", "csv"]
    result = run([*args, *no_config])
    assert result.output.splitlines()[-1] == "2,3,13,4,4,13,4,3,4,4,5"


def test_table_html_report(tmp_path, no_config):
    html = tmp_path / "report.html"
    run(["table", "pg-bounds", "--min", 2, "--max", 2, "--html", html, *no_config])
    assert "Projective hyperplane hypergraphs" in html.read_text(encoding="utf-8")


def test_table_unknown_id(no_config):
    run(["table", "nope", *no_config], code=2)


def test_level_writes_sidecar(tmp_path, k4_file, no_config):
    out = tmp_path / "levelled.hyg"
    sidecar = tmp_path / "levelled.map.json"
    args = ["level", k4_file, "--r", 3, "--d", 2, "-o", out, "--map", sidecar, *no_config]
    record = run_json(args)
    assert record["results"]["identity"] is False
    target = read_hyg(out)
    assert target.is_uniform(3)
    assert target.is_regular(2)
    document = read_levelling_sidecar(sidecar)
    assert len(document.edge_map) == 6
    assert document.embedded == [0, 1, 2, 3]


def test_level_infeasible_degree(k4_file, tmp_path, no_config):
    run(["level", k4_file, "--r", 2, "--d", 4, "-o", tmp_path / "x.hyg", *no_config], code=1)


def test_dual(tmp_path, k4_file, no_config):
    out = tmp_path / "dual.hyg"
    run(["dual", k4_file, "-o", out, *no_config])
    dual = read_hyg(out)
    assert dual.n_vertices == 6
    assert dual.is_uniform(3)
