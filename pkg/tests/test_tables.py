import re

import pytest

from hypercover.config import Config, CorpusConfig, SolverConfig
from hypercover.errors import InputError
from hypercover.report import render_report
from hypercover.tables import (
    TableResult,
    TableSpec,
    rows_as_dicts,
    run_table,
    small_values_instance,
    table_pg_bounds,
    to_csv,
)


@pytest.fixture
def small_config() -> Config:
    return Config(
        corpus=CorpusConfig(fm2k_per_k=3, f2k_per_k=3, small_values_3=2, small_values_4=2)
    )


def test_unknown_table_id():
    with pytest.raises(InputError):
        TableSpec("nope")


def test_empty_range():
    with pytest.raises(InputError):
        TableSpec("fm2k", 5, 3)


def test_default_range():
    assert TableSpec("f2k").bounds == (2, 5)


def test_fm2k_rows(small_config):
    result = run_table(TableSpec("fm2k", 2, 3), small_config)
    assert result.rows == [
        ["2", "3", "1", "yes", "3/3"],
        ["3", "4", "2", "yes", "3/3"],
    ]
    assert not result.has_unknown


def test_f2k_rows(small_config):
    result = run_table(TableSpec("f2k", 2, 3), small_config)
    assert [row[:3] for row in result.rows] == [["2", "3", "K3"], ["3", "4", "oddnear(3)"]]
    assert result.rows[0][3] == "1"
    assert all(row[4] == "yes" for row in result.rows)
    assert all(row[5] == "3/3" for row in result.rows)


def test_small_values_for_three_uniform(small_config):
    result = run_table(TableSpec("small-values", 3, 3), small_config)
    (row,) = result.rows
    assert row[:6] == ["3", "2", "4", "fano", "3", "1"]
    assert re.fullmatch(r"\d/2", row[6])


@pytest.mark.parametrize("i", range(12))
def test_small_values_three_uniform_corpus_shape(i):
    H = small_values_instance(3, i)
    assert H.n_vertices in (6, 9)
    assert H.instance_count <= 12
    assert H.is_uniform(3)
    assert H.is_regular(4)


def test_small_values_corpus_uses_both_vertex_counts():
    assert {small_values_instance(3, i).n_vertices for i in range(40)} == {6, 9}


def test_small_values_four_uniform_corpus_is_simple():
    H = small_values_instance(4, 0)
    assert H.n_vertices == 8
    assert H.is_simple()
    assert H.is_regular(4)
    with pytest.raises(InputError):
        small_values_instance(5, 0)


def test_small_values_budget_gives_unknown_corpus_cell():
    config = Config(
        solver=SolverConfig(node_budget=1),
        corpus=CorpusConfig(small_values_4=1),
    )
    (row,) = run_table(TableSpec("small-values", 4, 4), config).rows
    assert row[6] == "unknown"


def test_pg_bounds_rows(small_config):
    result = table_pg_bounds(TableSpec("pg-bounds", 2, 2), small_config)
    assert result.rows == [
        ["2", "2", "7", "3", "3", "7", "3", "3", "2", "2", "-"],
        ["2", "3", "13", "4", "4", "13", "4", "3", "4", "4", "5"],
    ]


def test_tiny_budget_gives_unknown_cells():
    config = Config(
        solver=SolverConfig(node_budget=1),
        corpus=CorpusConfig(fm2k_per_k=1),
    )
    result = run_table(TableSpec("fm2k", 4, 4), config)
    assert result.rows[0][2] == "unknown"
    assert result.rows[0][3] == "unknown"
    assert result.has_unknown


def test_csv_and_dict_rendering():
    result = TableResult("demo", "Demo", ["a", "b"], [["1", "2"], ["3", "unknown"]])
    assert to_csv(result) == "a,b\n1,2\n3,unknown\n"
    assert rows_as_dicts(result)[1] == {"a": "3", "b": "unknown"}
    assert result.has_unknown


def test_html_report_lists_every_table():
    tables = [
        TableResult("one", "First table", ["x"], [["1"]]),
        TableResult("two", "Second table", ["y"], [["unknown"]]),
    ]
    html = render_report(tables, seed=9, timestamp=False)
    assert "First table" in html
    assert "Second table" in html
    assert "seed 9" in html
    assert 'class="unknown"' in html


# ----------------------------------------------------------------------
# Full-size corpora (config defaults)
# ----------------------------------------------------------------------


@pytest.mark.slow
def test_fm2k_full_corpus():
    result = run_table(TableSpec("fm2k"), Config())
    assert [row[0] for row in result.rows] == ["2", "3", "4", "5", "6"]
    for row in result.rows:
        assert row[3] == "yes"
        assert row[4] == "100/100"


@pytest.mark.slow
def test_f2k_full_corpus():
    result = run_table(TableSpec("f2k"), Config())
    assert [row[0] for row in result.rows] == ["2", "3", "4", "5"]
    for row in result.rows:
        assert row[4] == "yes"
        assert row[5] == "100/100"


@pytest.mark.slow
def test_small_values_full_corpus():
    three, four = run_table(TableSpec("small-values"), Config()).rows
    assert three == ["3", "2", "4", "fano", "3", "1", "100/100"]
    assert four == ["4", "2", "4", "extend(fano)", "3", "1", "50/50"]
