import pytest

from hypercover.errors import InputError
from hypercover.hypergraph import CoverPartition, EdgeInstance, MultiHypergraph
from hypercover.io import (
    format_hyg,
    parse_hyg,
    partition_from_json,
    read_hyg,
    read_levelling_sidecar,
    read_partition,
    sidecar_edge_map,
    write_hyg,
    write_levelling_sidecar,
    write_partition,
)

TRIANGLE_HYG = "hyg 1\nvertices 3\nedge 1 0 1\nedge 1 0 2\nedge 1 1 2\n"


def test_format_triangle(triangle):
    assert format_hyg(triangle) == TRIANGLE_HYG


def test_canonical_format_ignores_edge_order():
    H = MultiHypergraph.from_edges(3, [(1, 2), (0, 2), (0, 1)])
    assert format_hyg(H) == TRIANGLE_HYG
    assert format_hyg(H, canonical=False).splitlines()[2] == "edge 1 1 2"


def test_parse_skips_comments_and_blank_lines():
    text = "# triangle\nhyg 1\n\nvertices 3\n# edges\nedge 2 0 1\nedge 1 1 2\n"
    H = parse_hyg(text)
    assert H.n_vertices == 3
    assert H.edges == (((0, 1), 2), ((1, 2), 1))


def test_parse_allows_empty_edge():
    H = parse_hyg("hyg 1\nvertices 2\nedge 1\n")
    assert H.edges == (((), 1),)


@pytest.mark.parametrize(
    "text, line",
    [
        ("hyg 2\nvertices 3\n", 1),
        ("hyg 1\nvertex 3\n", 2),
        ("hyg 1\nvertices 3\nedge 1 0 5\n", 3),
        ("hyg 1\nvertices 3\nedge 1 1 0\n", 3),
        ("hyg 1\nvertices 3\nedge 0 0 1\n", 3),
        ("hyg 1\nvertices 3\nedge 1 0 x\n", 3),
    ],
)
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(InputError) as excinfo:
        parse_hyg(text)
    assert excinfo.value.line == line
    assert f"line {line}:" in str(excinfo.value)


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InputError, match="not found"):
        read_hyg(tmp_path / "missing.hyg")


def test_written_instance_reads_back(tmp_path, fano):
    path = write_hyg(fano, tmp_path / "out" / "fano.hyg")
    assert read_hyg(path) == fano.canonical()
    assert path.read_bytes().endswith(b"\n")


def test_partition_file_keeps_assignment(tmp_path, triangle):
    P = CoverPartition.from_labels(triangle, [0, 1, 1], 2)
    path = write_partition(P, tmp_path / "p.json")
    loaded = read_partition(path)
    assert loaded.k == 2
    assert dict(loaded.assignment) == dict(P.assignment)


@pytest.mark.parametrize(
    "text",
    ['{"k": 0, "classes": []}', '{"classes": []}', "not json"],
)
def test_invalid_partition_json(text):
    with pytest.raises(InputError):
        partition_from_json(text)


def test_levelling_sidecar(tmp_path):
    edge_map = {EdgeInstance(0, 1): EdgeInstance(3, 0), EdgeInstance(0, 0): EdgeInstance(1, 0)}
    path = write_levelling_sidecar(edge_map, (0, 1, 2), "in.hyg", "out.hyg", tmp_path / "m.json")
    document = read_levelling_sidecar(path)
    assert document.source_file == "in.hyg"
    assert document.embedded == [0, 1, 2]
    assert document.edge_map[0] == ((0, 0), (1, 0))
    assert sidecar_edge_map(document) == edge_map
