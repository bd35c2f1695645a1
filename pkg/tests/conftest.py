from pathlib import Path

import numpy as np
import pytest

from hypercover.generators import gen_complete, gen_fano
from hypercover.hypergraph import MultiHypergraph
from hypercover.utils import set_log_level, set_quiet


@pytest.fixture(autouse=True)
def quiet_console():
    set_quiet(True)
    yield
    set_quiet(False)
    set_log_level("INFO")


@pytest.fixture
def fano() -> MultiHypergraph:
    return gen_fano()


@pytest.fixture
def k4() -> MultiHypergraph:
    return gen_complete(4)


@pytest.fixture
def triangle() -> MultiHypergraph:
    return MultiHypergraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def c4() -> MultiHypergraph:
    return MultiHypergraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def write_text(tmp_path: Path):
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


def _random_hypergraph(
    seed: int, n: int = 5, m: int = 6, r: int = 3, max_multiplicity: int = 2
) -> MultiHypergraph:
    """m random edges of size 1..r; a vertex left uncovered gets a singleton edge."""
    rng = np.random.default_rng(seed)
    edges, multiplicities = [], []
    for _ in range(m):
        size = int(rng.integers(1, r + 1))
        edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
        multiplicities.append(int(rng.integers(1, max_multiplicity + 1)))
    covered = {v for edge in edges for v in edge}
    for v in range(n):
        if v not in covered:
            edges.append([v])
            multiplicities.append(1)
    return MultiHypergraph.from_edges(n, edges, multiplicities)


@pytest.fixture
def random_hypergraph():
    return _random_hypergraph
