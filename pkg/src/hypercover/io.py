"""Instance and certificate files.

`.hyg` instance format (line based, UTF-8):

    hyg 1
    vertices <n>
    edge <multiplicity> <v1> <v2> ... <vm>

`#` starts a comment line. Partitions are JSON
`{"k": <int>, "classes": [[[edge_index, copy_index], ...], ...]}`.
"""

import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from hypercover.errors import InputError
from hypercover.hypergraph import CoverPartition, EdgeInstance, MultiHypergraph

HYG_MAGIC = "hyg 1"

PathLike = Union[str, Path]


def format_hyg(H: MultiHypergraph, canonical: bool = True) -> str:
    """Serialize to `.hyg` text; canonical order makes the bytes stable."""
    source = H.canonical() if canonical else H
    lines = [HYG_MAGIC, f"vertices {source.n_vertices}"]
    for vertices, multiplicity in source.edges:
        lines.append(" ".join(["edge", str(multiplicity), *map(str, vertices)]))
    return "\n".join(lines) + "\n"


def parse_hyg(text: str) -> MultiHypergraph:
    """Parse `.hyg` text; errors carry the offending line number."""
    header_seen = False
    n_vertices: Optional[int] = None
    edges: List[Tuple[Tuple[int, ...], int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()

        if not header_seen:
            if line != HYG_MAGIC:
                raise InputError(f"expected header '{HYG_MAGIC}', got '{line}'", line=line_no)
            header_seen = True
            continue

        if n_vertices is None:
            if tokens[0] != "vertices" or len(tokens) != 2:
                raise InputError("expected 'vertices <n>'", line=line_no)
            n_vertices = _parse_int(tokens[1], line_no)
            if n_vertices < 0:
                raise InputError("vertex count must be non-negative", line=line_no)
            continue

        if tokens[0] != "edge" or len(tokens) < 2:
            raise InputError(f"expected 'edge <multiplicity> <vertices...>', got '{line}'", line_no)
        multiplicity = _parse_int(tokens[1], line_no)
        if multiplicity < 1:
            raise InputError("edge multiplicity must be at least 1", line=line_no)
        vertices = tuple(_parse_int(tok, line_no) for tok in tokens[2:])
        for a, b in zip(vertices, vertices[1:]):
            if a >= b:
                raise InputError("edge vertices must be strictly increasing", line=line_no)
        for v in vertices:
            if not 0 <= v < n_vertices:
                raise InputError(f"vertex {v} outside 0..{n_vertices - 1}", line=line_no)
        edges.append((vertices, multiplicity))

    if not header_seen:
        raise InputError("empty instance file")
    if n_vertices is None:
        raise InputError("missing 'vertices <n>' line")
    return MultiHypergraph(n_vertices, tuple(edges))


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"expected an integer, got '{token}'", line=line_no) from None


def read_hyg(path: PathLike) -> MultiHypergraph:
    path = Path(path)
    if not path.exists():
        raise InputError(f"instance file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return parse_hyg(f.read())


def write_hyg(H: MultiHypergraph, path: PathLike, canonical: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_hyg(H, canonical=canonical))
    return path


# ----------------------------------------------------------------------
# Partitions
# ----------------------------------------------------------------------


class PartitionFile(BaseModel):
    """On-disk schema of a cover partition."""

    k: int = Field(ge=1)
    classes: List[List[Tuple[int, int]]]


def partition_to_json(P: CoverPartition) -> str:
    document = PartitionFile(
        k=P.k, classes=[[tuple(inst) for inst in members] for members in P.classes()]
    )
    return json.dumps(document.model_dump(), indent=2) + "\n"


def partition_from_json(text: str) -> CoverPartition:
    try:
        document = PartitionFile.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"invalid partition file: {e.errors()[0]['msg']}") from None
    return CoverPartition.from_classes(document.k, document.classes)


def read_partition(path: PathLike) -> CoverPartition:
    path = Path(path)
    if not path.exists():
        raise InputError(f"partition file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return partition_from_json(f.read())


def write_partition(P: CoverPartition, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(partition_to_json(P))
    return path


# ----------------------------------------------------------------------
# Levelling sidecar
# ----------------------------------------------------------------------


class LevellingFile(BaseModel):
    """On-disk schema of a levelling map; instances are [edge_index, copy_index]."""

    source_file: str
    target_file: str
    edge_map: List[Tuple[Tuple[int, int], Tuple[int, int]]]
    embedded: List[int]


def write_levelling_sidecar(
    edge_map: dict,
    embedded: Tuple[int, ...],
    source_file: PathLike,
    target_file: PathLike,
    path: PathLike,
) -> Path:
    """Write `{source_file, target_file, edge_map, embedded}` as JSON."""
    document = LevellingFile(
        source_file=str(source_file),
        target_file=str(target_file),
        edge_map=[(tuple(src), tuple(tgt)) for src, tgt in sorted(edge_map.items())],
        embedded=list(embedded),
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(document.model_dump(), indent=2) + "\n")
    return path


def read_levelling_sidecar(path: PathLike) -> LevellingFile:
    path = Path(path)
    if not path.exists():
        raise InputError(f"levelling sidecar not found: {path}")
    try:
        return LevellingFile.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise InputError(f"invalid levelling sidecar: {e.errors()[0]['msg']}") from None


def sidecar_edge_map(document: LevellingFile) -> dict:
    """Edge map of a sidecar as {EdgeInstance: EdgeInstance}."""
    return {EdgeInstance(*src): EdgeInstance(*tgt) for src, tgt in document.edge_map}
