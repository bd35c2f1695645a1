"""Reproduction tables: every cell is recomputed from generators and solvers."""

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from rich.progress import track
from rich.table import Table

from hypercover.config import Config
from hypercover.errors import BudgetExhaustedError, InputError
from hypercover.exact import (
    FEASIBLE,
    UNKNOWN,
    SolverLimits,
    covering_number_exact,
    feasible_k,
    has_polychromatic_colouring,
    min_cover_size,
)
from hypercover.generators import (
    extend_by_vertex,
    gen_complete,
    gen_fano,
    gen_odd_near_regular,
    gen_projective,
    gen_random_graph,
    gen_random_multigraph,
    gen_random_regular_uniform,
    gen_triangle_multi,
    projective_bounds,
)
from hypercover.graphs.cover import cover_graph_k, cover_multigraph_k, multigraph_threshold
from hypercover.hypergraph import MultiHypergraph, dualize, verify_cover_partition
from hypercover.utils import console, log_enabled, make_rng

TABLE_IDS = ("fm2k", "f2k", "small-values", "pg-bounds")

DEFAULT_RANGES: Dict[str, Tuple[int, int]] = {
    "fm2k": (2, 6),
    "f2k": (2, 5),
    "small-values": (3, 4),
    "pg-bounds": (2, 3),
}


@dataclass(frozen=True)
class TableSpec:
    """Which table to compute and over which parameter range."""

    table_id: str
    lo: Optional[int] = None
    hi: Optional[int] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.table_id not in TABLE_IDS:
            choices = ", ".join(TABLE_IDS)
            raise InputError(f"unknown table '{self.table_id}' (choose from {choices})")
        lo, hi = self.bounds
        if lo > hi:
            raise InputError(f"empty parameter range {lo}..{hi}")

    @property
    def bounds(self) -> Tuple[int, int]:
        default_lo, default_hi = DEFAULT_RANGES[self.table_id]
        return (
            default_lo if self.lo is None else self.lo,
            default_hi if self.hi is None else self.hi,
        )


@dataclass
class TableResult:
    table_id: str
    title: str
    columns: List[str]
    rows: List[List[str]] = field(default_factory=list)

    @property
    def has_unknown(self) -> bool:
        return any(cell == UNKNOWN for row in self.rows for cell in row)


# ----------------------------------------------------------------------
# Cell helpers
# ----------------------------------------------------------------------


def _oracle_cell(H: MultiHypergraph, limits: SolverLimits) -> str:
    result = covering_number_exact(H, limits)
    return UNKNOWN if result.value is None else str(result.value)


def _below(cell: str, k: int) -> str:
    if cell == UNKNOWN:
        return UNKNOWN
    return "yes" if int(cell) < k else "no"


def _corpus_cell(
    label: str,
    size: int,
    make: Callable[[int], MultiHypergraph],
    check: Callable[[MultiHypergraph], Optional[bool]],
) -> str:
    """'passed/size', or unknown when any check could not be settled."""
    passed = 0
    unsettled = False
    hidden = console.quiet or not log_enabled("INFO")
    for i in track(range(size), description=label, console=console, disable=hidden):
        verdict = check(make(i))
        if verdict is None:
            unsettled = True
        elif verdict:
            passed += 1
    return UNKNOWN if unsettled else f"{passed}/{size}"


def _instance_seed(seed: int, *path) -> int:
    return int(make_rng(seed, *path).integers(2**31))


def _even_vertex_count(rng_value: int, lo: int, hi: int, d: int) -> int:
    n = lo + rng_value % (hi - lo + 1)
    if (n * d) % 2:
        n = n + 1 if n < hi else n - 1
    return n


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------


def table_fm2k(spec: TableSpec, config: Config) -> TableResult:
    """Multigraph threshold, triangle witness and constructive corpus per k."""
    limits = _limits(config)
    size = config.corpus.fm2k_per_k
    max_n = config.corpus.max_multigraph_vertices
    result = TableResult(
        "fm2k",
        "Multigraph splitting threshold floor((4k+1)/3)",
        ["k", "threshold", "triangle_oracle", "triangle_below_k", "corpus_split"],
    )
    lo, hi = spec.bounds
    for k in range(max(lo, 2), hi + 1):
        d = multigraph_threshold(k)
        oracle = _oracle_cell(gen_triangle_multi(k), limits)

        def make(i: int, k: int = k, d: int = d) -> MultiHypergraph:
            seed = _instance_seed(spec.seed, "fm2k", k, i)
            n = _even_vertex_count(seed, 3, max_n, d)
            return gen_random_multigraph(n, d, seed, extra_edges=seed % (n + 1))

        def check(G: MultiHypergraph, k: int = k) -> bool:
            return verify_cover_partition(G, cover_multigraph_k(G, k)).valid

        corpus = _corpus_cell(f"fm2k k={k}", size, make, check)
        result.rows.append([str(k), str(d), oracle, _below(oracle, k), corpus])
    return result


def table_f2k(spec: TableSpec, config: Config) -> TableResult:
    """Simple-graph threshold k+1 with its extremal witnesses."""
    limits = _limits(config)
    size = config.corpus.f2k_per_k
    max_n = config.corpus.max_graph_vertices
    result = TableResult(
        "f2k",
        "Simple-graph splitting threshold k+1",
        ["k", "threshold", "witness", "witness_oracle", "witness_below_k", "corpus_split"],
    )
    lo, hi = spec.bounds
    for k in range(max(lo, 2), hi + 1):
        if k % 2 == 0:
            name, witness = f"K{k + 1}", gen_complete(k + 1)
        else:
            name, witness = f"oddnear({k})", gen_odd_near_regular(k)
        oracle = _oracle_cell(witness, limits)

        def make(i: int, k: int = k) -> MultiHypergraph:
            seed = _instance_seed(spec.seed, "f2k", k, i)
            n = _even_vertex_count(seed, k + 2, max_n, k + 1)
            return gen_random_graph(n, k + 1, seed, extra_edges=seed % (n + 1))

        def check(G: MultiHypergraph, k: int = k) -> bool:
            return verify_cover_partition(G, cover_graph_k(G, k)).valid

        corpus = _corpus_cell(f"f2k k={k}", size, make, check)
        result.rows.append([str(k), str(k + 1), name, oracle, _below(oracle, k), corpus])
    return result


def small_values_instance(r: int, i: int, seed: int = 0) -> MultiHypergraph:
    """i-th 4-regular r-uniform corpus instance: 6 or 9 vertices for r = 3, 8 simple for r = 4."""
    instance_seed = _instance_seed(seed, "small-values", r, i)
    if r == 3:
        return gen_random_regular_uniform((6, 9)[instance_seed % 2], 3, 4, instance_seed)
    if r == 4:
        return gen_random_regular_uniform(8, 4, 4, instance_seed, simple=True)
    raise InputError(f"small-values corpus covers r = 3 and r = 4, got {r}")


def table_small_values(spec: TableSpec, config: Config) -> TableResult:
    """Evidence that minimum degree 4 forces a 2-split for r = 3 and r = 4."""
    limits = _limits(config)
    result = TableResult(
        "small-values",
        "2-split threshold for 3- and 4-uniform hypergraphs",
        ["r", "k", "threshold", "witness", "witness_delta", "witness_oracle", "corpus_split"],
    )
    lo, hi = spec.bounds
    for r in range(max(lo, 3), min(hi, 4) + 1):
        if r == 3:
            name, witness = "fano", gen_fano()
            size = config.corpus.small_values_3

            def make(i: int) -> MultiHypergraph:
                return small_values_instance(3, i, spec.seed)

            def check(H: MultiHypergraph) -> Optional[bool]:
                outcome = feasible_k(H, 2, limits)
                return None if outcome.status == UNKNOWN else outcome.status == FEASIBLE

        else:
            name, witness = "extend(fano)", extend_by_vertex(gen_fano())
            size = config.corpus.small_values_4

            def make(i: int) -> MultiHypergraph:
                return small_values_instance(4, i, spec.seed)

            def check(H: MultiHypergraph) -> Optional[bool]:
                outcome = feasible_k(H, 2, limits)
                if outcome.status == UNKNOWN:
                    return None
                try:
                    rainbow = has_polychromatic_colouring(dualize(H), 2, limits) is not None
                except BudgetExhaustedError:
                    return None
                return rainbow and outcome.status == FEASIBLE

        oracle = _oracle_cell(witness, limits)
        corpus = _corpus_cell(f"small-values r={r}", size, make, check)
        result.rows.append(
            [str(r), "2", "4", name, str(witness.min_degree), oracle, corpus]
        )
    return result


def table_pg_bounds(spec: TableSpec, config: Config) -> TableResult:
    """Projective-space counts and the resulting covering-number bounds."""
    result = TableResult(
        "pg-bounds",
        "Projective hyperplane hypergraphs PG(t,q)",
        [
            "t", "q", "points", "r", "d", "edges",
            "min_cover", "cover_lower", "split_upper", "qd_over_t1", "witness_k",
        ],
    )
    lo, hi = spec.bounds
    for t in range(max(lo, 1), hi + 1):
        for q in (2, 3):
            H = gen_projective(t, q)
            bounds = projective_bounds(t, q)
            result.rows.append(
                [
                    str(t),
                    str(q),
                    str(H.n_vertices),
                    str(H.uniformity),
                    str(H.regularity),
                    str(len(H.edges)),
                    str(min_cover_size(H)),
                    str(bounds.min_cover_lower),
                    str(bounds.split_upper),
                    str(bounds.loose_upper),
                    "-" if bounds.witness_k is None else str(bounds.witness_k),
                ]
            )
    return result


TABLES: Dict[str, Callable[[TableSpec, Config], TableResult]] = {
    "fm2k": table_fm2k,
    "f2k": table_f2k,
    "small-values": table_small_values,
    "pg-bounds": table_pg_bounds,
}


def _limits(config: Config) -> SolverLimits:
    return SolverLimits(
        max_k=config.solver.max_k,
        node_budget=config.solver.node_budget,
        time_budget=config.solver.time_budget_s,
    )


def run_table(spec: TableSpec, config: Config) -> TableResult:
    """Compute one table; unsettled cells read `unknown`."""
    return TABLES[spec.table_id](spec, config)


# ----------------------------------------------------------------------
# Rendering
# ----------------------------------------------------------------------


def to_csv(result: TableResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.columns)
    writer.writerows(result.rows)
    return buffer.getvalue()


def to_rich(result: TableResult) -> Table:
    table = Table(title=result.title)
    for column in result.columns:
        table.add_column(column, justify="right")
    for row in result.rows:
        table.add_row(*(f"[yellow]{cell}[/yellow]" if cell == UNKNOWN else cell for cell in row))
    return table


def rows_as_dicts(result: TableResult) -> List[Dict[str, str]]:
    return [dict(zip(result.columns, row)) for row in result.rows]

