"""hypercover CLI - main entry point."""

from pathlib import Path
from typing import Any, Dict, NoReturn, Optional, Tuple

import typer
from pydantic import BaseModel, Field
from rich.panel import Panel

from hypercover import __version__
from hypercover.config import Config, reload_config
from hypercover.errors import (
    BudgetExhaustedError,
    HypercoverError,
    InfeasibleError,
    InputError,
    VerificationError,
)
from hypercover.exact import (
    FEASIBLE,
    INFEASIBLE,
    SolverLimits,
    covering_number_exact,
    feasible_k,
)
from hypercover.generators import (
    expand,
    extend_by_vertex,
    gen_complete,
    gen_cube,
    gen_fano,
    gen_odd_near_regular,
    gen_projective,
    gen_random_regular_uniform,
    gen_triangle_multi,
    multiply_edges,
)
from hypercover.graphs.cover import (
    cover_graph_k,
    cover_multigraph_k,
    hall_cover,
    split2_multi,
    split2_threshold,
)
from hypercover.hypergraph import CoverPartition, MultiHypergraph, dualize, verify_cover_partition
from hypercover.io import (
    format_hyg,
    partition_to_json,
    read_hyg,
    read_partition,
    write_hyg,
    write_levelling_sidecar,
    write_partition,
)
from hypercover.levelling import is_levelling, level
from hypercover.lll import LLLParams, case1_diagnostics, cover_recursive
from hypercover.utils import console, sanitize_error, set_log_level, set_quiet, timed_step

app = typer.Typer(
    name="hypercover",
    help="Split hypergraph edges into vertex covers and compute covering numbers",
    add_completion=False,
)

ALGORITHMS = ("graph", "multigraph", "hall", "lll", "exact", "split2")
FAMILIES = (
    "pg", "fano", "cube", "triangle", "complete", "oddnear",
    "extend", "multiply", "expand", "random",
)

_state: Dict[str, Any] = {"json": False}


class RunRecord(BaseModel):
    """Machine-readable summary of one command, printed with --json."""

    command: str
    version: str = __version__
    inputs: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    status: str = "ok"
    exit_code: int = 0
    results: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)


def _emit(record: RunRecord) -> None:
    if _state["json"]:
        typer.echo(record.model_dump_json(indent=2))


def _fail(record: RunRecord, step: str, e: Exception) -> NoReturn:
    code = e.exit_code if isinstance(e, HypercoverError) else 1
    message = sanitize_error(e)
    console.print(f"[red][ERROR][/red] {step} failed: {message}")
    record.status = "error"
    record.exit_code = code
    record.results["error"] = message
    _emit(record)
    raise typer.Exit(code=code)


def _load_config(config_path: Path) -> Config:
    config = reload_config(config_path)
    set_log_level(config.logging.level)
    if config.logging.quiet:
        set_quiet(True)
    return config


def _limits(config: Config, budget: Optional[int] = None) -> SolverLimits:
    return SolverLimits(
        max_k=config.solver.max_k,
        node_budget=budget or config.solver.node_budget,
        time_budget=config.solver.time_budget_s,
    )


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        console.print(f"[bold blue]hypercover[/bold blue] version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress console output."),
    json_output: bool = typer.Option(False, "--json", help="Print a JSON run record."),
) -> None:
    """hypercover - covering numbers of graphs, multigraphs and hypergraphs."""
    _state["json"] = json_output
    set_quiet(quiet or json_output)


# ----------------------------------------------------------------------
# gen
# ----------------------------------------------------------------------


def _need(value: Optional[int], flag: str, family: str) -> int:
    if value is None:
        raise InputError(f"family '{family}' needs {flag}")
    return value


def _build_instance(
    family: str,
    t: int,
    q: int,
    d: Optional[int],
    k: Optional[int],
    n: Optional[int],
    r: Optional[int],
    s: int,
    copies: Optional[int],
    input_path: Optional[Path],
    seed: int,
    simple: bool,
) -> Tuple[MultiHypergraph, Dict[str, Any]]:
    extra: Dict[str, Any] = {}
    if family == "pg":
        H = gen_projective(t, q)
    elif family == "fano":
        H = gen_fano()
    elif family == "cube":
        H = gen_cube(_need(d, "--d", family))
    elif family == "triangle":
        H = gen_triangle_multi(_need(k, "--k", family))
    elif family == "complete":
        H = gen_complete(_need(n, "--n", family))
    elif family == "oddnear":
        H = gen_odd_near_regular(_need(k, "--k", family))
    elif family == "random":
        H = gen_random_regular_uniform(
            _need(n, "--n", family), _need(r, "--r", family), _need(d, "--d", family),
            seed, simple=simple,
        )
    elif family in ("extend", "multiply", "expand"):
        if input_path is None:
            raise InputError(f"family '{family}' needs --input")
        source = read_hyg(input_path)
        if family == "extend":
            H = extend_by_vertex(source)
        elif family == "multiply":
            H = multiply_edges(source, s)
        else:
            H, embedded = expand(source, s, _need(d, "--d", family), copies)
            extra["embedded"] = list(embedded)
    else:
        raise InputError(f"unknown family '{family}' (choose from {', '.join(FAMILIES)})")
    return H, extra


@app.command()
def gen(
    family: str = typer.Argument(..., help=f"Instance family: {', '.join(FAMILIES)}"),
    t: int = typer.Option(2, "--t", help="Projective dimension"),
    q: int = typer.Option(2, "--q", help="Prime field size"),
    d: Optional[int] = typer.Option(None, "--d", help="Cube dimension / degree"),
    k: Optional[int] = typer.Option(None, "--k", help="Number of covers the witness defeats"),
    n: Optional[int] = typer.Option(None, "--n", help="Vertex count"),
    r: Optional[int] = typer.Option(None, "--r", help="Edge size"),
    s: int = typer.Option(1, "--s", help="Edge multiplier"),
    copies: Optional[int] = typer.Option(None, "--copies", help="Expansion copies"),
    input_path: Optional[Path] = typer.Option(None, "--input", "-i", help="Source instance"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    simple: bool = typer.Option(False, "--simple", help="Forbid repeated random edges"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Output .hyg file"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Generate a structured or random instance in .hyg format."""
    _load_config(config_path)
    record = RunRecord(command="gen", inputs={"family": family}, seed=seed)
    console.print(Panel.fit(f"[bold cyan]Generate: {family}[/bold cyan]"))

    with timed_step("Generation") as timer:
        try:
            H, extra = _build_instance(
                family, t, q, d, k, n, r, s, copies, input_path, seed, simple
            )
        except Exception as e:
            _fail(record, "Generation", e)
    record.timings["generate"] = timer.elapsed

    record.results = {
        "n_vertices": H.n_vertices,
        "edges": len(H.edges),
        "instances": H.instance_count,
        "min_degree": H.min_degree,
        "max_edge_size": H.max_edge_size,
        **extra,
    }
    if output is not None:
        write_hyg(H, output)
        console.print(f"[green][OK][/green] Wrote {output}")
    elif not _state["json"]:
        typer.echo(format_hyg(H), nl=False)
    console.print(
        f"[dim]{H.n_vertices} vertices, {H.instance_count} edge instances, "
        f"min degree {H.min_degree}[/dim]"
    )
    _emit(record)


# ----------------------------------------------------------------------
# cover
# ----------------------------------------------------------------------


def _exact_split(H: MultiHypergraph, k: int, limits: SolverLimits) -> CoverPartition:
    outcome = feasible_k(H, k, limits)
    if outcome.status == FEASIBLE:
        return outcome.partition  # type: ignore[return-value]
    if outcome.status == INFEASIBLE:
        raise InfeasibleError(f"no {k}-split exists (exhaustive search, {outcome.nodes} nodes)")
    raise BudgetExhaustedError(f"search budget exhausted after {outcome.nodes} nodes")


@app.command()
def cover(
    input_path: Path = typer.Argument(..., help="Instance .hyg file"),
    algo: str = typer.Option("multigraph", "--algo", help=f"One of: {', '.join(ALGORITHMS)}"),
    k: int = typer.Option(2, "--k", help="Number of covers"),
    seed: int = typer.Option(0, "--seed", help="Master random seed"),
    lambda_const: Optional[float] = typer.Option(None, "--lambda", help="Case 2 constant"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Resampling rounds / search nodes"),
    strict_balance: bool = typer.Option(
        False,
        "--paper-exact-balance",
        "--strict-balance",
        help="Use the d/2 - Lambda split criterion",
    ),
    force_case: Optional[int] = typer.Option(None, "--force-case", help="Force LLL case 1 or 2"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Partition JSON file"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Split the edges of an instance into k covers with a constructive algorithm."""
    config = _load_config(config_path)
    record = RunRecord(
        command="cover", inputs={"instance": str(input_path), "algo": algo, "k": k}, seed=seed
    )
    console.print(Panel.fit(f"[bold cyan]Cover: {algo}, k={k}[/bold cyan]"))

    with timed_step("Cover") as timer:
        try:
            if algo not in ALGORITHMS:
                choices = ", ".join(ALGORITHMS)
                raise InputError(f"unknown algorithm '{algo}' (choose from {choices})")
            H = read_hyg(input_path)
            if algo == "graph":
                P = cover_graph_k(H, k)
            elif algo == "multigraph":
                P = cover_multigraph_k(H, k)
            elif algo == "hall":
                P = hall_cover(H, k)
            elif algo == "exact":
                P = _exact_split(H, k, _limits(config, budget))
            elif algo == "split2":
                if k != 2:
                    raise InputError("split2 always produces 2 covers; use --k 2")
                limits = _limits(config)
                P = split2_multi(
                    H,
                    lambda target: _exact_split(target, 2, limits),
                    threshold=split2_threshold(H),
                )
            else:
                params = LLLParams(
                    r=max(3, H.max_edge_size),
                    k=k,
                    lambda_const=lambda_const or config.lll.lambda_const,
                    round_budget=budget,
                    budget_factor=config.lll.budget_factor,
                    seed=seed,
                    strict_balance=strict_balance or config.lll.strict_balance,
                    force_case=force_case or config.lll.force_case,
                )
                diagnostics = case1_diagnostics(H, k)
                record.results["lll_product"] = diagnostics.lll_product
                record.results["case"] = params.case
                console.print(
                    f"[dim]e*p*(Delta+1) = {diagnostics.lll_product:.4g}, "
                    f"case {params.case}[/dim]"
                )
                P = cover_recursive(H, k, params)
            verdict = verify_cover_partition(H, P)
            if not verdict.valid:
                c, v = verdict.witness  # type: ignore[misc]
                record.results["witness"] = {"class": c, "vertex": v}
                raise VerificationError(f"class {c} does not cover vertex {v}", (c, v))
        except Exception as e:
            _fail(record, "Cover", e)
    record.timings["cover"] = timer.elapsed

    record.results.update({"k": P.k, "class_sizes": P.class_sizes(), "valid": True})
    if output is not None:
        write_partition(P, output)
        console.print(f"[green][OK][/green] Partition written: {output}")
    console.print(f"[green][OK][/green] {k} covers, class sizes {P.class_sizes()}")
    _emit(record)


# ----------------------------------------------------------------------
# exact
# ----------------------------------------------------------------------


@app.command()
def exact(
    input_path: Path = typer.Argument(..., help="Instance .hyg file"),
    k: Optional[int] = typer.Option(None, "--k", help="Decide one k instead of maximizing"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search node budget"),
    deterministic: bool = typer.Option(
        False, "--deterministic", help="Sequential search (the only mode; kept for scripts)"
    ),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Witness partition file"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Exact covering number (or a k-split decision) by exhaustive search."""
    config = _load_config(config_path)
    limits = _limits(config, budget)
    record = RunRecord(
        command="exact",
        inputs={"instance": str(input_path), "k": k, "deterministic": deterministic},
    )
    console.print(Panel.fit("[bold cyan]Exact search[/bold cyan]"))

    with timed_step("Exact search") as timer:
        try:
            H = read_hyg(input_path)
            if k is not None:
                outcome = feasible_k(H, k, limits)
                status, witness, nodes = outcome.status, outcome.partition, outcome.nodes
                record.results.update({"k": k, "status": status})
            else:
                number = covering_number_exact(H, limits)
                status, witness, nodes = number.status, number.witness, number.nodes
                record.results.update(
                    {
                        "status": status,
                        "covering_number": number.value,
                        "lower_bound": number.lower_bound,
                        "upper_bound": number.upper_bound,
                    }
                )
        except Exception as e:
            _fail(record, "Exact search", e)
    record.timings["search"] = timer.elapsed
    record.results["nodes"] = nodes

    if witness is not None and output is not None:
        write_partition(witness, output)
        console.print(f"[green][OK][/green] Witness written: {output}")

    if k is not None:
        if status == FEASIBLE:
            console.print(f"[green][OK][/green] {k}-split found ({nodes} nodes)")
        elif status == INFEASIBLE:
            console.print(f"[yellow]No {k}-split:[/yellow] search exhausted after {nodes} nodes")
            record.exit_code = 1
        else:
            console.print(f"[yellow]Warning:[/yellow] budget exhausted after {nodes} nodes")
            record.exit_code = 3
    elif record.results["covering_number"] is not None:
        console.print(f"[green][OK][/green] covering number = {record.results['covering_number']}")
    else:
        console.print(
            f"[yellow]Warning:[/yellow] covering number in "
            f"[{record.results['lower_bound']}, {record.results['upper_bound']}] (budget exhausted)"
        )
        record.exit_code = 3

    _emit(record)
    if record.exit_code:
        raise typer.Exit(code=record.exit_code)


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


@app.command()
def verify(
    input_path: Path = typer.Argument(..., help="Instance .hyg file"),
    partition_path: Path = typer.Argument(..., help="Partition JSON file"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Check that every class of a partition covers every vertex."""
    _load_config(config_path)
    record = RunRecord(
        command="verify", inputs={"instance": str(input_path), "partition": str(partition_path)}
    )
    console.print(Panel.fit("[bold cyan]Verify partition[/bold cyan]"))

    try:
        H = read_hyg(input_path)
        P = read_partition(partition_path)
        result = verify_cover_partition(H, P)
    except Exception as e:
        _fail(record, "Verification", e)

    record.results["valid"] = result.valid
    if result.valid:
        console.print(f"[green][OK][/green] Valid {P.k}-cover partition")
        _emit(record)
        return
    c, v = result.witness  # type: ignore[misc]
    record.results["witness"] = {"class": c, "vertex": v}
    record.status = "invalid"
    record.exit_code = 1
    console.print(f"[red][ERROR][/red] class {c} does not cover vertex {v}")
    _emit(record)
    raise typer.Exit(code=1)


# ----------------------------------------------------------------------
# table
# ----------------------------------------------------------------------


@app.command()
def table(
    table_id: str = typer.Argument(..., help="fm2k, f2k, small-values, pg-bounds or all"),
    lo: Optional[int] = typer.Option(None, "--min", help="First parameter value"),
    hi: Optional[int] = typer.Option(None, "--max", help="Last parameter value"),
    seed: int = typer.Option(0, "--seed", help="Corpus seed"),
    fmt: Optional[str] = typer.Option(None, "--format", help="text or csv"),
    html: Optional[Path] = typer.Option(None, "--html", help="Also write an HTML report"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write CSV to this file"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Recompute a reproduction table."""
    from hypercover.report import write_report
    from hypercover.tables import TABLE_IDS, TableSpec, rows_as_dicts, run_table, to_csv, to_rich

    config = _load_config(config_path)
    fmt = fmt or config.output.table_format
    html = html or config.output.html_report
    record = RunRecord(command="table", inputs={"table": table_id, "min": lo, "max": hi}, seed=seed)
    console.print(Panel.fit(f"[bold cyan]Table: {table_id}[/bold cyan]"))

    ids = TABLE_IDS if table_id == "all" else (table_id,)
    results = []
    with timed_step("Tables") as timer:
        try:
            if fmt not in ("text", "csv"):
                raise InputError(f"unknown format '{fmt}' (choose text or csv)")
            for tid in ids:
                results.append(run_table(TableSpec(tid, lo, hi, seed), config))
        except Exception as e:
            _fail(record, "Table", e)
    record.timings["tables"] = timer.elapsed

    csv_text = "\n".join(to_csv(result) for result in results)
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(csv_text, encoding="utf-8")
        console.print(f"[green][OK][/green] Table written: {output}")
    if fmt == "csv" and output is None and not _state["json"]:
        typer.echo(csv_text, nl=False)
    elif fmt == "text":
        for result in results:
            console.print(to_rich(result))
    if html is not None:
        write_report(results, html, seed)
        console.print(f"[green][OK][/green] Report generated: {html}")

    record.results["tables"] = {result.table_id: rows_as_dicts(result) for result in results}
    if any(result.has_unknown for result in results):
        console.print("[yellow]Warning:[/yellow] some cells are unknown (budget exhausted)")
        record.status = "unknown"
        record.exit_code = 3
    _emit(record)
    if record.exit_code:
        raise typer.Exit(code=record.exit_code)


# ----------------------------------------------------------------------
# dual / level
# ----------------------------------------------------------------------


@app.command()
def dual(
    input_path: Path = typer.Argument(..., help="Instance .hyg file"),
    output: Path = typer.Option(..., "--output", "-o", help="Output .hyg file"),
    expand_copies: bool = typer.Option(
        False, "--expand-copies", help="Treat every edge copy as its own edge first"
    ),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Write the dual hypergraph (vertices and edges swapped)."""
    _load_config(config_path)
    record = RunRecord(command="dual", inputs={"instance": str(input_path)})
    console.print(Panel.fit("[bold cyan]Dual hypergraph[/bold cyan]"))

    try:
        H = read_hyg(input_path)
        if expand_copies:
            H, _ = H.with_unit_multiplicities()
        D = dualize(H)
        write_hyg(D, output, canonical=False)
    except Exception as e:
        _fail(record, "Dualization", e)

    record.results = {"n_vertices": D.n_vertices, "edges": len(D.edges)}
    console.print(f"[green][OK][/green] Dual written: {output}")
    _emit(record)


@app.command("level")
def level_command(
    input_path: Path = typer.Argument(..., help="Instance .hyg file"),
    r: int = typer.Option(..., "--r", help="Target edge size"),
    d: int = typer.Option(..., "--d", help="Target degree"),
    output: Path = typer.Option(..., "--output", "-o", help="Levelled .hyg file"),
    map_path: Optional[Path] = typer.Option(None, "--map", help="Levelling sidecar JSON"),
    config_path: Path = typer.Option("config.yaml", "--config-path", help="Path to config file"),
) -> None:
    """Build an (r,d)-levelling: an r-uniform d-regular hypergraph with an edge map."""
    _load_config(config_path)
    record = RunRecord(command="level", inputs={"instance": str(input_path), "r": r, "d": d})
    console.print(Panel.fit(f"[bold cyan]Levelling r={r}, d={d}[/bold cyan]"))

    with timed_step("Levelling") as timer:
        try:
            H = read_hyg(input_path)
            L = level(H, r, d)
            if not is_levelling(L, r, d):
                raise InfeasibleError("constructed map is not a levelling")
            write_hyg(L.target, output, canonical=False)
            if map_path is not None:
                write_levelling_sidecar(L.edge_map, L.embedded, input_path, output, map_path)
        except Exception as e:
            _fail(record, "Levelling", e)
    record.timings["level"] = timer.elapsed

    record.results = {
        "n_vertices": L.target.n_vertices,
        "edges": len(L.target.edges),
        "identity": L.is_identity,
    }
    console.print(f"[green][OK][/green] Levelling written: {output}")
    if map_path is not None:
        console.print(f"[green][OK][/green] Edge map written: {map_path}")
    _emit(record)


if __name__ == "__main__":
    app()
