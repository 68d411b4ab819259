from __future__ import annotations

import functools
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click

from jumped_wenger import reports
from jumped_wenger.config import coerce_fields, coerce_m_values, load_limits
from jumped_wenger.errors import JumpedWengerError
from jumped_wenger.gf import parse_field
from jumped_wenger.graph import (
    EDGE_FORMATS,
    GraphSpec,
    Side,
    VertexId,
    custom_spec,
    jumped_spec,
    write_edges,
)
from jumped_wenger.grid import GridCell, load_grid_file, parse_grid_expr, run_cell, run_grid
from jumped_wenger.metrics import INFINITE, compute_invariants, distance_between
from jumped_wenger.models import GridSpec, Limits
from jumped_wenger.rdf_export import export_records
from jumped_wenger.symfun import search_sigma_nonzero, search_sigma_pair_nonzero, sigma, sigma_pair
from jumped_wenger.witness import (
    algebraic_girth,
    eight_cycle,
    four_cycle_search,
    path_between,
    six_cycle_search,
    walk_to_json,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"
REPORT_FORMATS = ("json", "csv", "ntriples")

_VERTEX_RE = re.compile(r"^\s*([PL])\s*(?::\s*)?(?:(\d+)|\(([\d,\s]+)\)|\[([\d,\s]+)\])\s*$", re.I)


class InvalidInput(click.ClickException):
    """Domain errors surfaced with the usage exit code."""

    exit_code = 2


def _reports_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (JumpedWengerError, OSError) as exc:
            raise InvalidInput(str(exc)) from exc

    return wrapper


def _attach_log_file(log_file: Path) -> None:
    log_file.parent.mkdir(parents=True, exist_ok=True)
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
    logging.getLogger().addHandler(file_handler)


def _emit_text(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    click.echo(f"Wrote {out}")


def _field_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--q",
        "field_text",
        required=True,
        help="Field as p, q, p^e or p^e/[c0,c1,...] (modulus constant term first).",
    )(func)


def _spec_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option(
        "--exponents",
        default=None,
        help="Custom exponent list such as 0,2,3 instead of --m/--i/--j.",
    )(func)
    func = click.option("--j", "j", type=click.IntRange(1), default=None, help="Second jump index.")(func)
    func = click.option("--i", "i", type=click.IntRange(1), default=None, help="First jump index.")(func)
    func = click.option("--m", "m", type=click.IntRange(1), default=None, help="Dimension parameter m.")(func)
    return _field_option(func)


def _build_spec(field_text: str, m: Optional[int], i: Optional[int], j: Optional[int], exponents: Optional[str]) -> GraphSpec:
    field_spec = parse_field(field_text)
    if exponents:
        try:
            values = [int(v) for v in exponents.split(",") if v.strip()]
        except ValueError as exc:
            raise click.BadParameter("exponents must be integers", param_hint="--exponents") from exc
        return custom_spec(field_spec, values)
    if m is None or i is None or j is None:
        raise click.UsageError("give --m, --i and --j, or --exponents")
    return jumped_spec(field_spec, m, i, j)


def _parse_vertex(spec: GraphSpec, text: str, param: str) -> VertexId:
    match = _VERTEX_RE.match(text)
    if not match:
        raise click.BadParameter("use P<rank>, L<rank>, P(c1,...) or L[c1,...]", param_hint=param)
    side = Side.POINT if match.group(1).upper() == "P" else Side.LINE
    if match.group(2) is not None:
        rank = int(match.group(2))
        if rank >= spec.side_size:
            raise click.BadParameter(f"rank must be < {spec.side_size}", param_hint=param)
        return VertexId(side, rank)
    coords = [int(c) for c in (match.group(3) or match.group(4)).split(",") if c.strip()]
    if len(coords) != spec.m + 1 or any(c >= spec.q for c in coords):
        raise click.BadParameter(f"need {spec.m + 1} field ranks below {spec.q}", param_hint=param)
    return VertexId(side, spec.encode(coords))


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


@click.group()
@click.option("--verbose", is_flag=True, help="Enable verbose logging.")
@click.option(
    "--log-file",
    type=click.Path(path_type=Path),
    default=None,
    help="Also write the log (all levels) to this file.",
)
def cli(verbose: bool, log_file: Optional[Path]) -> None:
    """Jumped Wenger graphs: construction, invariants and theorem checks."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    # basicConfig is a no-op once the root logger has handlers
    logging.getLogger().setLevel(level)
    if log_file:
        _attach_log_file(log_file)


@cli.command("gen")
@_spec_options
@click.option(
    "--format",
    "fmt",
    type=click.Choice(EDGE_FORMATS),
    default="edgelist",
    show_default=True,
    help="Edge-list, DIMACS or RDF N-Triples output.",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file (stdout if omitted).")
@_reports_errors
def gen_command(
    field_text: str,
    m: Optional[int],
    i: Optional[int],
    j: Optional[int],
    exponents: Optional[str],
    fmt: str,
    out: Optional[Path],
) -> None:
    """Export the edges of one graph."""
    spec = _build_spec(field_text, m, i, j, exponents)
    if out is None:
        write_edges(spec, sys.stdout, fmt)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="\n") as handle:
        written = write_edges(spec, handle, fmt)
    click.echo(f"Wrote {written} edges of {spec.label()} to {out}", err=True)


def _limits(
    threads: Optional[int],
    max_vertices: Optional[int],
    sample_diameter: bool,
    seed: Optional[int],
    path_samples: Optional[int],
    base: Optional[Limits] = None,
) -> Limits:
    return (base or load_limits()).with_overrides(
        workers=threads,
        max_vertices=max_vertices,
        sample_diameter=sample_diameter or None,
        seed=seed,
        path_samples=path_samples,
    )


def _limit_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option("--path-samples", type=click.IntRange(0), default=None, help="Random vertex pairs per cell for the path construction.")(func)
    func = click.option("--seed", type=int, default=None, help="Seed for sampled checks.")(func)
    func = click.option("--sample-diameter", is_flag=True, help="Use the sampled (lower bound) diameter.")(func)
    func = click.option("--max-vertices", type=click.IntRange(2), default=None, help="Largest graph with exact diameter.")(func)
    func = click.option("--threads", type=click.IntRange(1), default=None, help="Worker count.")(func)
    return func


@cli.command("invariants")
@_spec_options
@_limit_options
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file (stdout if omitted).")
@_reports_errors
def invariants_command(
    field_text: str,
    m: Optional[int],
    i: Optional[int],
    j: Optional[int],
    exponents: Optional[str],
    threads: Optional[int],
    max_vertices: Optional[int],
    sample_diameter: bool,
    seed: Optional[int],
    path_samples: Optional[int],
    out: Optional[Path],
) -> None:
    """Compute the invariants of a single graph as a JSON record."""
    spec = _build_spec(field_text, m, i, j, exponents)
    limits = _limits(threads, max_vertices, sample_diameter, seed, path_samples)
    if spec.is_jumped:
        f = spec.field
        record = run_cell(GridCell(f.p, f.e, f.modulus, spec.m, spec.i, spec.j), limits)
        _emit_text(_json(record.to_dict()), out)
        if record.hard_failure:
            raise click.exceptions.Exit(1)
        return
    result = compute_invariants(
        spec,
        max_vertices=limits.max_vertices,
        sample_diameter=limits.sample_diameter,
        roots=limits.max_roots,
        seed=limits.seed,
        workers=limits.workers,
    )
    payload: Dict[str, Any] = {
        "spec": spec.label(),
        "exponents": list(spec.exponents),
        "components": result.components,
        "diameter": "infinite" if result.diameter == INFINITE else result.diameter,
        "diameter_mode": result.diameter_mode,
        "girth_bfs": result.girth,
        "girth_algebraic": algebraic_girth(spec),
        "regular_degree": result.regular_degree,
        "elapsed_ms": result.elapsed_ms,
    }
    _emit_text(_json(payload), out)
    if payload["girth_bfs"] is not None and payload["girth_bfs"] != payload["girth_algebraic"]:
        click.echo("BFS and algebraic girth disagree", err=True)
        raise click.exceptions.Exit(1)


def _grid_from_flags(
    field_text: Optional[str],
    m_text: Optional[str],
    i: Optional[int],
    j: Optional[int],
    limits: Limits,
) -> GridSpec:
    if not field_text or not m_text:
        raise click.UsageError("give --grid, --grid-file, or both --q and --m")
    if (i is None) != (j is None):
        raise click.UsageError("--i and --j must be given together")
    pairs = None if i is None else ((i, j),)
    return GridSpec(fields=coerce_fields(field_text), m_values=coerce_m_values(m_text), ij=pairs, limits=limits)


def _report_format(fmt: Optional[str], out: Optional[Path]) -> str:
    if fmt:
        return fmt
    if out is not None and out.suffix.lower() == ".csv":
        return "csv"
    if out is not None and out.suffix.lower() == ".nt":
        return "ntriples"
    return "json"


@cli.command("verify")
@click.option("--q", "field_text", default=None, help="Comma-separated fields, e.g. 5 or 2,3,3^2/[1,0,1].")
@click.option("--m", "m_text", default=None, help="m value, list (1,2) or range (1..3).")
@click.option("--i", "i", type=click.IntRange(1), default=None, help="Restrict to one jump pair (with --j).")
@click.option("--j", "j", type=click.IntRange(1), default=None, help="Restrict to one jump pair (with --i).")
@click.option("--all-ij", is_flag=True, help="Every pair 1 <= i < j <= m+2 (the default).")
@click.option("--grid", "grid_expr", default=None, help="Grid expression: q=2,3,4;m=1..3;ij=all.")
@click.option(
    "--grid-file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="YAML grid definition.",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Report file (stdout if omitted).")
@click.option("--format", "fmt", type=click.Choice(REPORT_FORMATS), default=None, help="Report format (from --out suffix by default).")
@_limit_options
@_reports_errors
def verify_command(
    field_text: Optional[str],
    m_text: Optional[str],
    i: Optional[int],
    j: Optional[int],
    all_ij: bool,
    grid_expr: Optional[str],
    grid_file: Optional[Path],
    out: Optional[Path],
    fmt: Optional[str],
    threads: Optional[int],
    max_vertices: Optional[int],
    sample_diameter: bool,
    seed: Optional[int],
    path_samples: Optional[int],
) -> None:
    """Run a parameter grid and compare every cell with the theorems."""
    if all_ij and i is not None:
        raise click.UsageError("--all-ij cannot be combined with --i/--j")
    if grid_file is not None:
        grid = load_grid_file(grid_file)
    elif grid_expr is not None:
        grid = parse_grid_expr(grid_expr)
    else:
        grid = _grid_from_flags(field_text, m_text, i, j, load_limits())
    limits = _limits(threads, max_vertices, sample_diameter, seed, path_samples, base=grid.limits)
    grid = GridSpec(fields=grid.fields, m_values=grid.m_values, ij=grid.ij, limits=limits)

    records = run_grid(grid)
    chosen = _report_format(fmt, out)
    if chosen == "ntriples":
        if out is None:
            raise click.UsageError("--format ntriples needs --out")
        export_records(records, out)
    elif out is None:
        text = reports.records_to_json(records) if chosen == "json" else reports.records_to_csv(records)
        click.echo(text, nl=False)
    elif chosen == "json":
        reports.emit_json(records, out)
    else:
        reports.emit_csv(records, out)

    summary = reports.summarize(records)
    click.echo(
        f"{summary['cells']} cells, {summary['hard_failures']} hard failures, "
        f"{summary['with_findings']} with findings, digest {reports.determinism_digest(records)[:16]}",
        err=True,
    )
    for record in records:
        for failure in record.failures:
            click.echo(f"FAILED q={record.params['q']} m={record.params['m']} "
                       f"i={record.params['i']} j={record.params['j']}: {failure}", err=True)
    if summary["hard_failures"]:
        raise click.exceptions.Exit(1)


@cli.group("witness")
def witness_group() -> None:
    """Constructive paths and cycles as JSON."""


@witness_group.command("path")
@_spec_options
@click.option("--source", required=True, help="Start vertex: P<rank>, L<rank>, P(c1,...) or L[c1,...].")
@click.option("--target", required=True, help="End vertex, same syntax as --source.")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file (stdout if omitted).")
@_reports_errors
def witness_path_command(
    field_text: str,
    m: Optional[int],
    i: Optional[int],
    j: Optional[int],
    exponents: Optional[str],
    source: str,
    target: str,
    out: Optional[Path],
) -> None:
    """Constructive path between two vertices, with the BFS distance."""
    spec = _build_spec(field_text, m, i, j, exponents)
    u = _parse_vertex(spec, source, "--source")
    v = _parse_vertex(spec, target, "--target")
    payload = walk_to_json(spec, path_between(spec, u, v))
    distance = distance_between(spec, u, v)
    payload["bfs_distance"] = "infinite" if distance == INFINITE else distance
    _emit_text(_json(payload), out)


def _cycle_command(name: str, builder: Callable[[GraphSpec], Any], help_text: str) -> None:
    @witness_group.command(name, help=help_text)
    @_spec_options
    @click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file (stdout if omitted).")
    @_reports_errors
    def command(
        field_text: str,
        m: Optional[int],
        i: Optional[int],
        j: Optional[int],
        exponents: Optional[str],
        out: Optional[Path],
    ) -> None:
        spec = _build_spec(field_text, m, i, j, exponents)
        walk = builder(spec)
        _emit_text(_json(None if walk is None else walk_to_json(spec, walk)), out)


_cycle_command("cycle4", four_cycle_search, "First 4-cycle from the pair scan, or null.")
_cycle_command("cycle6", six_cycle_search, "First 6-cycle from the triple scan, or null.")
_cycle_command("cycle8", eight_cycle, "The explicit 8-cycle through the zero point and zero line.")


@cli.group("search")
def search_group() -> None:
    """Distinct tuples with a nonvanishing symmetric function."""


@search_group.command("sigma")
@_field_option
@click.option("--n", "n", type=click.IntRange(1), required=True, help="Tuple length.")
@click.option("--k", "k", type=click.IntRange(0), required=True, help="Degree of sigma_k.")
@_reports_errors
def search_sigma_command(field_text: str, n: int, k: int) -> None:
    """Distinct x_1..x_n with sigma_k != 0."""
    field_spec = parse_field(field_text)
    xs = search_sigma_nonzero(field_spec, n, k)
    click.echo(_json({"field": field_spec.describe(), "n": n, "k": k, "xs": xs, "value": sigma(field_spec, k, xs)}), nl=False)


@search_group.command("sigma-pair")
@_field_option
@click.option("--n", "n", type=click.IntRange(1), required=True, help="Tuple length.")
@click.option("--i", "i", type=click.IntRange(0), required=True, help="First index (0 <= i < j <= n+1).")
@click.option("--j", "j", type=click.IntRange(1), required=True, help="Second index.")
@click.option("--fixed-first", type=click.IntRange(0), default=None, help="Pin x_1 to this field rank.")
@_reports_errors
def search_sigma_pair_command(field_text: str, n: int, i: int, j: int, fixed_first: Optional[int]) -> None:
    """Distinct x_1..x_n with sigma_{n-i,n-j} != 0."""
    field_spec = parse_field(field_text)
    xs = search_sigma_pair_nonzero(field_spec, n, i, j, fixed_first)
    payload = {
        "field": field_spec.describe(),
        "n": n,
        "i": i,
        "j": j,
        "fixed_first": fixed_first,
        "xs": xs,
        "value": sigma_pair(field_spec, n - i, n - j, xs),
    }
    click.echo(_json(payload), nl=False)


def main() -> None:  # pragma: no cover
    cli()


if __name__ == "__main__":  # pragma: no cover
    main()
