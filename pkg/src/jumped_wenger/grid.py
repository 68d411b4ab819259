"""Parameter-grid runner comparing computed invariants with the theorems."""

from __future__ import annotations

import logging
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from jumped_wenger import anomalies
from jumped_wenger.config import (
    ConfigError,
    coerce_fields,
    coerce_ij,
    coerce_m_values,
    load_grid_yaml,
    load_limits,
)
from jumped_wenger.errors import InvalidGridError
from jumped_wenger.gf import TABLE_LIMIT, make_field
from jumped_wenger.graph import GraphSpec, counts, jump_pairs, jumped_spec
from jumped_wenger.metrics import INFINITE, compute_invariants, distance_between
from jumped_wenger.models import (
    ACYCLIC_LABEL,
    AGREES,
    INFINITE_LABEL,
    VIOLATED,
    GridSpec,
    Limits,
    ReportRecord,
)
from jumped_wenger.symfun import determinant_sign
from jumped_wenger.witness import (
    GirthStatus,
    algebraic_girth,
    diameter_witness,
    four_cycle_search,
    path_between,
    path_bound,
    predicted_diameter,
    predicted_girth,
    six_cycle_search,
)

logger = logging.getLogger(__name__)

_SECTION_RE = re.compile(r"^\s*(q|m|ij)\s*=\s*(.+?)\s*$")


@dataclass(frozen=True)
class GridCell:
    p: int
    e: int
    modulus: Tuple[int, ...]
    m: int
    i: int
    j: int

    def spec(self) -> GraphSpec:
        return jumped_spec(make_field(self.p, self.e, self.modulus), self.m, self.i, self.j)


# -- grid definitions ----------------------------------------------------------


def parse_grid_expr(text: str, base: Optional[Limits] = None) -> GridSpec:
    """Parse ``q=2,3,3^2/[1,0,1];m=1..3;ij=all``."""
    sections: Dict[str, str] = {}
    for chunk in filter(str.strip, text.split(";")):
        match = _SECTION_RE.match(chunk)
        if not match:
            raise InvalidGridError(f"cannot parse grid section {chunk!r}")
        sections[match.group(1)] = match.group(2)
    if "q" not in sections or "m" not in sections:
        raise InvalidGridError("grid expression needs both q= and m= sections")
    try:
        grid = GridSpec(
            fields=coerce_fields(sections["q"]),
            m_values=coerce_m_values(sections["m"]),
            ij=coerce_ij(sections.get("ij", "all")),
            limits=base or load_limits(),
        )
    except ConfigError as exc:
        raise InvalidGridError(str(exc)) from exc
    validate_grid(grid)
    return grid


def load_grid_file(path: Path, base: Optional[Limits] = None) -> GridSpec:
    try:
        grid = load_grid_yaml(path, base)
    except ConfigError as exc:
        raise InvalidGridError(str(exc)) from exc
    validate_grid(grid)
    return grid


def validate_grid(grid: GridSpec) -> None:
    if not grid.fields or not grid.m_values:
        raise InvalidGridError("grid selects no cells")
    if grid.ij is not None:
        top = max(grid.m_values) + 2
        bad = [pair for pair in grid.ij if pair[1] > top]
        if bad:
            raise InvalidGridError(f"pairs {bad} exceed j <= m+2 for every m in the grid")


def grid_cells(grid: GridSpec) -> List[GridCell]:
    """Cells in (q, m, i, j) order; fields with equal q keep their modulus order."""
    cells = []
    for field_spec in grid.fields:
        for m in grid.m_values:
            for i, j in jump_pairs(m):
                if grid.ij is None or (i, j) in grid.ij:
                    cells.append(GridCell(field_spec.p, field_spec.e, field_spec.modulus, m, i, j))
    return cells


# -- one cell ----------------------------------------------------------------


def _distance_label(value: Any) -> Any:
    if value is None:
        return None
    if value == INFINITE:
        return INFINITE_LABEL
    return int(value)


def _check_paths(spec: GraphSpec, record: ReportRecord, limits: Limits, exact_bfs: bool) -> None:
    rng = random.Random(f"{limits.seed}:{spec.label()}")
    longest = 0
    for _ in range(limits.path_samples):
        u = spec.vertex_at(rng.randrange(spec.vertex_count))
        v = spec.vertex_at(rng.randrange(spec.vertex_count))
        walk = path_between(spec, u, v)
        longest = max(longest, walk.length)
        if walk.length > path_bound(spec, u, v):
            record.failures.append(
                f"constructed path {u}->{v} has length {walk.length} > {path_bound(spec, u, v)}"
            )
        if exact_bfs:
            bfs = distance_between(spec, u, v)
            if walk.length < bfs:
                record.failures.append(
                    f"constructed path {u}->{v} is shorter ({walk.length}) than BFS ({bfs})"
                )
    record.paths_checked = limits.path_samples
    record.path_max_length = longest
    record.findings.append(anomalies.POINT_PATH_NOTE)


def _short_cycle(spec: GraphSpec, girth: int) -> Optional[List[str]]:
    walk = four_cycle_search(spec) if girth == 4 else six_cycle_search(spec) if girth == 6 else None
    return [str(v) for v in walk.vertices] if walk else None


def run_cell(cell: GridCell, limits: Limits) -> ReportRecord:
    started = time.perf_counter()
    spec = cell.spec()
    f = spec.field
    vertices, edges = counts(spec)
    record = ReportRecord(
        params={"q": f.q, "p": f.p, "e": f.e, "poly": list(f.modulus), "m": spec.m, "i": spec.i, "j": spec.j},
        vertices=vertices,
        edges=edges,
        diameter_bound=2 * (spec.m + 1),
        diameter_predicted=predicted_diameter(spec),
    )
    record.findings.extend(anomalies.findings_for(spec))
    in_range = spec.m < f.q - 2

    # BFS invariants
    if f.q > TABLE_LIMIT:
        record.skipped.append("bfs")
    else:
        sample = None if vertices <= limits.exhaustive_regularity else limits.regularity_sample
        result = compute_invariants(
            spec,
            max_vertices=limits.max_vertices,
            sample_diameter=limits.sample_diameter,
            roots=limits.max_roots,
            seed=limits.seed,
            workers=1,
            regularity_sample=sample,
        )
        record.regular_degree = result.regular_degree
        record.components = result.components
        record.diameter = _distance_label(result.diameter)
        record.diameter_mode = result.diameter_mode
        record.girth_bfs = ACYCLIC_LABEL if result.girth is None else result.girth
        if result.regular_degree != f.q:
            record.failures.append(f"graph is not {f.q}-regular")
        if spec.m + 2 < f.q and result.components != 1:
            record.findings.append(f"expected a connected graph, found {result.components} components")
        if result.components > 1 and result.component_diameters:
            record.witnesses["component_diameters"] = result.component_diameters
        if in_range and result.components == 1:
            exceeds = result.diameter > record.diameter_bound
            if exceeds:
                message = f"diameter {result.diameter} exceeds 2(m+1)={record.diameter_bound}"
                if spec.j <= spec.m + 1:
                    record.failures.append(message)
                else:
                    record.findings.append(message)
                record.diameter_agrees = VIOLATED
            elif result.diameter_mode == "exact":
                record.diameter_agrees = AGREES
        if record.diameter_predicted is not None and result.diameter_mode == "exact":
            if result.diameter != record.diameter_predicted:
                record.findings.append(
                    f"exact diameter {result.diameter} differs from predicted {record.diameter_predicted}"
                )
            witness = diameter_witness(spec)
            record.witnesses["diameter_pair"] = [str(witness.source), str(witness.target), _distance_label(witness.distance)]

    # algebraic girth and prediction
    if f.q**3 <= limits.max_algebraic_cube:
        record.girth_algebraic = algebraic_girth(spec)
        cycle = _short_cycle(spec, record.girth_algebraic)
        if cycle:
            record.witnesses["girth_cycle"] = cycle
        if isinstance(record.girth_bfs, int) and record.girth_bfs != record.girth_algebraic:
            record.failures.append(
                f"BFS girth {record.girth_bfs} differs from algebraic girth {record.girth_algebraic}"
            )
    else:
        record.skipped.append("girth_algebraic")

    prediction = predicted_girth(spec)
    record.girth_predicted = prediction.value
    record.girth_status = prediction.status.value
    empirical = record.girth_bfs if isinstance(record.girth_bfs, int) else record.girth_algebraic
    if empirical is not None and prediction.status is not GirthStatus.UNCOVERED:
        record.girth_agrees = AGREES if empirical == prediction.value else VIOLATED
    if prediction.note:
        record.findings.append(prediction.note)
    if record.girth_agrees == VIOLATED:
        record.findings.append(
            f"girth {empirical} differs from the published {prediction.value} ({prediction.source})"
        )
        if prediction.status is GirthStatus.ASSERTED:
            logger.warning("%s: girth %s contradicts an asserted prediction", spec.label(), empirical)

    eps = determinant_sign(spec.m + 1, spec.i, spec.j)
    record.det_sign = eps
    record.findings.extend(anomalies.determinant_sign_finding(eps))

    if in_range and limits.path_samples > 0:
        exact_bfs = f.q <= TABLE_LIMIT and vertices <= limits.max_vertices
        _check_paths(spec, record, limits, exact_bfs)
    elif limits.path_samples > 0:
        record.skipped.append("paths")

    record.elapsed_ms = int((time.perf_counter() - started) * 1000)
    for failure in record.failures:
        logger.error("%s: %s", spec.label(), failure)
    logger.debug("%s done in %d ms", spec.label(), record.elapsed_ms)
    return record


def _run_cell_args(args: Tuple[GridCell, Limits]) -> ReportRecord:
    return run_cell(*args)


def run_grid(grid: GridSpec) -> List[ReportRecord]:
    """One record per cell, in (q, m, i, j) order regardless of worker count."""
    validate_grid(grid)
    cells = grid_cells(grid)
    limits = grid.limits
    logger.info("Running %d grid cells with %d worker(s)", len(cells), limits.workers)
    if limits.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=limits.workers) as pool:
            records = list(pool.map(_run_cell_args, [(cell, limits) for cell in cells]))
    else:
        records = [run_cell(cell, limits) for cell in cells]
    return records


__all__ = [
    "GridCell",
    "parse_grid_expr",
    "load_grid_file",
    "validate_grid",
    "grid_cells",
    "run_cell",
    "run_grid",
]
