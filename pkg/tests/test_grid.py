from __future__ import annotations

import pytest

from jumped_wenger import anomalies
from jumped_wenger.errors import InvalidGridError
from jumped_wenger.gf import parse_field
from jumped_wenger.grid import (
    GridCell,
    grid_cells,
    load_grid_file,
    parse_grid_expr,
    run_cell,
    run_grid,
    validate_grid,
)
from jumped_wenger.models import AGREES, NOT_APPLICABLE, VIOLATED, GridSpec, Limits
from jumped_wenger.reports import determinism_digest

FAST = Limits(workers=1, path_samples=10)


def cell(q: int, m: int, i: int, j: int) -> GridCell:
    f = parse_field(str(q))
    return GridCell(f.p, f.e, f.modulus, m, i, j)


def test_parse_grid_expr():
    grid = parse_grid_expr("q=2,3,3^2/[1,0,1];m=1..2;ij=all", base=FAST)
    assert [f.q for f in grid.fields] == [2, 3, 9]
    assert grid.m_values == (1, 2)
    assert grid.ij is None
    assert grid.limits == FAST


def test_parse_grid_expr_with_pairs():
    grid = parse_grid_expr("q=5; m=1; ij=1-2,2-3", base=FAST)
    assert grid.ij == ((1, 2), (2, 3))
    assert [(c.i, c.j) for c in grid_cells(grid)] == [(1, 2), (2, 3)]


@pytest.mark.parametrize(
    "text",
    ["q=5", "m=1..2", "q=5;m=1;x=3", "q=6;m=1", "q=5;m=0", "q=5;m=1;ij=3-2", "q=5;m=1;ij=1-4"],
)
def test_parse_grid_expr_rejects(text):
    with pytest.raises(InvalidGridError):
        parse_grid_expr(text, base=FAST)


def test_grid_cells_order():
    grid = parse_grid_expr("q=3,2;m=2,1", base=FAST)
    keys = [(c.p**c.e, c.m, c.i, c.j) for c in grid_cells(grid)]
    assert len(keys) == 2 * (3 + 6)
    assert keys == sorted(keys)
    assert keys[:3] == [(2, 1, 1, 2), (2, 1, 1, 3), (2, 1, 2, 3)]


def test_validate_grid_rejects_empty():
    with pytest.raises(InvalidGridError):
        validate_grid(GridSpec(fields=(), m_values=(1,), limits=FAST))


def test_load_grid_file(tmp_path):
    path = tmp_path / "grid.yaml"
    path.write_text("q: [5, 7]\nm: 1\nij: ['1-3']\nlimits:\n  path_samples: 3\n", encoding="utf-8")
    grid = load_grid_file(path, base=FAST)
    assert [f.q for f in grid.fields] == [5, 7]
    assert grid.ij == ((1, 3),)
    assert grid.limits.path_samples == 3
    assert grid.limits.workers == 1


def test_load_grid_file_rejects_bad_yaml(tmp_path):
    path = tmp_path / "grid.yaml"
    path.write_text("q: [5]\nm: 1\nbogus: 1\n", encoding="utf-8")
    with pytest.raises(InvalidGridError):
        load_grid_file(path, base=FAST)


def test_run_cell_exact_diameter_family():
    record = run_cell(cell(5, 1, 1, 3), FAST)
    assert record.params == {"q": 5, "p": 5, "e": 1, "poly": [0, 1], "m": 1, "i": 1, "j": 3}
    assert (record.vertices, record.edges) == (50, 125)
    assert record.regular_degree == 5
    assert record.components == 1
    assert record.diameter == 4
    assert record.diameter_mode == "exact"
    assert record.diameter_bound == 4
    assert record.diameter_predicted == 4
    assert record.diameter_agrees == AGREES
    assert record.girth_bfs == 4
    assert record.girth_algebraic == 4
    assert record.girth_predicted == 4
    assert record.girth_status == "asserted"
    assert record.girth_agrees == AGREES
    assert record.det_sign == -1
    assert record.paths_checked == 10
    assert record.path_max_length <= 5
    assert record.failures == []
    assert "diameter_pair" in record.witnesses
    assert "girth_cycle" in record.witnesses
    assert anomalies.EIGHT_CYCLE_NOTE in record.findings
    assert anomalies.PRINTED_RANGE_NOTES[0] in record.findings
    assert anomalies.DETERMINANT_SIGN_NOTE.format(eps=-1) in record.findings


def test_run_cell_flags_inconsistent_girth_claim_without_failing():
    record = run_cell(cell(2, 1, 1, 3), FAST)
    assert record.girth_status == "paper_inconsistent"
    assert record.girth_bfs == 8
    assert record.girth_predicted == 6
    assert record.girth_agrees == VIOLATED
    assert not record.hard_failure
    assert "paths" in record.skipped
    assert record.diameter_agrees == NOT_APPLICABLE


def test_run_cell_uncovered_wenger_member():
    record = run_cell(cell(3, 2, 3, 4), FAST)
    assert record.girth_status == "uncovered"
    assert record.girth_agrees == NOT_APPLICABLE
    assert record.girth_bfs == record.girth_algebraic == 8


def test_run_cell_without_paths():
    record = run_cell(cell(7, 2, 1, 3), Limits(workers=1, path_samples=0))
    assert record.paths_checked == 0
    assert record.components == 1
    assert record.diameter <= 6
    assert anomalies.POINT_PATH_NOTE not in record.findings


def test_run_grid_is_deterministic():
    grid = parse_grid_expr("q=2,3,5;m=1", base=FAST)
    first = run_grid(grid)
    second = run_grid(grid)
    assert [r.key for r in first] == sorted(r.key for r in first)
    assert determinism_digest(first) == determinism_digest(second)


def test_run_grid_worker_count_does_not_change_records():
    serial = run_grid(parse_grid_expr("q=3,4;m=1", base=FAST))
    parallel = run_grid(parse_grid_expr("q=3,4;m=1", base=Limits(workers=2, path_samples=10)))
    assert determinism_digest(serial) == determinism_digest(parallel)


def test_modulus_choice_does_not_change_invariants():
    records = run_grid(parse_grid_expr("q=3^2/[1,0,1],3^2/[2,1,1];m=1", base=FAST))
    by_modulus = {}
    for record in records:
        by_modulus.setdefault(tuple(record.params["poly"]), []).append(
            (record.key, record.components, record.diameter, record.girth_bfs)
        )
    assert len(by_modulus) == 2
    first, second = by_modulus.values()
    assert first == second
