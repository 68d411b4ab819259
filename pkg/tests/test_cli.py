from __future__ import annotations

import csv
import json

import pytest
from click.testing import CliRunner

from jumped_wenger.cli import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_gen_matches_golden_file(runner, tmp_path, data_dir):
    out = tmp_path / "j1.edgelist"
    result = runner.invoke(cli, ["gen", "--q", "2", "--m", "1", "--i", "1", "--j", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text(encoding="utf-8") == (data_dir / "j1_2_1_2.edgelist").read_text(encoding="utf-8")


def test_gen_dimacs(runner, tmp_path):
    out = tmp_path / "j1.dimacs"
    result = runner.invoke(
        cli, ["gen", "--q", "3", "--m", "1", "--i", "1", "--j", "3", "--format", "dimacs", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert out.read_text(encoding="utf-8").splitlines()[1] == "p edge 18 27"


@pytest.mark.parametrize(
    "args",
    [
        ["gen", "--q", "6", "--m", "1", "--i", "1", "--j", "2"],
        ["gen", "--q", "5", "--m", "1", "--i", "2", "--j", "2"],
        ["gen", "--q", "5", "--m", "1", "--i", "1"],
        ["gen", "--q", "4", "--exponents", "1,2"],
        ["verify", "--q", "5"],
        ["verify", "--grid", "q=5;m=1;ij=1-9"],
        ["search", "sigma", "--q", "7", "--n", "3", "--k", "5"],
    ],
)
def test_bad_input_exits_with_usage_code(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2


def test_invariants_for_jumped_spec(runner, tmp_path):
    out = tmp_path / "cell.json"
    result = runner.invoke(
        cli,
        ["invariants", "--q", "5", "--m", "1", "--i", "1", "--j", "3", "--threads", "1", "--path-samples", "5", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["diameter"] == 4
    assert record["girth_bfs"] == 4
    assert record["paths_checked"] == 5


def test_invariants_for_custom_exponents(runner, tmp_path):
    out = tmp_path / "custom.json"
    result = runner.invoke(cli, ["invariants", "--q", "5", "--exponents", "0,2,3", "--threads", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["exponents"] == [0, 2, 3]
    assert payload["girth_bfs"] == payload["girth_algebraic"]
    assert payload["regular_degree"] == 5


def test_verify_json_report(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        cli, ["verify", "--q", "2,5", "--m", "1", "--threads", "1", "--path-samples", "5", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    records = json.loads(out.read_text(encoding="utf-8"))
    assert [(r["params"]["q"], r["params"]["i"], r["params"]["j"]) for r in records] == [
        (2, 1, 2),
        (2, 1, 3),
        (2, 2, 3),
        (5, 1, 2),
        (5, 1, 3),
        (5, 2, 3),
    ]
    assert all(not r["failures"] for r in records)


def test_verify_csv_report_from_suffix(runner, tmp_path):
    out = tmp_path / "report.csv"
    result = runner.invoke(
        cli, ["verify", "--q", "3", "--m", "1", "--i", "1", "--j", "2", "--threads", "1", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    with out.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 1
    assert rows[0]["girth_bfs"] == "6"


def test_verify_grid_file(runner, tmp_path):
    grid = tmp_path / "grid.yaml"
    grid.write_text("q: [4]\nm: 1\nij: all\nlimits:\n  path_samples: 2\n", encoding="utf-8")
    out = tmp_path / "report.nt"
    result = runner.invoke(cli, ["verify", "--grid-file", str(grid), "--threads", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "jumped-wenger.example.org/cell/" in out.read_text(encoding="utf-8")


def test_witness_cycle8(runner, tmp_path):
    out = tmp_path / "cycle.json"
    result = runner.invoke(cli, ["witness", "cycle8", "--q", "3", "--m", "1", "--i", "1", "--j", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["length"] == 8


def test_witness_cycle4_absent(runner, tmp_path):
    out = tmp_path / "cycle.json"
    result = runner.invoke(cli, ["witness", "cycle4", "--q", "5", "--m", "1", "--i", "1", "--j", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text(encoding="utf-8")) is None


def test_witness_path(runner, tmp_path):
    out = tmp_path / "path.json"
    result = runner.invoke(
        cli,
        [
            "witness", "path", "--q", "7", "--m", "2", "--i", "2", "--j", "4",
            "--source", "L0", "--target", "L[0,0,1]", "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["kind"] == "path"
    assert payload["bfs_distance"] <= payload["length"] <= 6
    assert payload["vertices"][-1]["coords"] == [0, 0, 1]


def test_witness_path_rejects_bad_vertex(runner):
    result = runner.invoke(
        cli, ["witness", "path", "--q", "7", "--m", "2", "--i", "2", "--j", "4", "--source", "X1", "--target", "L0"]
    )
    assert result.exit_code == 2


def test_search_sigma(runner):
    result = runner.invoke(cli, ["search", "sigma", "--q", "7", "--n", "3", "--k", "2"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert len(set(payload["xs"])) == 3
    assert payload["value"] != 0


def test_search_sigma_pair_fixed_first(runner):
    result = runner.invoke(
        cli, ["search", "sigma-pair", "--q", "7", "--n", "3", "--i", "1", "--j", "3", "--fixed-first", "4"]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["xs"][0] == 4
    assert payload["value"] != 0


def test_log_file(runner, tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    out = tmp_path / "report.json"
    result = runner.invoke(
        cli,
        ["--verbose", "--log-file", str(log_file), "verify", "--q", "3", "--m", "1", "--threads", "1", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    assert "Running 3 grid cells" in log_file.read_text(encoding="utf-8")
