#!/usr/bin/env python3
"""Summarize a `jumped-wenger verify` JSON report as a Markdown table."""

from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Iterable


DEFAULT_INPUT = Path("reports/verify.json")
DEFAULT_OUTPUT = Path("reports/verify_summary.md")


def parse_args(argv: Iterable[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--input",
        type=Path,
        default=DEFAULT_INPUT,
        help=f"JSON report written by `jumped-wenger verify --out` (default: {DEFAULT_INPUT})",
    )
    parser.add_argument(
        "--output",
        type=Path,
        default=DEFAULT_OUTPUT,
        help=f"Markdown file to write the summary (default: {DEFAULT_OUTPUT})",
    )
    parser.add_argument(
        "--only-findings",
        action="store_true",
        help="Only list cells with findings or failures",
    )
    return parser.parse_args(argv)


def format_cell(value: object) -> str:
    if value is None:
        return "-"
    return str(value)


def poly_label(params: dict[str, object]) -> str:
    if params.get("e", 1) == 1:
        return str(params["q"])
    coeffs = ",".join(str(c) for c in params.get("poly", []))
    return f"{params['q']} [{coeffs}]"


def generate_markdown(records: list[dict[str, object]], only_findings: bool = False) -> str:
    lines = [
        "# Jumped Wenger Verification Summary",
        "",
        "| q | m | i | j | components | diameter | bound | girth (BFS) | girth (algebraic) | girth (published) | status | findings | failures |",
        "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |",
    ]
    failures = 0
    shown = 0
    for record in records:
        params = record["params"]
        findings = record.get("findings") or []
        record_failures = record.get("failures") or []
        failures += len(record_failures)
        if only_findings and not findings and not record_failures:
            continue
        shown += 1
        lines.append(
            "| {q} | {m} | {i} | {j} | {components} | {diameter} | {bound} | {gbfs} | {galg} | {gpred} | {status} | {findings} | {failures} |".format(
                q=poly_label(params),
                m=params["m"],
                i=params["i"],
                j=params["j"],
                components=format_cell(record.get("components")),
                diameter=format_cell(record.get("diameter")),
                bound=format_cell(record.get("diameter_bound")),
                gbfs=format_cell(record.get("girth_bfs")),
                galg=format_cell(record.get("girth_algebraic")),
                gpred=format_cell(record.get("girth_predicted")),
                status=format_cell(record.get("girth_status")),
                findings=len(findings),
                failures=len(record_failures),
            )
        )
    lines.extend(
        [
            "",
            f"Cells: {len(records)} (shown: {shown}); hard failures: {failures}",
            "",
        ]
    )
    return "\n".join(lines)


def main(argv: Iterable[str] | None = None) -> int:
    args = parse_args(argv)
    if not args.input.exists():
        print(f"Report not found: {args.input}")
        return 1

    records = json.loads(args.input.read_text(encoding="utf-8"))
    if not isinstance(records, list):
        print(f"Report at {args.input} is not a JSON array")
        return 1

    markdown = generate_markdown(records, args.only_findings)
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(markdown, encoding="utf-8")
    print(f"Wrote summary to {args.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
