"""JSON/CSV report emission and the determinism digest."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

from jumped_wenger.models import PARAM_FIELDS, RECORD_FIELDS, ReportRecord

logger = logging.getLogger(__name__)

CSV_FIELDS: List[str] = PARAM_FIELDS + [name for name in RECORD_FIELDS if name != "params"]
VOLATILE_FIELDS = ("elapsed_ms",)


def records_to_json(records: Sequence[ReportRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], indent=2, sort_keys=False) + "\n"


def _csv_cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def records_to_csv(records: Sequence[ReportRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CSV_FIELDS)
    for record in records:
        row = record.to_dict()
        params = row.pop("params")
        writer.writerow([_csv_cell(params[k]) for k in PARAM_FIELDS] + [_csv_cell(row[k]) for k in CSV_FIELDS[len(PARAM_FIELDS):]])
    return buffer.getvalue()


def _write(text: str, destination: Union[str, Path], newline: str = "\n") -> Path:
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline=newline) as handle:
        handle.write(text)
    return path


def emit_json(records: Sequence[ReportRecord], destination: Union[str, Path]) -> Path:
    path = _write(records_to_json(records), destination)
    logger.info("Wrote %d records to %s", len(records), path)
    return path


def emit_csv(records: Sequence[ReportRecord], destination: Union[str, Path]) -> Path:
    path = _write(records_to_csv(records), destination, newline="")
    logger.info("Wrote %d records to %s", len(records), path)
    return path


def load_json(source: Union[str, Path]) -> List[ReportRecord]:
    payload = json.loads(Path(source).read_text(encoding="utf-8"))
    if not isinstance(payload, list):
        raise ValueError(f"report at {source} is not a JSON array")
    return [ReportRecord.from_dict(item) for item in payload]


def determinism_digest(records: Iterable[ReportRecord]) -> str:
    """SHA-256 of the canonical JSON with volatile fields removed."""
    canonical = []
    for record in records:
        row = record.to_dict()
        for key in VOLATILE_FIELDS:
            row.pop(key, None)
        canonical.append(row)
    text = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def summarize(records: Sequence[ReportRecord]) -> Dict[str, Any]:
    """Aggregate counts for the CLI run summary."""
    statuses = Counter(r.girth_status or "none" for r in records)
    return {
        "cells": len(records),
        "hard_failures": sum(1 for r in records if r.hard_failure),
        "with_findings": sum(1 for r in records if r.findings),
        "skipped_fields": sum(1 for r in records if r.skipped),
        "diameter_violations": sum(1 for r in records if r.diameter_agrees == "violated"),
        "girth_disagreements": sum(1 for r in records if r.girth_agrees == "violated"),
        "girth_status": dict(sorted(statuses.items())),
        "elapsed_ms": sum(r.elapsed_ms for r in records),
    }


__all__ = [
    "CSV_FIELDS",
    "records_to_json",
    "records_to_csv",
    "emit_json",
    "emit_csv",
    "load_json",
    "determinism_digest",
    "summarize",
]
