from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from jumped_wenger.gf import FieldSpec

TriState = Literal["agrees", "violated", "not_applicable"]
AGREES: TriState = "agrees"
VIOLATED: TriState = "violated"
NOT_APPLICABLE: TriState = "not_applicable"

INFINITE_LABEL = "infinite"
ACYCLIC_LABEL = "acyclic"


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Limits:
    """Resource limits for one grid run."""

    max_vertices: int = 200_000
    max_roots: int = 1000
    workers: int = field(default_factory=_default_workers)
    path_samples: int = 100
    seed: int = 0
    exhaustive_regularity: int = 10_000
    regularity_sample: int = 1000
    max_algebraic_cube: int = 2000
    sample_diameter: bool = False

    def with_overrides(self, **overrides: Any) -> "Limits":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class GridSpec:
    """Fields, m values and (i, j) filter of one verification run.

    ``ij`` is None for every pair 1 <= i < j <= m+2.
    """

    fields: Tuple[FieldSpec, ...]
    m_values: Tuple[int, ...]
    ij: Optional[Tuple[Tuple[int, int], ...]] = None
    limits: Limits = field(default_factory=Limits)


Distance = Union[int, str, None]


@dataclass
class ReportRecord:
    """Computed versus predicted invariants of one (q, m, i, j) cell.

    - params: q, p, e, poly (modulus, constant term first), m, i, j.
    - diameter: an integer, "infinite" or None when skipped.
    - girth_bfs: an integer, "acyclic" or None when skipped.
    - failures: hard invariant failures; any entry makes the run exit 1.
    - findings: anomalies in the published statements, printed-range footnotes and unexpected
      disagreements with the published values.
    """

    params: Dict[str, Any]
    vertices: int
    edges: int
    regular_degree: Optional[int] = None
    components: Optional[int] = None
    diameter: Distance = None
    diameter_mode: str = "exact"
    diameter_bound: int = 0
    diameter_predicted: Optional[int] = None
    diameter_agrees: TriState = NOT_APPLICABLE
    girth_bfs: Distance = None
    girth_algebraic: Optional[int] = None
    girth_predicted: Optional[int] = None
    girth_status: Optional[str] = None
    girth_agrees: TriState = NOT_APPLICABLE
    det_sign: Optional[int] = None
    paths_checked: int = 0
    path_max_length: Optional[int] = None
    witnesses: Dict[str, Any] = field(default_factory=dict)
    findings: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def key(self) -> Tuple[int, int, int, int]:
        p = self.params
        return p["q"], p["m"], p["i"], p["j"]

    @property
    def hard_failure(self) -> bool:
        return bool(self.failures)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ReportRecord":
        known = {f.name for f in fields(cls)}
        unknown = set(payload) - known
        if unknown:
            raise ValueError(f"unknown report fields: {sorted(unknown)}")
        return cls(**payload)


RECORD_FIELDS: List[str] = [f.name for f in fields(ReportRecord)]
PARAM_FIELDS: List[str] = ["q", "p", "e", "poly", "m", "i", "j"]


__all__ = [
    "Limits",
    "GridSpec",
    "ReportRecord",
    "RECORD_FIELDS",
    "PARAM_FIELDS",
    "AGREES",
    "VIOLATED",
    "NOT_APPLICABLE",
    "INFINITE_LABEL",
    "ACYCLIC_LABEL",
]
