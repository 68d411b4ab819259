"""Known disagreements between the published statements and the computed graphs."""

from __future__ import annotations

from typing import List

from jumped_wenger.graph import GraphSpec

# Statements whose printed parameter range is narrower than the family.
PRINTED_RANGE_NOTES = (
    "regularity and connectivity statements print 1 <= i < j <= m+1; checked for j = m+2 as well",
    "diameter bound statement prints 1 <= i < j <= m+1; its proof covers j = m+2",
)

EIGHT_CYCLE_NOTE = (
    "printed 8-cycle uses L_3=[0,1,...,1], P_3=(0,1,...,1), which only closes in "
    "characteristic 2; the cycle is built with L_3=[2,1,...,1], P_3=(0,-1,...,-1)"
)

POINT_PATH_NOTE = (
    "point-to-point path system is inconsistent in its first coordinate; "
    "paths are built point-to-line and closed with one extra edge"
)

DETERMINANT_SIGN_NOTE = (
    "closed-form determinant sign (-1)^(i+j-1) is off by the calibrated factor {eps:+d}"
)


def findings_for(spec: GraphSpec) -> List[str]:
    """Static notes that apply to a spec regardless of computed values."""
    notes: List[str] = []
    if spec.is_jumped and spec.j == spec.m + 2:
        notes.extend(PRINTED_RANGE_NOTES)
    if spec.field.p != 2:
        notes.append(EIGHT_CYCLE_NOTE)
    return notes


def determinant_sign_finding(eps: int) -> List[str]:
    return [DETERMINANT_SIGN_NOTE.format(eps=eps)] if eps != 1 else []


__all__ = [
    "PRINTED_RANGE_NOTES",
    "EIGHT_CYCLE_NOTE",
    "POINT_PATH_NOTE",
    "DETERMINANT_SIGN_NOTE",
    "findings_for",
    "determinant_sign_finding",
]
