"""Constructive paths and cycles, the girth classifier and walk validation.

Every walk is a sequence of line steps: from a line L with step (x, t) the
next line is ``L + t * column(x)`` and the point between them is the point of
L whose first coordinate is x.  A closed sequence of s steps is a 2s-cycle
exactly when consecutive x are distinct, every t is nonzero and
``sum_h t_h * column(x_h) = 0``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from jumped_wenger.errors import (
    InternalInconsistencyError,
    NotJumpedOriginError,
    PreconditionViolatedError,
    SearchExhaustedError,
)
from jumped_wenger.gf import FieldSpec
from jumped_wenger.graph import (
    GraphSpec,
    Side,
    VertexId,
    is_edge,
    line_neighbor_with_first,
    point_neighbors,
    point_on_line,
)
from jumped_wenger.linalg import FieldMatrix, determinant, nullspace_basis, rank, solve_unique
from jumped_wenger.metrics import Distance, distance_between
from jumped_wenger.symfun import search_sigma_pair_nonzero

logger = logging.getLogger(__name__)


class WalkKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Walk:
    vertices: Tuple[VertexId, ...]
    kind: WalkKind

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


class GirthStatus(str, Enum):
    ASSERTED = "asserted"
    PAPER_INCONSISTENT = "paper_inconsistent"
    UNCOVERED = "uncovered"


@dataclass(frozen=True)
class GirthPrediction:
    """Girth claimed by the published theorems for one jumped spec."""

    value: int
    source: str
    status: GirthStatus
    note: Optional[str] = None


@dataclass(frozen=True)
class DiameterWitness:
    source: VertexId
    target: VertexId
    distance: Distance
    predicted: int


# -- validation --------------------------------------------------------------


def validate_walk(spec: GraphSpec, walk: Walk) -> Walk:
    """Check adjacency, alternation, distinctness and cycle shape; return the walk."""
    vertices = walk.vertices
    if not vertices:
        raise InternalInconsistencyError("empty walk")
    for u, v in zip(vertices, vertices[1:]):
        if u.side is v.side:
            raise InternalInconsistencyError(f"{u} -> {v} does not alternate sides")
        if not is_edge(spec, u, v):
            raise InternalInconsistencyError(f"{u} -> {v} is not an edge of {spec.label()}")
    if walk.kind is WalkKind.PATH:
        if len(set(vertices)) != len(vertices):
            raise InternalInconsistencyError("path repeats a vertex")
        return walk
    body = vertices[:-1]
    if vertices[0] != vertices[-1]:
        raise InternalInconsistencyError("cycle is not closed")
    if walk.length < 4 or walk.length % 2:
        raise InternalInconsistencyError(f"cycle length {walk.length} is not even and >= 4")
    if len(set(body)) != len(body):
        raise InternalInconsistencyError("cycle repeats a vertex")
    firsts = [spec.coords(v.rank)[0] for v in body if v.side is Side.POINT]
    for a, b in zip(firsts, firsts[1:] + firsts[:1]):
        if a == b:
            raise InternalInconsistencyError("consecutive cycle points share a first coordinate")
    return walk


def walk_to_json(spec: GraphSpec, walk: Walk) -> Dict[str, Any]:
    return {
        "kind": walk.kind.value,
        "length": walk.length,
        "vertices": [
            {"side": v.side.value, "rank": v.rank, "coords": spec.coords(v.rank)}
            for v in walk.vertices
        ],
    }


# -- step construction -------------------------------------------------------


def _line_plus(spec: GraphSpec, line: VertexId, t: int, x: int) -> VertexId:
    f = spec.field
    coords = spec.coords(line.rank)
    step = spec.column(x)
    return spec.line([f.add(c, f.mul(t, s)) for c, s in zip(coords, step)])


def _walk_from_steps(
    spec: GraphSpec, start: VertexId, xs: Sequence[int], ts: Sequence[int]
) -> List[VertexId]:
    """Line-started walk; steps with t = 0 are skipped."""
    vertices = [start]
    line = start
    for x, t in zip(xs, ts):
        if t == 0:
            continue
        vertices.append(point_on_line(spec, line, x))
        line = _line_plus(spec, line, t, x)
        vertices.append(line)
    return vertices


def _step_matrix(spec: GraphSpec, xs: Sequence[int]) -> FieldMatrix:
    """Columns are column(x) for x in xs."""
    f = spec.field
    rows = [[f.pow(x, e) for x in xs] for e in spec.exponents]
    return FieldMatrix(f, len(rows), len(xs), tuple(v for row in rows for v in row))


def _difference(spec: GraphSpec, a: VertexId, b: VertexId) -> List[int]:
    f = spec.field
    return [f.sub(y, x) for x, y in zip(spec.coords(a.rank), spec.coords(b.rank))]


def _nonsingular_steps(spec: GraphSpec, fixed_first: Optional[int]) -> List[int]:
    """Distinct x_1..x_{m+1} whose step matrix is invertible."""
    n = spec.m + 1
    if spec.is_jumped:
        return search_sigma_pair_nonzero(spec.field, n, spec.i, spec.j, fixed_first)
    pool = [x for x in spec.field.elements() if x != fixed_first]
    head = [] if fixed_first is None else [fixed_first]
    for tail in itertools.combinations(pool, n - len(head)):
        xs = head + list(tail)
        if determinant(_step_matrix(spec, xs)) != 0:
            return xs
    raise SearchExhaustedError(f"no invertible step matrix for {spec.label()}")


def _require_range(spec: GraphSpec) -> None:
    if not spec.m < spec.field.q - 2:
        raise PreconditionViolatedError(
            f"path construction needs m < q-2, got m={spec.m}, q={spec.field.q}"
        )


def _line_steps(
    spec: GraphSpec, source: VertexId, target: VertexId, fixed_first: Optional[int]
) -> List[VertexId]:
    xs = _nonsingular_steps(spec, fixed_first)
    ts = solve_unique(_step_matrix(spec, xs), _difference(spec, source, target))
    walk = _walk_from_steps(spec, source, xs, ts)
    if walk[-1] != target:
        raise InternalInconsistencyError("line steps do not reach the target line")
    return walk


def _path(spec: GraphSpec, vertices: Sequence[VertexId]) -> Walk:
    return validate_walk(spec, Walk(tuple(vertices), WalkKind.PATH))


def path_between_lines(spec: GraphSpec, source: VertexId, target: VertexId) -> Walk:
    """Path of length at most 2(m+1) between two lines."""
    if source.side is not Side.LINE or target.side is not Side.LINE:
        raise PreconditionViolatedError("both endpoints must be lines")
    if source == target:
        return _path(spec, [source])
    _require_range(spec)
    for p1 in spec.field.elements():
        middle = point_on_line(spec, source, p1)
        if is_edge(spec, middle, target):
            return _path(spec, [source, middle, target])
    return _path(spec, _line_steps(spec, source, target, None))


def path_point_to_line(spec: GraphSpec, point: VertexId, line: VertexId) -> Walk:
    """Odd path of length at most 2m+1 from a point to a line.

    The line steps start at the neighbour of ``point`` with first coordinate 0
    and use x_1 = p_1, so the first step passes through ``point`` itself.
    """
    if point.side is not Side.POINT or line.side is not Side.LINE:
        raise PreconditionViolatedError("expected a point and a line")
    if is_edge(spec, point, line):
        return _path(spec, [point, line])
    _require_range(spec)
    start = line_neighbor_with_first(spec, point, 0)
    p1 = spec.coords(point.rank)[0]
    steps = _line_steps(spec, start, line, p1)
    if len(steps) > 1 and steps[1] == point:
        vertices = steps[1:]
    else:
        vertices = [point] + steps
    return _path(spec, vertices)


def path_between_points(spec: GraphSpec, source: VertexId, target: VertexId) -> Walk:
    """Path of length at most 2(m+1) between two points.

    Built as a point-to-line path into the neighbour of ``target`` with first
    coordinate 0, followed by the edge into ``target``.
    """
    if source.side is not Side.POINT or target.side is not Side.POINT:
        raise PreconditionViolatedError("both endpoints must be points")
    if source == target:
        return _path(spec, [source])
    for line in point_neighbors(spec, source):
        if is_edge(spec, target, line):
            return _path(spec, [source, line, target])
    _require_range(spec)
    landing = line_neighbor_with_first(spec, target, 0)
    vertices = list(path_point_to_line(spec, source, landing).vertices)
    if target in vertices:
        vertices = vertices[: vertices.index(target) + 1]
    else:
        vertices.append(target)
    return _path(spec, vertices)


def path_between(spec: GraphSpec, u: VertexId, v: VertexId) -> Walk:
    """Dispatch on the sides of u and v; the walk always starts at u."""
    if u.side is Side.LINE and v.side is Side.LINE:
        return path_between_lines(spec, u, v)
    if u.side is Side.POINT and v.side is Side.POINT:
        return path_between_points(spec, u, v)
    if u.side is Side.POINT:
        return path_point_to_line(spec, u, v)
    walk = path_point_to_line(spec, v, u)
    return Walk(tuple(reversed(walk.vertices)), WalkKind.PATH)


def path_bound(spec: GraphSpec, u: VertexId, v: VertexId) -> int:
    return 2 * (spec.m + 1) + (0 if u.side is v.side else 1)


# -- cycles ------------------------------------------------------------------


def _cycle(spec: GraphSpec, xs: Sequence[int], ts: Sequence[int]) -> Walk:
    start = spec.line([0] * (spec.m + 1))
    vertices = _walk_from_steps(spec, start, xs, ts)
    if vertices[-1] != start:
        raise InternalInconsistencyError("cycle steps do not return to the start line")
    return validate_walk(spec, Walk(tuple(vertices), WalkKind.CYCLE))


def eight_cycle(spec: GraphSpec) -> Walk:
    """The 8-cycle with first coordinates 0, 1, 0, 1 and steps 1, 1, -1, -1.

    Its vertices are P=(0,..,0), (1,..,1), (0,-1,..,-1), (1,0,..,0) and
    L=[0,..,0], [1,0,..,0], [2,1,..,1], [1,1,..,1]; in even characteristic
    this is the cycle printed with the girth bound.
    """
    minus_one = spec.field.neg(1)
    return _cycle(spec, [0, 1, 0, 1], [1, 1, minus_one, minus_one])


def four_cycle_search(spec: GraphSpec) -> Optional[Walk]:
    """First pair a < b whose columns coincide (step-matrix rank 1), as a 4-cycle."""
    f = spec.field
    for a, b in itertools.combinations(f.elements(), 2):
        if rank(_step_matrix(spec, [a, b])) <= 1:
            logger.debug("%s: 4-cycle pair (%d, %d)", spec.label(), a, b)
            return _cycle(spec, [a, b], [1, f.neg(1)])
    return None


def _span(field: FieldSpec, basis: List[List[int]]) -> Iterator[List[int]]:
    for coefs in itertools.product(field.elements(), repeat=len(basis)):
        vector = [0] * len(basis[0])
        for c, b in zip(coefs, basis):
            vector = [field.add(v, field.mul(c, w)) for v, w in zip(vector, b)]
        yield vector


def six_cycle_search(spec: GraphSpec) -> Optional[Walk]:
    """First triple a < b < c with step-matrix rank <= 2 and a nowhere-zero null vector."""
    f = spec.field
    for triple in itertools.combinations(f.elements(), 3):
        matrix = _step_matrix(spec, triple)
        if rank(matrix) > 2:
            continue
        basis = nullspace_basis(matrix)
        ts = next((v for v in _span(f, basis) if all(v)), None)
        if ts is None:
            continue
        ts = [f.div(t, ts[0]) for t in ts]
        if any(matrix.apply(ts)):
            raise InternalInconsistencyError("null vector does not annihilate the step matrix")
        logger.debug("%s: 6-cycle triple %s, t=%s", spec.label(), triple, ts)
        return _cycle(spec, triple, ts)
    return None


def algebraic_girth(spec: GraphSpec) -> int:
    if four_cycle_search(spec) is not None:
        return 4
    if six_cycle_search(spec) is not None:
        return 6
    eight_cycle(spec)
    return 8


# -- theorem predictions -----------------------------------------------------


def _is_odd_power_of_two(q: int) -> bool:
    e = 0
    while q % 2 == 0:
        q //= 2
        e += 1
    return q == 1 and e % 2 == 1


def _predict_m1(q: int, p: int, ij: Tuple[int, int]) -> GirthPrediction:
    asserted, flagged = GirthStatus.ASSERTED, GirthStatus.PAPER_INCONSISTENT
    if ij == (1, 3):
        if p != 2:
            return GirthPrediction(4, "m=1 girth theorem, girth 4 (a)", asserted)
        status = flagged if q == 2 else asserted
        note = "GF(2) has no three distinct elements, so no 6-cycle exists" if q == 2 else None
        return GirthPrediction(6, "m=1 girth theorem, girth 6 (a)", status, note)
    if ij == (1, 2):
        if (q - 1) % 3 == 0:
            return GirthPrediction(4, "m=1 girth theorem, girth 4 (b)", asserted)
        status = flagged if q == 2 else asserted
        note = "GF(2) has no three distinct elements, so no 6-cycle exists" if q == 2 else None
        return GirthPrediction(6, "m=1 girth theorem, girth 6 (b)", status, note)
    if q in (2, 3):
        return GirthPrediction(
            8,
            "m=1 girth theorem, closing line",
            flagged,
            "closing line names J_2(q,2,3) inside the m=1 statement; read as J_1(q,2,3)",
        )
    return GirthPrediction(6, "m=1 girth theorem, girth 6 (c)", asserted)


def _predict_m2(q: int, p: int, ij: Tuple[int, int]) -> GirthPrediction:
    asserted = GirthStatus.ASSERTED
    if ij in ((1, 2), (2, 3)):
        case = "a" if ij == (1, 2) else "b"
        if _is_odd_power_of_two(q) or q == 3:
            return GirthPrediction(8, f"m=2 girth theorem, girth 8 ({case})", asserted)
        return GirthPrediction(6, f"m=2 girth theorem, girth 6 ({case})", asserted)
    if ij == (1, 3):
        if p != 2:
            return GirthPrediction(4, "m=2 girth theorem, girth 4", asserted)
        return GirthPrediction(8, "m=2 girth theorem, girth 8 (c)", asserted)
    if ij == (1, 4):
        if q in (2, 3, 5):
            return GirthPrediction(8, "m=2 girth theorem, girth 8 (d)", asserted)
        return GirthPrediction(6, "m=2 girth theorem, girth 6 (c)", asserted)
    if ij == (2, 4):
        if q == 2:
            return GirthPrediction(8, "m=2 girth theorem, girth 8 (e)", asserted)
        return GirthPrediction(6, "m=2 girth theorem, girth 6 (d)", asserted)
    return GirthPrediction(
        8,
        "girth upper bound",
        GirthStatus.UNCOVERED,
        "(3,4) at m=2 is not covered by the m=2 girth theorem",
    )


def _predict_large(q: int, m: int, ij: Tuple[int, int]) -> GirthPrediction:
    asserted, flagged = GirthStatus.ASSERTED, GirthStatus.PAPER_INCONSISTENT
    cube = (q - 1) % 3 == 0
    if cube and m in (3, 4, 5) and ij in ((1, 4), (2, 5)):
        case = "a" if ij == (1, 4) else "b"
        if m == 5 and ij == (1, 4):
            return GirthPrediction(
                6,
                "m>=3 girth theorem (a)",
                flagged,
                "row exponents of M_{6,1,4} cover every residue mod 3, so the cube-root triple has rank 3",
            )
        return GirthPrediction(6, f"m>=3 girth theorem ({case})", asserted)
    if cube and m == 6 and ij == (2, 5):
        return GirthPrediction(
            6,
            "m>=3 girth theorem, second (b)",
            flagged,
            "row exponents of M_{7,2,5} cover every residue mod 3, so the cube-root triple has rank 3",
        )
    if m == 3 and ij == (2, 3) and (q - 1) % 4 == 0:
        return GirthPrediction(
            8,
            "m>=3 girth theorem, default case",
            flagged,
            "three fourth roots of unity give M_{4,2,3} rank 2",
        )
    if m == 3 and ij == (2, 4) and q % 2 == 1:
        return GirthPrediction(
            8,
            "m>=3 girth theorem, default case",
            flagged,
            "the triple (a, -a, 0) gives M_{4,2,4} rank 2 in odd characteristic",
        )
    return GirthPrediction(8, "m>=3 girth theorem, default case", asserted)


def predicted_girth(spec: GraphSpec) -> GirthPrediction:
    if not spec.is_jumped:
        raise NotJumpedOriginError(f"{spec.label()} has a custom exponent list")
    q, p, ij = spec.field.q, spec.field.p, (spec.i, spec.j)
    if spec.m == 1:
        return _predict_m1(q, p, ij)
    if spec.m == 2:
        return _predict_m2(q, p, ij)
    return _predict_large(q, spec.m, ij)


# -- diameter evidence -------------------------------------------------------


def exact_diameter_family(spec: GraphSpec) -> bool:
    """True for (i, j) in {(m, m+2), (m+1, m+2), (m, m+1)}."""
    m = spec.m
    return spec.is_jumped and (spec.i, spec.j) in ((m, m + 2), (m + 1, m + 2), (m, m + 1))


def predicted_diameter(spec: GraphSpec) -> Optional[int]:
    if exact_diameter_family(spec) and spec.m < spec.field.q - 2:
        return 2 * (spec.m + 1)
    return None


def diameter_witness(spec: GraphSpec) -> Optional[DiameterWitness]:
    """Zero line and [0, ..., 0, 1] with their BFS distance, for the exact-diameter families."""
    predicted = predicted_diameter(spec)
    if predicted is None:
        return None
    source = spec.line([0] * (spec.m + 1))
    target = spec.line([0] * spec.m + [1])
    return DiameterWitness(source, target, distance_between(spec, source, target), predicted)


__all__ = [
    "Walk",
    "WalkKind",
    "GirthPrediction",
    "GirthStatus",
    "DiameterWitness",
    "validate_walk",
    "walk_to_json",
    "path_between_lines",
    "path_between_points",
    "path_point_to_line",
    "path_between",
    "path_bound",
    "eight_cycle",
    "four_cycle_search",
    "six_cycle_search",
    "algebraic_girth",
    "predicted_girth",
    "exact_diameter_family",
    "predicted_diameter",
    "diameter_witness",
]
